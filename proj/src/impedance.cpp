#include "ampfsi/impedance.hpp"

#include <cmath>

namespace ampfsi {

double gamma_impedance(double Lambda) { return std::sqrt(1.0 + 1.0 / Lambda); }

VariationalSystem build_variational_system(const ImpedanceParams& p) {
    if (!(p.Lambda > 0.0) || p.theta_p < 0.0 || p.theta_s < 0.0)
        throw DegenerateInput("impedance: require Lambda > 0 and theta >= 0");
    const double g = gamma_impedance(p.Lambda);
    // Lambda*(gamma - 1) without cancellation.
    const double lg = 1.0 / (g + 1.0);
    VariationalSystem s;
    s.a11 = -(2.0 * g + p.theta_p);
    // -1 + 2/(gamma + 1) = (1 - gamma)/(gamma + 1), and 1 - gamma = -lg/Lambda.
    s.a12 = -lg * lg / p.Lambda;
    s.a21 = I * (g * g + 1.0 + p.theta_s * g);
    s.a22 = -I * lg * (g + 1.0 + p.theta_s);
    if (std::abs(s.det()) == 0.0) throw SingularSystem("impedance: singular variational system");
    return s;
}

double z_f_from_system(const VariationalSystem& sys, double theta_p) {
    if (std::abs(sys.a22) < 1e-14) throw SingularSystem("z_f_from_system: |a22| < 1e-14");
    const cplx zf = -theta_p - sys.det() / sys.a22;
    if (std::abs(zf.imag()) > 1e-10 * std::max(1.0, std::abs(zf.real())))
        throw Error("z_f_from_system: impedance is not real");
    return zf.real() / sys.mu_k;
}

// The direct form divides by Lambda*(gamma - 1), which cancels for large
// Lambda; Lambda*(gamma - 1) = 1/(gamma + 1) reduces it to this.
double compute_R(double Lambda, double theta_s) {
    if (!(Lambda > 0.0) || theta_s < 0.0) throw DegenerateInput("compute_R: Lambda > 0, theta_s >= 0");
    const double g = gamma_impedance(Lambda);
    const double gm1 = 1.0 / (Lambda * (g + 1.0));
    return 2.0 * g + (g * g + g * theta_s + 1.0) * gm1 / (g + theta_s + 1.0);
}

double compute_R_shear_ratio(double Lambda, double Z_s) {
    if (!(Lambda > 0.0) || !(Z_s > 0.0)) throw DegenerateInput("compute_R_shear_ratio: positive args");
    const double g = gamma_impedance(Lambda);
    const double gm1 = 1.0 / (Lambda * (g + 1.0));
    return 2.0 * g + (g * g * Z_s + g + Z_s) * gm1 / (g * Z_s + Z_s + 1.0);
}

double compute_R_tilde(double Lambda) {
    if (!(Lambda > 0.0)) throw DegenerateInput("compute_R_tilde: Lambda > 0");
    return 1.0 / Lambda + 2.0;
}

std::vector<std::pair<double, double>> ratio_curve(double theta_s,
                                                   const std::vector<double>& Lambda_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(Lambda_grid.size());
    for (double L : Lambda_grid) out.emplace_back(L, compute_R(L, theta_s) / compute_R_tilde(L));
    return out;
}

}  // namespace ampfsi
