#include "ampfsi/cauchy_cfl.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ampfsi/errors.hpp"
#include "ampfsi/inviscid_modes.hpp"
#include "ampfsi/parallel.hpp"

namespace ampfsi {

std::vector<cplx> viscous_cauchy_roots(double lam_x, double lam_y, double theta) {
    // eta(phi) eta(1/phi) + (A lam_x)^2 = 0 with eta(phi) = u - A.
    const cplx phi = std::polar(1.0, theta);
    const cplx u = 1.0 - lam_y + lam_y * phi;
    const cplx w = 1.0 - lam_y + lam_y / phi;
    const double a = 1.0 + lam_x * lam_x;
    const cplx b = -(u + w), c = u * w;
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    // Avoid cancellation in the smaller root.
    const cplx s = (b.real() * disc.real() + b.imag() * disc.imag() >= 0.0) ? disc : -disc;
    const cplx q = -0.5 * (b + s);
    if (q == cplx{0.0, 0.0}) return {0.0, 0.0};
    return {q / a, c / q};
}

Polynomial inviscid_cauchy_polynomial(double lam_x, double lam_y, double theta) {
    constexpr int kSamples = 8;
    std::vector<cplx> vals(kSamples);
    for (int k = 0; k < kSamples; ++k) {
        const cplx A = std::polar(1.0, 2.0 * kPi * k / kSamples);
        const DifferenceSystem d = difference_system(A, lam_x, lam_y);
        vals[k] = (d.H0 + d.H1 * (2.0 * I * std::sin(theta)) + d.H2 * (2.0 * std::cos(theta) - 2.0)).determinant();
    }
    Polynomial p = interpolate_on_circle(vals, 1.0);
    double scale = 0.0;
    for (const auto& c : p.coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(p.coeffs[7]) > 1e-10 * scale) throw DegenerateQuartic("inviscid determinant exceeds degree 6");
    p.coeffs.pop_back();
    return p;
}

namespace {

template <class Fn>
double max_over_theta(Fn&& amax_at, int n_theta) {
    n_theta = std::max(n_theta, 16);
    const double dth = 2.0 * kPi / n_theta;
    double best = 0.0;
    int arg = 0;
    for (int k = 0; k < n_theta; ++k) {
        const double v = amax_at(k * dth);
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    // One refinement around the maximizing cell.
    for (int k = -16; k <= 16; ++k) best = std::max(best, amax_at((arg + k / 16.0) * dth));
    return best;
}

}  // namespace

double viscous_cauchy_Amax(double lam_x, double lam_y, int n_theta) {
    return max_over_theta(
        [&](double th) {
            double m = 0.0;
            for (cplx A : viscous_cauchy_roots(lam_x, lam_y, th)) m = std::max(m, std::abs(A));
            return m;
        },
        n_theta);
}

std::vector<cplx> inviscid_cauchy_roots(double lam_x, double lam_y, double theta) {
    // H(A) = -A^2 M2 + A N - M0 with the A-coefficients read off the difference system.
    const DifferenceSystem at1 = difference_system(1.0, lam_x, lam_y);
    const DifferenceSystem atm1 = difference_system(-1.0, lam_x, lam_y);
    const DifferenceSystem at0 = difference_system(0.0, lam_x, lam_y);
    auto full = [&](const DifferenceSystem& d) -> Eigen::Matrix3cd {
        return d.H0 + d.H1 * (2.0 * I * std::sin(theta)) + d.H2 * (2.0 * std::cos(theta) - 2.0);
    };
    const Eigen::Matrix3cd h1 = full(at1), hm1 = full(atm1), h0 = full(at0);
    const Eigen::Matrix3cd quad = 0.5 * (h1 + hm1) - h0, lin = 0.5 * (h1 - hm1);
    const Eigen::Matrix3cd quad_inv = quad.inverse();
    Eigen::Matrix<cplx, 6, 6> C = Eigen::Matrix<cplx, 6, 6>::Zero();
    C.block<3, 3>(0, 3) = Eigen::Matrix3cd::Identity();
    C.block<3, 3>(3, 0) = -quad_inv * h0;
    C.block<3, 3>(3, 3) = -quad_inv * lin;
    Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 6, 6>> es(C, false);
    if (es.info() != Eigen::Success) throw NoConvergence("inviscid_cauchy_roots: eigenvalue solver failed");
    const auto& ev = es.eigenvalues();
    return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

double inviscid_cauchy_Amax(double lam_x, double lam_y, int n_theta) {
    return max_over_theta(
        [&](double th) {
            double m = 0.0;
            for (cplx A : inviscid_cauchy_roots(lam_x, lam_y, th)) m = std::max(m, std::abs(A));
            return m;
        },
        n_theta);
}

CflMap region_map(CflKind kind, int resolution, int jobs) {
    if (resolution < 16) throw DegenerateInput("region_map: resolution must be >= 16");
    CflMap map;
    map.kind = kind;
    for (int i = 1; i <= resolution; ++i) {
        map.lam_x_grid.push_back(static_cast<double>(i) / resolution);
        map.lam_y_grid.push_back(static_cast<double>(i) / resolution);
    }
    map.Amax.assign(resolution, std::vector<double>(resolution, 0.0));
    map.stable_mask.assign(resolution, std::vector<bool>(resolution, false));
    std::vector<double> flat(static_cast<size_t>(resolution) * resolution);
    parallel_for(static_cast<int>(flat.size()), jobs, [&](int idx) {
        const double lx = map.lam_x_grid[idx / resolution], ly = map.lam_y_grid[idx % resolution];
        flat[idx] = kind == CflKind::Viscous ? viscous_cauchy_Amax(lx, ly) : inviscid_cauchy_Amax(lx, ly);
    });
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            map.Amax[i][j] = flat[static_cast<size_t>(i) * resolution + j];
            map.stable_mask[i][j] = map.Amax[i][j] <= 1.0 + 1e-9;
        }
    return map;
}

}  // namespace ampfsi
