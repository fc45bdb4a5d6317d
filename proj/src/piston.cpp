#include "ampfsi/piston.hpp"

#include <algorithm>
#include <cmath>

namespace ampfsi {

double LongitudinalPiston::cbar_p() const { return std::sqrt((lam_bar + 2.0 * mu_bar) / rho_bar); }

double LongitudinalPiston::interface_amplitude() const {
    return 2.0 * alpha * std::sin(omega * Hbar / cbar_p());
}

LongitudinalPiston longitudinal_from_amplitude(double delta, double amplitude, double omega) {
    LongitudinalPiston p;
    p.lam_bar = p.mu_bar = p.rho_bar = delta;
    p.omega = omega;
    const double s = std::sin(omega * p.Hbar / p.cbar_p());
    if (std::abs(s) < 1e-12) throw DegenerateInput("longitudinal piston: interface is a node");
    p.alpha = amplitude / (2.0 * s);
    return p;
}

LongitudinalFields longitudinal_fields(const LongitudinalPiston& p, double ybar, double t) {
    if (ybar < -p.Hbar - 1e-12 || ybar > 1e-12) throw OutOfDomain("longitudinal_fields: ybar outside [-Hbar, 0]");
    if (std::abs(p.interface_amplitude()) >= p.H) throw DegenerateInput("longitudinal piston: fluid pinches off");
    const double c = p.cbar_p(), w = p.omega, al = p.alpha;
    const double stiff = p.lam_bar + 2.0 * p.mu_bar;
    auto F = [&](double tau) { return al * std::cos(w * tau); };
    auto dF = [&](double tau) { return -al * w * std::sin(w * tau); };
    auto ddF = [&](double tau) { return -al * w * w * std::cos(w * tau); };

    auto u = [&](double y) { return F(t - (y + p.Hbar) / c) - F(t + (y + p.Hbar) / c); };
    auto u_t = [&](double y) { return dF(t - (y + p.Hbar) / c) - dF(t + (y + p.Hbar) / c); };
    auto u_tt = [&](double y) { return ddF(t - (y + p.Hbar) / c) - ddF(t + (y + p.Hbar) / c); };
    auto u_y = [&](double y) { return -(dF(t - (y + p.Hbar) / c) + dF(t + (y + p.Hbar) / c)) / c; };

    LongitudinalFields f;
    f.u2_bar = u(ybar);
    f.v2_bar = u_t(ybar);
    f.sigma22_bar = stiff * u_y(ybar);
    f.y_I = u(0.0);
    f.v2 = u_t(0.0);
    f.p_I = -stiff * u_y(0.0);
    f.p_H = -(p.rho * (p.H - f.y_I) * u_tt(0.0) + stiff * u_y(0.0));
    return f;
}

double longitudinal_fluid_pressure(const LongitudinalPiston& p, double y, double t) {
    const LongitudinalFields f = longitudinal_fields(p, 0.0, t);
    if (y < f.y_I - 1e-12 || y > p.H + 1e-12) throw OutOfDomain("longitudinal_fluid_pressure: y outside fluid");
    return ((p.H - y) * f.p_I + (y - f.y_I) * f.p_H) / (p.H - f.y_I);
}

cplx TransversePiston::lambda_of(cplx w) const { return branch_sqrt(-I * w / nu()); }

TransversePiston transverse_reference(double delta) {
    TransversePiston p;
    p.mu_bar = delta;
    p.cbar_s = 1.0;  // sqrt(mu_bar / rho_bar) with rho_bar = mu_bar
    return p;
}

cplx transverse_dispersion(const TransversePiston& p, cplx w) {
    const cplx lam = p.lambda_of(w), ks = w / p.cbar_s;
    return (p.mu_bar / (p.mu * w)) * std::tan(lam * p.H) + (I * lam / ks) * std::tan(ks * p.Hbar);
}

cplx transverse_dispersion_regular(const TransversePiston& p, cplx w) {
    // D times mu w cos(lam H) cos(ks Hbar) / mu: entire in w apart from the sqrt branch,
    // which enters only through even functions of lam.
    const cplx lam = p.lambda_of(w), ks = w / p.cbar_s;
    return (p.mu_bar / p.mu) * std::sin(lam * p.H) * std::cos(ks * p.Hbar) +
           I * p.cbar_s * lam * std::sin(ks * p.Hbar) * std::cos(lam * p.H);
}

cplx transverse_dispersion_root(const TransversePiston& p, cplx guess) {
    const AnalyticFn f = [&p](cplx w) { return transverse_dispersion_regular(p, w); };
    const auto w = newton_refine(f, guess, {200, 1e-14});
    if (!w || !(std::abs(*w) > 1e-8)) throw NoConvergence("transverse_dispersion_root: Newton failed");
    // The raw form has a pole next to the root when mu_bar / mu is large, so the
    // residual is measured on the regular form relative to the size of its terms.
    // The solid factors are bounded below by one: near a limit root they vanish
    // and only their rounding error is left.
    const cplx lam = p.lambda_of(*w), ks = *w / p.cbar_s;
    const double scale =
        std::abs((p.mu_bar / p.mu) * std::sin(lam * p.H)) * std::max(1.0, std::abs(std::cos(ks * p.Hbar))) +
        std::abs(p.cbar_s * lam * std::cos(lam * p.H)) * std::max(1.0, std::abs(std::sin(ks * p.Hbar)));
    if (!(std::abs(f(*w)) <= 1e-10 * scale)) throw NoConvergence("transverse_dispersion_root: residual above 1e-10");
    return *w;
}

std::vector<cplx> transverse_dispersion_roots(const TransversePiston& p) {
    std::vector<cplx> guesses{kPi * p.cbar_s / (2.0 * p.Hbar), kPi * p.cbar_s / p.Hbar};
    for (int i = 0; i < 40; ++i)
        for (int k = 0; k < 15; ++k) guesses.emplace_back(0.25 + i * 0.3, -0.5 + k * 0.25);
    std::vector<cplx> roots;
    for (cplx g : guesses) {
        cplx w;
        try {
            w = transverse_dispersion_root(p, g);
        } catch (const Error&) {
            continue;
        }
        const bool seen = std::any_of(roots.begin(), roots.end(),
                                      [&](cplx r) { return std::abs(r - w) <= 1e-7 * (1.0 + std::abs(w)); });
        if (!seen) roots.push_back(w);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    return roots;
}

cplx transverse_fundamental_root(const TransversePiston& p) {
    for (cplx w : transverse_dispersion_roots(p))
        if (w.real() > 1e-6 && w.imag() >= -1e-12) return w;
    throw NoConvergence("transverse_fundamental_root: no decaying root found");
}

TransversePiston with_root(TransversePiston p, cplx omega) {
    p.omega = omega;
    const cplx lam = p.lambda_of(omega), ks = omega / p.cbar_s;
    p.b_bar = p.u0_bar / std::sin(ks * p.Hbar);
    p.b = I * omega * p.u0_bar / std::sin(lam * p.H);
    return p;
}

cplx transverse_fluid_mode(const TransversePiston& p, double y) {
    return p.b * std::sin(p.lambda_of(p.omega) * (p.H - y));
}

cplx transverse_solid_mode(const TransversePiston& p, double y) {
    return p.b_bar * std::sin(p.omega / p.cbar_s * (p.Hbar + y));
}

TransverseFields transverse_fields(const TransversePiston& p, double y, double t) {
    const cplx e = std::exp(I * p.omega * t);
    return {(transverse_fluid_mode(p, y) * e).real(), (transverse_solid_mode(p, y) * e).real()};
}

}  // namespace ampfsi
