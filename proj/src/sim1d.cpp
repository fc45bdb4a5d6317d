#include "ampfsi/sim1d.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ampfsi/errors.hpp"

namespace ampfsi {

InitialData1D reference_initial_data(const Sim1DConfig& cfg) {
    const double amp = 2.0 * cfg.rho_bar * cfg.cbar_p * cfg.cbar_p, H = cfg.H;
    InitialData1D d;
    d.departing = [amp, H](double y) { return amp * std::exp(-std::pow(y / H, 4)); };
    d.v_I0 = 2.0 * cfg.cbar_p;
    return d;
}

InitialData1D compatible_initial_data(const Sim1DConfig& cfg, double v_I0, double width) {
    // With nothing arriving the interface emits b_I(t) = 2 zbar v_I0 exp(-lambda t);
    // continuing that profile into the solid and tapering it keeps the corner smooth.
    const double amp = 2.0 * cfg.zbar() * v_I0;
    const double k = cfg.decay_rate() / cfg.cbar_p;
    InitialData1D d;
    d.departing = [amp, k, width](double y) { return amp * std::exp(-k * y - std::pow(y / width, 4)); };
    d.v_I0 = v_I0;
    return d;
}

InitialData1D arriving_pulse_initial_data(double amplitude, double center_depth, double width) {
    InitialData1D d;
    d.departing = [](double) { return 0.0; };
    d.arriving = [=](double y) {
        const double x = (y + center_depth) / width;
        return amplitude * std::exp(-x * x);
    };
    d.v_I0 = 0.0;
    return d;
}

Sim1DConfig sim_config_for(Scheme scheme, double lam_y, double Mcal, int cells_per_H) {
    Sim1DConfig cfg;
    cfg.scheme = scheme;
    cfg.lam_y = lam_y;
    cfg.dy = cfg.H / cells_per_H;
    cfg.rho_bar = cfg.rho * cfg.H / (Mcal * cfg.dy);
    cfg.init = reference_initial_data(cfg);
    return cfg;
}

namespace {

double arriving_at(const InitialData1D& d, double y) { return d.arriving ? d.arriving(y) : 0.0; }

double exact_v_I(const Sim1DConfig& cfg, double t) {
    const double lam = cfg.decay_rate();
    double v = cfg.init.v_I0 * std::exp(-lam * t);
    if (cfg.init.arriving && t != 0.0) {
        using boost::math::quadrature::gauss_kronrod;
        const double c = cfg.cbar_p;
        auto integrand = [&](double tau) { return std::exp(lam * (tau - t)) * cfg.init.arriving(-c * tau); };
        double integral;
        if (t > 0.0) {
            // Integrate in the lag s = t - tau; the kernel is negligible past 50 decay times.
            auto lagged = [&](double s) { return std::exp(-lam * s) * cfg.init.arriving(-c * (t - s)); };
            const double upper = lam > 0.0 ? std::min(t, 50.0 / lam) : t;
            integral = gauss_kronrod<double, 31>::integrate(lagged, 0.0, upper, 15, 1e-10);
        } else {
            integral = -gauss_kronrod<double, 31>::integrate(integrand, t, 0.0, 15, 1e-10);
        }
        v -= integral / (cfg.rho * cfg.H);
    }
    return v;
}

void validate(const Sim1DConfig& cfg) {
    if (!(cfg.lam_y > 0.0 && cfg.lam_y <= 1.0)) throw DegenerateInput("sim1d: lam_y must be in (0, 1]");
    if (!(cfg.rho > 0 && cfg.H > 0 && cfg.cbar_p > 0 && cfg.rho_bar > 0 && cfg.dy > 0))
        throw DegenerateInput("sim1d: physical parameters must be positive");
    if (cfg.n_steps < 0) throw DegenerateInput("sim1d: n_steps must be >= 0");
    if (!cfg.init.departing) throw DegenerateInput("sim1d: missing initial data");
}

}  // namespace

ExactFields1D exact_solution(const Sim1DConfig& cfg, double t, double y) {
    const double z = cfg.zbar(), c = cfg.cbar_p, rhoH = cfg.rho * cfg.H;
    ExactFields1D f;
    f.v_I = exact_v_I(cfg, t);
    const double aI = arriving_at(cfg.init, -c * t);
    f.v_I_dot = -cfg.decay_rate() * f.v_I - aI / rhoH;
    f.p_I = rhoH * f.v_I_dot;
    f.a = arriving_at(cfg.init, y - c * t);
    const double s = y + c * t;
    if (s <= 0.0) {
        f.b = cfg.init.departing(s);
    } else {
        const double tau = s / c;
        f.b = 2.0 * z * exact_v_I(cfg, tau) + arriving_at(cfg.init, -c * tau);
    }
    f.v_bar = (f.b - f.a) / (2.0 * z);
    f.sigma_bar = (f.a + f.b) / 2.0;
    return f;
}

double exact_fluid_pressure(const Sim1DConfig& cfg, double t, double y) {
    if (y < 0.0 || y > cfg.H) throw OutOfDomain("exact_fluid_pressure: y outside [0, H]");
    const ExactFields1D f = exact_solution(cfg, t, 0.0);
    return cfg.rho * f.v_I_dot * (cfg.H - y);
}

SolidState1D initial_state(const Sim1DConfig& cfg) {
    validate(cfg);
    SolidState1D s;
    s.n_below = std::max(static_cast<int>(std::ceil(cfg.domain_depth * cfg.H / cfg.dy)), cfg.n_steps + 4);
    const int n = s.n_below + 2;
    s.b.assign(n, 0.0);
    s.a.assign(n, 0.0);
    for (int j = -s.n_below; j <= 0; ++j) {
        s.b_at(j) = cfg.init.departing(j * cfg.dy);
        s.a_at(j) = arriving_at(cfg.init, j * cfg.dy);
    }
    const ExactFields1D ghost = exact_solution(cfg, 0.0, cfg.dy);
    s.b_at(1) = ghost.b;
    s.a_at(1) = ghost.a;
    const ExactFields1D now = exact_solution(cfg, 0.0, 0.0);
    s.v_I = cfg.init.v_I0;
    // Backward extension of the exact solution grows like exp(lambda dt); past one
    // decay time per step it is meaningless, so the history starts cold instead.
    s.v_I_prev = cfg.decay_rate() * cfg.dt() <= 1.0 ? exact_solution(cfg, -cfg.dt(), 0.0).v_I : s.v_I;
    s.p_I = now.p_I;
    s.a_I = -now.p_I + cfg.zbar() * s.v_I;
    return s;
}

SolidState1D step(const SolidState1D& s, const Sim1DConfig& cfg) {
    const double lam = cfg.lam_y, half = lam / 2.0, sq = lam * lam / 2.0;
    const int N = s.n_below;
    SolidState1D out = s;
    auto B = [&](int j) { return s.b[j + N]; };
    auto Aa = [&](int j) { return s.a[j + N]; };

    // Lax-Wendroff: b moves toward -y, a toward +y.
    for (int j = -N + 1; j <= 0; ++j) {
        out.b_at(j) = B(j) + half * (B(j + 1) - B(j - 1)) + sq * (B(j + 1) - 2.0 * B(j) + B(j - 1));
        out.a_at(j) = Aa(j) - half * (Aa(j + 1) - Aa(j - 1)) + sq * (Aa(j + 1) - 2.0 * Aa(j) + Aa(j - 1));
    }
    out.b_at(-N) = B(-N) + lam * (B(-N + 1) - B(-N));
    out.a_at(-N) = 0.0;

    const double z = cfg.zbar(), dt = cfg.dt(), rhoH = cfg.rho * cfg.H;
    const double M = cfg.mass_ratio();
    const double vbar = (out.b_at(0) - out.a_at(0)) / (2.0 * z);
    const double sig = (out.b_at(0) + out.a_at(0)) / 2.0;
    const double vn = s.v_I, vnm1 = s.v_I_prev;
    double vI = 0.0, pI = 0.0;
    switch (cfg.scheme) {
        case Scheme::AMP: {
            const double th_f = M / (1.0 + M), th_s = 1.0 / (1.0 + M);
            pI = -M / (M + th_s) * (sig - z * th_s * (1.5 * vbar - 2.0 * vn + 0.5 * vnm1));
            const double ve = 4.0 / 3.0 * vn - 1.0 / 3.0 * vnm1 + 2.0 * dt / (3.0 * rhoH) * pI;
            vI = th_f * ve + th_s * vbar;
            break;
        }
        case Scheme::TP:
            vI = vbar;
            pI = rhoH * (3.0 * vI - 4.0 * vn + vnm1) / (2.0 * dt);
            break;
        case Scheme::ATP:
            pI = -sig;
            vI = 4.0 / 3.0 * vn - 1.0 / 3.0 * vnm1 + 2.0 * dt / (3.0 * rhoH) * pI;
            break;
    }
    const double aI = -pI + z * vI;
    out.b_at(1) = -out.b_at(-1) + 2.0 * aI;
    out.a_at(1) = 2.0 * out.a_at(0) - out.a_at(-1);

    out.v_I_prev = vn;
    out.v_I = vI;
    out.p_I = pI;
    out.a_I = aI;
    out.t = s.t + dt;
    out.step = s.step + 1;
    return out;
}

std::vector<SimRecord> simulate(const Sim1DConfig& cfg) {
    SolidState1D s = initial_state(cfg);
    std::vector<SimRecord> out;
    out.reserve(cfg.n_steps + 1);
    out.push_back({0, 0.0, s.v_I, s.p_I, s.a_I});
    for (int n = 0; n < cfg.n_steps; ++n) {
        s = step(s, cfg);
        out.push_back({s.step, s.t, s.v_I, s.p_I, s.a_I});
    }
    return out;
}

int classify_steps(const Sim1DConfig& cfg) {
    const double decay_steps = 20.0 / (cfg.decay_rate() * cfg.dt());
    return static_cast<int>(std::clamp(std::ceil(decay_steps), 200.0, 5000.0));
}

Classification classify_run(Sim1DConfig cfg) {
    constexpr int kBurnIn = 10;
    cfg.n_steps = classify_steps(cfg);
    const std::vector<SimRecord> run = simulate(cfg);
    Classification c;
    c.n_steps = cfg.n_steps;
    const double v0 = std::abs(run.front().v_I);
    double vmax = 0.0;
    for (size_t n = kBurnIn + 1; n < run.size(); ++n) {
        const double v = std::abs(run[n].v_I);
        vmax = std::isfinite(v) ? std::max(vmax, v) : std::numeric_limits<double>::infinity();
    }
    c.max_ratio = v0 > 0.0 ? vmax / v0 : vmax;
    c.verdict = vmax > v0 ? Verdict::Unstable : Verdict::Stable;
    // Growth rate from the peak envelope of each half of the second half of the run.
    const size_t n = run.size(), m = n / 2, q = m + (n - m) / 2;
    auto peak = [&](size_t lo, size_t hi) {
        double p = 0.0;
        for (size_t k = lo; k < hi; ++k) p = std::max(p, std::abs(run[k].v_I));
        return p;
    };
    const double p1 = peak(m, q), p2 = peak(q, n);
    const double span = run[(q + n) / 2].t - run[(m + q) / 2].t;
    if (p1 > 0.0 && p2 > 0.0 && std::isfinite(p1) && std::isfinite(p2) && span > 0.0)
        c.growth_rate = std::log(p2 / p1) / span;
    return c;
}

ConvergenceResult convergence_study(const Sim1DConfig& cfg, int refinements) {
    ConvergenceResult r;
    for (int k = 0; k <= refinements; ++k) {
        Sim1DConfig c = cfg;
        c.dy = cfg.dy / std::pow(2.0, k);
        c.n_steps = cfg.n_steps << k;
        const std::vector<SimRecord> run = simulate(c);
        double err = 0.0;
        for (const auto& rec : run) err = std::max(err, std::abs(rec.v_I - exact_v_I(c, rec.t)));
        r.dy.push_back(c.dy);
        r.errors.push_back(err);
    }
    const size_t n = r.errors.size();
    if (n >= 2 && r.errors[n - 1] > 0.0) r.observed_order = std::log2(r.errors[n - 2] / r.errors[n - 1]);
    return r;
}

}  // namespace ampfsi
