#include <doctest.h>

#include <cmath>

#include "ampfsi/inviscid_modes.hpp"
#include "ampfsi/sim1d.hpp"

using namespace ampfsi;

namespace {

Sim1DConfig pulse_config(Scheme scheme, double rho_bar) {
    Sim1DConfig cfg;
    cfg.scheme = scheme;
    cfg.rho_bar = rho_bar;
    cfg.dy = 0.05;
    cfg.lam_y = 0.5;
    cfg.n_steps = 160;
    cfg.init = arriving_pulse_initial_data(1.0, 2.0 * cfg.H, 0.25 * cfg.H);
    return cfg;
}

bool analysis_unstable(Scheme s, double lam_y, double Mcal) {
    return !find_unstable_roots_1d(s, lam_y, Mcal / lam_y).roots.empty();
}

}  // namespace

TEST_CASE("zero data stays zero") {
    for (Scheme s : kAllSchemes) {
        Sim1DConfig cfg;
        cfg.scheme = s;
        cfg.n_steps = 50;
        cfg.init.departing = [](double) { return 0.0; };
        for (const SimRecord& r : simulate(cfg)) {
            REQUIRE(r.v_I == 0.0);
            REQUIRE(r.p_I == 0.0);
        }
    }
}

TEST_CASE("Lax-Wendroff advects a linear profile exactly") {
    Sim1DConfig cfg;
    cfg.n_steps = 1;
    cfg.init.departing = [](double y) { return y; };
    cfg.init.arriving = [](double y) { return 2.0 * y + 1.0; };
    SolidState1D s0 = initial_state(cfg);
    // Freeze the interface: ghosts continue the linear profiles.
    s0.b_at(1) = cfg.dy;
    s0.a_at(1) = 2.0 * cfg.dy + 1.0;
    const SolidState1D s1 = step(s0, cfg);
    const double shift = cfg.cbar_p * cfg.dt();
    for (int j = -s0.n_below + 1; j <= 0; ++j) {
        const double y = j * cfg.dy;
        REQUIRE(std::abs(s1.b[j + s1.n_below] - (y + shift)) <= 1e-13 * (1.0 + std::abs(y)));
        REQUIRE(std::abs(s1.a[j + s1.n_below] - (2.0 * (y - shift) + 1.0)) <= 1e-13 * (1.0 + std::abs(y)));
    }
}

TEST_CASE("exact solution examples") {
    Sim1DConfig cfg;
    cfg.init = reference_initial_data(cfg);
    CHECK(exact_solution(cfg, 0.0, 0.0).v_I == doctest::Approx(2.0 * cfg.cbar_p).epsilon(1e-15));
    for (double t : {0.1, 0.5, 1.0, 3.0})
        CHECK(std::abs(exact_solution(cfg, t, 0.0).v_I - 2.0 * std::exp(-t)) < 1e-14);

    // An arriving pulse: the solid characteristic is a shifted copy of its initial profile.
    Sim1DConfig p = pulse_config(Scheme::AMP, 1.0);
    for (double y : {-3.0, -1.0, -0.2})
        for (double t : {0.0, 0.05, 0.15}) {
            REQUIRE(t < -y / p.cbar_p);
            CHECK(exact_solution(p, t, y).a == p.init.arriving(y - p.cbar_p * t));
        }
    CHECK(exact_fluid_pressure(p, 0.5, p.H) == 0.0);
    CHECK_THROWS_AS(exact_fluid_pressure(p, 0.5, 2.0 * p.H), OutOfDomain);
}

TEST_CASE("exact solution satisfies its equations") {
    const Sim1DConfig p = pulse_config(Scheme::AMP, 2.0);
    const double c = p.cbar_p, z = p.zbar(), rhoH = p.rho * p.H;
    double last = INFINITY;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
        double worst = 0.0;
        for (double t : {0.8, 1.7, 2.4, 3.1}) {
            // Interface ODE: rho H dv/dt = -zbar v - a_I.
            const double dv = (exact_solution(p, t + h, 0.0).v_I - exact_solution(p, t - h, 0.0).v_I) / (2.0 * h);
            const ExactFields1D f = exact_solution(p, t, 0.0);
            worst = std::max(worst, std::abs(rhoH * dv + z * f.v_I + f.a));
            // Departing characteristic b is constant along y + c t.
            for (double y : {-0.3, -1.1}) {
                const double bt = (exact_solution(p, t + h, y).b - exact_solution(p, t - h, y).b) / (2.0 * h);
                const double by = (exact_solution(p, t, y + h).b - exact_solution(p, t, y - h).b) / (2.0 * h);
                worst = std::max(worst, std::abs(bt - c * by));
            }
        }
        CHECK(worst < 1e-3);
        CHECK(worst < last);
        last = worst;
    }
}

TEST_CASE("deep domain independence") {
    Sim1DConfig cfg = pulse_config(Scheme::TP, 10.0);
    cfg.n_steps = 300;
    const auto a = simulate(cfg);
    cfg.domain_depth *= 2.0;
    const auto b = simulate(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t n = 0; n < a.size(); ++n) REQUIRE(std::abs(a[n].v_I - b[n].v_I) <= 1e-12 * (1.0 + std::abs(a[n].v_I)));
}

TEST_CASE("second-order convergence to the exact solution") {
    const ConvergenceResult amp = convergence_study(pulse_config(Scheme::AMP, 1.0), 2);
    REQUIRE(amp.errors.size() == 3);
    CHECK(amp.errors[1] < amp.errors[0]);
    CHECK(amp.errors[2] < amp.errors[1]);
    CHECK(amp.observed_order >= 1.7);
    CHECK(amp.observed_order <= 2.3);

    const ConvergenceResult tp = convergence_study(pulse_config(Scheme::TP, 1e3), 2);
    CHECK(tp.errors[2] < tp.errors[1]);
    CHECK(tp.observed_order >= 1.7);
    CHECK(tp.observed_order <= 2.3);
}

TEST_CASE("classify_run examples") {
    CHECK(classify_run(sim_config_for(Scheme::TP, 0.8, 1e3)).verdict == Verdict::Unstable);
    CHECK(classify_run(sim_config_for(Scheme::TP, 0.8, 1e-3)).verdict == Verdict::Stable);
    CHECK(classify_run(sim_config_for(Scheme::AMP, 0.8, 1e3)).verdict == Verdict::Stable);
    CHECK(classify_run(sim_config_for(Scheme::AMP, 0.8, 1e-3)).verdict == Verdict::Stable);
    const Sim1DConfig cfg = sim_config_for(Scheme::AMP, 0.8, 1.0);
    CHECK(classify_steps(cfg) >= 200);
    CHECK(classify_steps(cfg) <= 5000);
}

TEST_CASE("simulator verdicts agree with the 1D analysis") {
    for (Scheme s : kAllSchemes)
        for (double ly : {0.2, 0.4, 0.6, 0.8, 1.0})
            for (double Mcal : {1e-3, 1e-1, 1e1, 1e3}) {
                const bool want = analysis_unstable(s, ly, Mcal);
                // Points within a factor 1.3 of the analytic boundary are excused.
                if (analysis_unstable(s, ly, Mcal / 1.3) != want || analysis_unstable(s, ly, Mcal * 1.3) != want)
                    continue;
                INFO(to_string(s) << " lam_y " << ly << " Mcal " << Mcal);
                const bool got = classify_run(sim_config_for(s, ly, Mcal)).verdict == Verdict::Unstable;
                CHECK(got == want);
            }
}
