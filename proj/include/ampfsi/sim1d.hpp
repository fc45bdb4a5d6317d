#pragma once

#include <functional>
#include <vector>

#include "ampfsi/scheme.hpp"

namespace ampfsi {

// Characteristics b = sigma + zbar v (departs from the interface into the
// solid) and a = sigma - zbar v (arrives at the interface).
struct InitialData1D {
    std::function<double(double)> departing;  // b at t = 0, y <= 0
    std::function<double(double)> arriving;   // a at t = 0; empty means zero
    double v_I0 = 0.0;
};

struct Sim1DConfig {
    double rho = 1.0;
    double H = 1.0;
    double cbar_p = 1.0;
    double rho_bar = 1.0;
    double dy = 0.05;
    double lam_y = 0.5;
    int n_steps = 200;
    double domain_depth = 40.0;  // solid depth in multiples of H (extended if the run is longer)
    Scheme scheme = Scheme::AMP;
    InitialData1D init;

    double zbar() const { return rho_bar * cbar_p; }
    double dt() const { return lam_y * dy / cbar_p; }
    /// rho H / (zbar dt), the mass ratio seen by the interface.
    double mass_ratio() const { return rho * H / (zbar() * dt()); }
    /// Decay rate zbar / (rho H) of the interface velocity.
    double decay_rate() const { return zbar() / (rho * H); }
};

/// Data from the reference initial conditions: a pulse 2 rho_bar c^2 exp(-(y/H)^4)
/// leaving the interface, nothing arriving, and v_I(0) = 2 c.
InitialData1D reference_initial_data(const Sim1DConfig& cfg);

/// A departing profile that matches the interface solution at the corner
/// (y, t) = (0, 0), so the exact solution is smooth; nothing arriving.
InitialData1D compatible_initial_data(const Sim1DConfig& cfg, double v_I0, double width);

/// A smooth pulse amplitude exp(-((y + center_depth) / width)^2) travelling toward a
/// quiescent interface; the interface response is smooth for any mass ratio.
InitialData1D arriving_pulse_initial_data(double amplitude, double center_depth, double width);

/// Sets rho = H = cbar_p = 1 and chooses rho_bar so that rho H / (rho_bar dy) = Mcal.
Sim1DConfig sim_config_for(Scheme scheme, double lam_y, double Mcal, int cells_per_H = 20);

struct SolidState1D {
    int n_below = 0;        // index j runs from -n_below to 1 (ghost)
    std::vector<double> b;  // b[j + n_below]
    std::vector<double> a;
    double v_I = 0.0;       // v_I^n
    double v_I_prev = 0.0;  // v_I^{n-1}
    double p_I = 0.0;
    double a_I = 0.0;
    double t = 0.0;
    int step = 0;

    double& b_at(int j) { return b[j + n_below]; }
    double& a_at(int j) { return a[j + n_below]; }
};

SolidState1D initial_state(const Sim1DConfig& cfg);

SolidState1D step(const SolidState1D& state, const Sim1DConfig& cfg);

struct ExactFields1D {
    double v_bar, sigma_bar;  // solid velocity and normal stress at (y, t)
    double a, b;
    double v_I, p_I, v_I_dot;
};

/// Exact solution at solid coordinate y <= 0 (y slightly above 0 extends the characteristics).
ExactFields1D exact_solution(const Sim1DConfig& cfg, double t, double y);

/// Fluid pressure at height y in [0, H].
double exact_fluid_pressure(const Sim1DConfig& cfg, double t, double y);

struct SimRecord {
    int step;
    double t, v_I, p_I, a_I;
};

std::vector<SimRecord> simulate(const Sim1DConfig& cfg);

struct Classification {
    Verdict verdict = Verdict::Stable;
    double growth_rate = 0.0;  // per unit time, from the second half of the run
    double max_ratio = 0.0;    // max_{n > 10} |v_I^n| / |v_I(0)|
    int n_steps = 0;
};

/// Steps used for classification: 20 decay times, at least 200, at most 5000.
int classify_steps(const Sim1DConfig& cfg);

Classification classify_run(Sim1DConfig cfg);

struct ConvergenceResult {
    std::vector<double> dy;
    std::vector<double> errors;  // max-norm error in v_I over [0, T]
    double observed_order = 0.0;
};

/// Runs at dy, dy/2, ... (refinements + 1 levels) to the fixed time n_steps * dt.
ConvergenceResult convergence_study(const Sim1DConfig& cfg, int refinements = 2);

}  // namespace ampfsi
