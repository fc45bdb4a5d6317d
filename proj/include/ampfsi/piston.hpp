#pragma once

#include <vector>

#include "ampfsi/complexcore.hpp"

namespace ampfsi {

struct LongitudinalPiston {
    double H = 1.0;
    double Hbar = 0.5;
    double rho = 1.0;
    double lam_bar = 1.0;
    double mu_bar = 1.0;
    double rho_bar = 1.0;
    double alpha = 0.1;
    double omega = 2.0 * kPi;

    double cbar_p() const;
    /// Amplitude of the interface oscillation y_I = a sin(omega t).
    double interface_amplitude() const;
};

/// Reference-parameter piston with interface amplitude a and density ratio delta.
LongitudinalPiston longitudinal_from_amplitude(double delta, double amplitude, double omega);

struct LongitudinalFields {
    double u2_bar, v2_bar, sigma22_bar;  // solid at ybar
    double y_I, v2, p_I, p_H;            // interface and fluid column
};

/// Solid fields at reference coordinate ybar in [-Hbar, 0] plus the interface quantities.
LongitudinalFields longitudinal_fields(const LongitudinalPiston& p, double ybar, double t);

/// Fluid pressure at physical height y in [y_I(t), H].
double longitudinal_fluid_pressure(const LongitudinalPiston& p, double y, double t);

struct TransversePiston {
    double H = 1.0;
    double Hbar = 0.5;
    double rho = 1.0;
    double mu = 0.1;
    double mu_bar = 1.0;
    double cbar_s = 1.0;
    double u0_bar = 0.1;
    cplx omega{0.0, 0.0};
    cplx b{0.0, 0.0}, b_bar{0.0, 0.0};

    double nu() const { return mu / rho; }
    cplx lambda_of(cplx w) const;  // sqrt(-i w / nu)
};

/// Reference-table parameters with delta = rho_bar = mu_bar = lam_bar (so cbar_s = 1).
TransversePiston transverse_reference(double delta);

/// Dispersion function in tangent form (has poles where the tangents do).
cplx transverse_dispersion(const TransversePiston& p, cplx omega);

/// Pole-free multiple of the dispersion function with the same roots away from omega = 0.
cplx transverse_dispersion_regular(const TransversePiston& p, cplx omega);

/// Newton on the regular form; at return its residual is within 1e-10 of the size of its terms.
cplx transverse_dispersion_root(const TransversePiston& p, cplx omega_guess);

/// Candidates from the two analytic limits plus a scan of a rectangle of guesses.
std::vector<cplx> transverse_dispersion_roots(const TransversePiston& p);

/// Lowest-frequency decaying root (smallest Re(omega) > 0 with Im(omega) >= 0).
cplx transverse_fundamental_root(const TransversePiston& p);

/// Installs omega and the mode amplitudes b, b_bar.
TransversePiston with_root(TransversePiston p, cplx omega);

struct TransverseFields {
    double v1;     // fluid velocity (valid for y in [0, H])
    double u1bar;  // solid displacement (valid for y in [-Hbar, 0])
};

TransverseFields transverse_fields(const TransversePiston& p, double y, double t);

/// Complex mode shapes for residual checks.
cplx transverse_fluid_mode(const TransversePiston& p, double y);
cplx transverse_solid_mode(const TransversePiston& p, double y);

}  // namespace ampfsi
