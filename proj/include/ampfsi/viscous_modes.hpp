#pragma once

#include <vector>

#include "ampfsi/complexcore.hpp"
#include "ampfsi/scheme.hpp"

namespace ampfsi {

// Normalized with kx = 1 and zbar = 1, so mu = Z and dt/rho = Lambda/Z.
struct ViscousPoint {
    double Lambda = 1.0;
    double Z = 1.0;
    double lam_x = 0.5;
    double lam_y = 0.5;
};

struct SolidMode {
    cplx phi_star;
    cplx eta_phi;      // eta(phi*)
    cplx eta_inv_phi;  // eta(1/phi*)
    cplx k1{1.0, 0.0};
    cplx k2{0.0, 0.0};
};

// Interface values on the solid side (or fluid side) of the interface.
struct InterfaceValues {
    cplx v1, v2, s12, s22;
};

struct FluidMode {
    cplx v1f0, v2f0, pf0;
    cplx gamma;
    cplx s12, s22;  // fluid tractions at y = 0
    cplx bc_det;    // determinant of the 3x3 boundary system
};

struct InterfaceSystem2x2 {
    cplx g11, g12, g21, g22;

    cplx det() const { return g11 * g22 - g12 * g21; }
    double scale() const { return std::abs(g11 * g22) + std::abs(g12 * g21); }
};

struct StabilityVerdict {
    int n_unstable = 0;
    Verdict verdict = Verdict::Stable;
    double min_abs_on_contour = 0.0;
    double contour_radius = 1.0;
    int refinements = 0;
};

cplx gamma_of(cplx A, double Lambda);

cplx eta_of(cplx phi, cplx A, double lam_y);

/// Spatial root with |phi| > 1 and the associated eta values.
SolidMode phi_star_of(cplx A, double lam_x, double lam_y);

/// Residual of the solid determinant condition at phi.
cplx solid_det(cplx phi, cplx A, double lam_x, double lam_y);

struct SolidInterface {
    InterfaceValues values;  // at j = 0
    cplx ghost_a1, ghost_a2;  // outgoing characteristics at the ghost point j = 1
};

/// Interface and ghost values of the solid eigen-solution with amplitudes (m.k1, m.k2).
SolidInterface solid_interface(const SolidMode& m, cplx A, double lam_x);

FluidMode solve_fluid_mode(Scheme scheme, cplx A, const ViscousPoint& pt,
                           const InterfaceValues& solid);

InterfaceSystem2x2 assemble_G(Scheme scheme, cplx A, const ViscousPoint& pt);

InterfaceSystem2x2 closed_form_G(Scheme scheme, cplx A, const ViscousPoint& pt);

/// det(G) times the fluid boundary determinant: analytic for |A| > 1.
cplx viscous_characteristic(Scheme scheme, cplx A, const ViscousPoint& pt);

StabilityVerdict count_unstable(Scheme scheme, const ViscousPoint& pt, int n_samples = 256);

struct ViscousGrid {
    std::vector<double> Lambda, Z, lam_x, lam_y;
};

struct ViscousCell {
    double Lambda = 0.0, Z = 0.0;
    int n_points = 0;      // (lam_x, lam_y) samples evaluated
    int max_unstable = 0;  // max N over the samples
    int n_marginal = 0;
    double min_abs_on_contour = 0.0;
    Verdict verdict = Verdict::Stable;
};

/// Sweep grid: Lambda, Z log-spaced on [lo, hi], lam_x, lam_y linear on [l0, l1].
ViscousGrid make_viscous_grid(int nL, int nZ, int nx, int ny, double lo = 1e-3, double hi = 1e3,
                              double l0 = 0.05, double l1 = 0.95);

/// A (Lambda, Z) cell is stable iff every Cauchy-stable (lam_x, lam_y) sample is.
std::vector<ViscousCell> sweep(Scheme scheme, const ViscousGrid& grid, int jobs = 1);

}  // namespace ampfsi
