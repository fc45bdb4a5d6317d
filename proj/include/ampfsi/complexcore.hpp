#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "ampfsi/errors.hpp"

namespace ampfsi {

using cplx = std::complex<double>;
using AnalyticFn = std::function<cplx(cplx)>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Square root with Re(w) >= 0, and Im(w) >= 0 on the imaginary axis.
cplx branch_sqrt(cplx z);

/// Dense polynomial, coefficients stored constant-first.
struct Polynomial {
    std::vector<cplx> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    /// Drops leading coefficients below rel_tol * max|coeff|.
    Polynomial trimmed(double rel_tol = 1e-13) const;
};

/// All roots of p (companion matrix eigenvalues, Newton polished).
std::vector<cplx> poly_roots(const Polynomial& p);

/// Interpolating polynomial of degree n-1 through the n-th roots of unity
/// scaled by radius; values[k] = f(radius * exp(2 pi i k / n)).
Polynomial interpolate_on_circle(const std::vector<cplx>& values, double radius = 1.0);

struct Contour {
    cplx center{0.0, 0.0};
    double radius = 1.0;
    int n_samples = 256;
    double max_phase_step = kPi / 2;
};

struct WindingResult {
    int winding = 0;
    double min_abs_on_contour = 0.0;
    int refinements = 0;
};

/// Closed path parametrised on t in [0, 1], path(0) == path(1).
using Path = std::function<cplx(double)>;

/// Winding number of f along a closed path, with adaptive refinement
/// wherever the phase jump between neighbouring samples exceeds
/// max_phase_step. Throws ContourTooClose when f (nearly) vanishes or is
/// not finite on the path.
WindingResult winding_along(const AnalyticFn& f, const Path& path, int n_samples,
                            double max_phase_step = kPi / 2);

WindingResult winding_number(const AnalyticFn& f, const Contour& c);

struct NewtonOptions {
    int max_iter = 100;
    double step_tol = 1e-13;
};

/// Newton iteration with a central-difference derivative.
std::optional<cplx> newton_refine(const AnalyticFn& f, cplx z0, const NewtonOptions& opt = {});

struct RootSearchOptions {
    double outer_radius = 1e3;   // search 1 < |A| <= outer_radius
    double inner_margin = 1e-8;  // roots must satisfy |A| > 1 + inner_margin
    double min_cell = 1e-6;      // smallest cell diameter in the zeta plane
    int n_samples = 64;          // initial samples per cell edge
};

/// All zeros of f in the annulus 1 < |A| <= R, located by recursive
/// subdivision of the zeta = 1/A plane and polished by Newton.
std::vector<cplx> subdivide_roots(const AnalyticFn& f, const RootSearchOptions& opt = {});

}  // namespace ampfsi
