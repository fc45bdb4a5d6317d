#pragma once

#include <string_view>
#include <vector>

#include "ampfsi/complexcore.hpp"

namespace ampfsi {

enum class CflKind { Viscous, Inviscid };

constexpr std::string_view to_string(CflKind k) { return k == CflKind::Viscous ? "viscous" : "inviscid"; }

/// Max |A| over Fourier angles for the upwind solid scheme.
double viscous_cauchy_Amax(double lam_x, double lam_y, int n_theta = 256);

/// Max |A| over Fourier angles for the Lax-Wendroff/BDF solid scheme.
double inviscid_cauchy_Amax(double lam_x, double lam_y, int n_theta = 256);

/// Both amplification factors of the upwind scheme at angle theta.
std::vector<cplx> viscous_cauchy_roots(double lam_x, double lam_y, double theta);

/// The six inviscid amplification factors at theta, as eigenvalues of the
/// companion form of the 3x3 matrix quadratic (accurate at repeated roots).
std::vector<cplx> inviscid_cauchy_roots(double lam_x, double lam_y, double theta);

/// Degree-6 polynomial in A whose roots are the inviscid amplification factors at theta.
Polynomial inviscid_cauchy_polynomial(double lam_x, double lam_y, double theta);

struct CflMap {
    CflKind kind = CflKind::Viscous;
    std::vector<double> lam_x_grid, lam_y_grid;
    std::vector<std::vector<double>> Amax;  // [i_x][i_y]
    std::vector<std::vector<bool>> stable_mask;
};

/// Grids lam = i / resolution, i = 1..resolution.
CflMap region_map(CflKind kind, int resolution, int jobs = 1);

}  // namespace ampfsi
