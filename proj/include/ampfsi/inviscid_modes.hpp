#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "ampfsi/complexcore.hpp"
#include "ampfsi/scheme.hpp"

namespace ampfsi {

// Normalized with zbar_p = 1 and dt = 1, so M = rho * H_eff.
struct InviscidPoint {
    double M = 1.0;
    double lam_x = 0.0;
    double lam_y = 0.5;
};

/// M from the display ratios: rho H_eff / (zbar dt) = Mcal * eta / lam_y.
double mass_ratio(double Mcal, double eta, double lam_y);

struct DifferenceSystem {
    Eigen::Matrix3cd H0, H1, H2;
};

DifferenceSystem difference_system(cplx A, double lam_x, double lam_y);

/// H0 + H1 (phi - 1/phi) + H2 (phi - 2 + 1/phi).
Eigen::Matrix3cd difference_matrix(cplx A, double lam_x, double lam_y, cplx phi);

/// Quartic in phi: phi^2 det of the (q, r) block after eliminating s.
Polynomial quartic_phi(cplx A, double lam_x, double lam_y);

struct SpatialEigen {
    cplx phi;
    cplx q, r, s;
};

/// The two spatial modes with |phi| > 1 (eigenvectors unnormalized).
std::array<SpatialEigen, 2> spatial_eigen(cplx A, double lam_x, double lam_y);

struct LwEigen1D {
    cplx phi_b_plus, phi_b_minus, phi_a_plus, phi_a_minus;
    cplx phi1, phi2;  // selected b and a roots, |phi| > 1
};

LwEigen1D lw_eigenvalues_1d(cplx A, double lam_y);

/// Rows: v_I equation, incoming ghost condition, outgoing extrapolation.
/// Unknowns (k1, k2, v_I); mode columns are scaled by 1/phi.
Eigen::Matrix3cd interface_system(Scheme scheme, cplx A, const InviscidPoint& pt);

/// Interface system together with the spatial modes used to build it.
struct InterfaceAssembly {
    Eigen::Matrix3cd S;
    std::array<SpatialEigen, 2> modes;
};

InterfaceAssembly interface_assembly(Scheme scheme, cplx A, const InviscidPoint& pt);

/// 2x2 closed-form system from the explicit component formulas.
Eigen::Matrix2cd closed_form_H(Scheme scheme, cplx A, const InviscidPoint& pt,
                               const std::array<SpatialEigen, 2>& eigs);

/// Pole-free characteristic function of the assembled system (symmetric in the two modes).
cplx inviscid_characteristic(Scheme scheme, cplx A, const InviscidPoint& pt);

/// Same for the closed-form system, with its denominators cleared.
cplx inviscid_closed_characteristic(Scheme scheme, cplx A, const InviscidPoint& pt);

/// True when a zero of the characteristic function comes from a degenerate
/// (vanishing) eigenvector rather than the interface conditions.
bool is_spurious_root(cplx A, const InviscidPoint& pt);

struct RootSet1D {
    std::vector<cplx> roots;
    Scheme scheme = Scheme::AMP;
    double lam_y = 0.0;
    double M0 = 0.0;
    bool marginal = false;
};

/// Default outer search radius: grows with M since TP roots scale like M.
double default_search_radius(double M);

RootSet1D find_unstable_roots_1d(Scheme scheme, double lam_y, double M0, double outer_radius = 0.0);

struct AmaxResult {
    double amax = 1.0;
    std::vector<cplx> roots;
    bool continuation_lost = false;
    bool marginal = false;
};

AmaxResult amax_continued_detail(Scheme scheme, double lam_x, double lam_y, double M);

double amax_continued(Scheme scheme, double lam_x, double lam_y, double M);

/// Max of A_max over lam_x in [0, sqrt(1 - lam_y^2)] and eta in (0, 1].
double script_Amax(Scheme scheme, double Mcal, double lam_y, int n_lam_x = 20, int n_eta = 20,
                   int jobs = 1);

/// Max of the AMP A_max over M on a log grid in [1e-6, 1e6].
double script_A_CFL(double lam_x, double lam_y, int n_M = 25, int jobs = 1);

}  // namespace ampfsi
