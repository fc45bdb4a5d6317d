#pragma once

#include <utility>
#include <vector>

#include "ampfsi/complexcore.hpp"

namespace ampfsi {

// All quantities are scaled by mu*k (mu_k = 1).
struct ImpedanceParams {
    double Lambda = 1.0;   // nu k^2 dt
    double theta_p = 0.0;  // normal solid impedance / (mu k)
    double theta_s = 0.0;  // shear solid impedance / (mu k)
};

// 2x2 map from interface perturbations (dV0, dP0) to solid data (dBp, dBs).
struct VariationalSystem {
    cplx a11, a12, a21, a22;
    double mu_k = 1.0;

    cplx det() const { return a11 * a22 - a12 * a21; }
};

double gamma_impedance(double Lambda);

VariationalSystem build_variational_system(const ImpedanceParams& p);

/// Fluid impedance (units of mu k) implied by the variational system.
double z_f_from_system(const VariationalSystem& sys, double theta_p);

/// Closed form of z_f / (mu k).
double compute_R(double Lambda, double theta_s);

/// Same quantity written with Z_s = 1 / theta_s.
double compute_R_shear_ratio(double Lambda, double Z_s);

double compute_R_tilde(double Lambda);

/// (Lambda, R / R_tilde) for each Lambda in the grid.
std::vector<std::pair<double, double>> ratio_curve(double theta_s,
                                                   const std::vector<double>& Lambda_grid);

}  // namespace ampfsi
