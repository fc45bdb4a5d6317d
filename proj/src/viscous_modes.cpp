#include "ampfsi/viscous_modes.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "ampfsi/cauchy_cfl.hpp"
#include "ampfsi/parallel.hpp"

namespace ampfsi {

cplx gamma_of(cplx A, double Lambda) { return branch_sqrt(1.0 + (A - 1.0) / (Lambda * A)); }

cplx eta_of(cplx phi, cplx A, double lam_y) { return 1.0 - A + lam_y * (phi - 1.0); }

cplx solid_det(cplx phi, cplx A, double lam_x, double lam_y) {
    const cplx e = eta_of(phi, A, lam_y) * eta_of(1.0 / phi, A, lam_y) + (A * lam_x) * (A * lam_x);
    return (1.0 - A) * e * e;
}

SolidMode phi_star_of(cplx A, double lam_x, double lam_y) {
    SolidMode m;
    if (lam_x == 0.0) {
        m.phi_star = (A - 1.0 + lam_y) / lam_y;
    } else {
        const cplx xi =
            1.0 - ((A * lam_x) * (A * lam_x) + (1.0 - A) * (1.0 - A)) / (2.0 * lam_y * (1.0 - A - lam_y));
        const cplx s = std::sqrt(xi * xi - 1.0);
        const cplx p1 = xi + s, p2 = xi - s;
        if (std::abs(std::abs(p1) - 1.0) < 1e-12 && std::abs(std::abs(p2) - 1.0) < 1e-12)
            throw AmbiguousRoot("phi_star_of: both spatial roots on the unit circle");
        m.phi_star = std::abs(p1) > std::abs(p2) ? p1 : p2;
    }
    m.eta_phi = eta_of(m.phi_star, A, lam_y);
    m.eta_inv_phi = eta_of(1.0 / m.phi_star, A, lam_y);
    return m;
}

SolidInterface solid_interface(const SolidMode& m, cplx A, double lam_x) {
    // Eigenvectors in (a1, b1, a2, b2, d): k1 drives (a1, b2), k2 drives (a2, b1).
    const cplx c = I * A * lam_x / m.eta_inv_phi;
    const cplx a1 = m.k1, b1 = -c * m.k2;
    const cplx a2 = m.k2, b2 = c * m.k1;
    SolidInterface out;
    out.values = {(a1 - b1) / 2.0, (a2 - b2) / 2.0, (a1 + b1) / 2.0, (a2 + b2) / 2.0};
    out.ghost_a1 = a1 * m.phi_star;
    out.ghost_a2 = a2 * m.phi_star;
    return out;
}

namespace {

using Row = Eigen::RowVector3cd;

struct FluidOperators {
    // Linear functionals of (v1f0, v2f0, P) evaluated at y = 0.
    Row v1, v2, P, v1p, v2p, v2pp, pp;
    cplx gamma;
};

FluidOperators fluid_operators(cplx A, const ViscousPoint& pt) {
    FluidOperators op;
    const cplx g = gamma_of(A, pt.Lambda);
    const cplx Cf = pt.Lambda / (pt.Z * (A - 1.0));
    op.gamma = g;
    op.v1 << 1.0, 0.0, 0.0;
    op.v2 << 0.0, 1.0, 0.0;
    op.P << 0.0, 0.0, 1.0;
    op.v1p << -g, 0.0, -I * Cf * (g - 1.0);
    op.v2p << 0.0, -g, Cf * (g - 1.0);
    op.v2pp << 0.0, g * g, Cf * (1.0 - g * g);
    op.pp = -op.P;
    return op;
}

double fluid_impedance(const ViscousPoint& pt) { return pt.Z * (1.0 / pt.Lambda + 2.0); }

}  // namespace

FluidMode solve_fluid_mode(Scheme scheme, cplx A, const ViscousPoint& pt,
                           const InterfaceValues& solid) {
    const FluidOperators op = fluid_operators(A, pt);
    const double mu = pt.Z;
    const double dt_rho = pt.Lambda / pt.Z;
    const double L = pt.Lambda;

    Eigen::Matrix3cd M;
    Eigen::Vector3cd rhs;
    switch (scheme) {
        case Scheme::AMP: {
            const double zf = fluid_impedance(pt);
            const double th_f = zf / (zf + 1.0), th_s = 1.0 / (zf + 1.0);
            const Row vp = op.v2 / A - dt_rho * op.pp / A - L * (op.v2 + I * op.v1p);
            M.row(0) = mu * (I * op.v2 + op.v1p) - op.v1;
            rhs(0) = solid.s12 - solid.v1;
            M.row(1) = op.v2 - th_f * vp;
            rhs(1) = th_s * solid.v2;
            M.row(2) = -op.P + dt_rho * op.pp - 2.0 * I * mu * op.v1 + L * (op.v2 + I * op.v1p);
            rhs(2) = solid.s22 - solid.v2 * (1.0 - 1.0 / A);
            break;
        }
        case Scheme::TP:
            M.row(0) = op.v1;
            rhs(0) = solid.v1;
            M.row(1) = op.v2;
            rhs(1) = solid.v2;
            M.row(2) = dt_rho * op.pp + L * (op.v2 + I * op.v1p);
            rhs(2) = -solid.v2 * (1.0 - 1.0 / A);
            break;
        case Scheme::ATP:
            M.row(0) = mu * (I * op.v2 + op.v1p);
            rhs(0) = solid.s12;
            M.row(1) = I * op.v1p + op.v2pp;
            rhs(1) = 0.0;
            M.row(2) = -op.P + 2.0 * mu * op.v2p;
            rhs(2) = solid.s22;
            break;
    }

    double scale = 1.0;
    for (int r = 0; r < 3; ++r) scale *= M.row(r).norm();
    const cplx det = M.determinant();
    if (!(std::abs(det) > 1e-13 * scale)) throw SingularFluidBC("solve_fluid_mode: singular boundary system");

    const Eigen::Vector3cd x = M.partialPivLu().solve(rhs);
    FluidMode f;
    f.v1f0 = x(0);
    f.v2f0 = x(1);
    f.pf0 = x(2);
    f.gamma = op.gamma;
    f.s12 = mu * ((op.v1p * x)(0) + I * x(1));
    f.s22 = -x(2) + 2.0 * mu * (op.v2p * x)(0);
    f.bc_det = det;
    return f;
}

namespace {

struct Assembled {
    InterfaceSystem2x2 G;
    cplx bc_det;
};

Assembled assemble(Scheme scheme, cplx A, const ViscousPoint& pt) {
    const SolidMode base = phi_star_of(A, pt.lam_x, pt.lam_y);
    const double zf = fluid_impedance(pt);
    const double th_f = zf / (zf + 1.0), th_s = 1.0 / (zf + 1.0);
    cplx G[2][2];
    cplx bc_det{1.0, 0.0};
    for (int j = 0; j < 2; ++j) {
        SolidMode m = base;
        m.k1 = j == 0 ? 1.0 : 0.0;
        m.k2 = j == 1 ? 1.0 : 0.0;
        const SolidInterface s = solid_interface(m, A, pt.lam_x);
        const InterfaceValues& sv = s.values;
        const FluidMode f = solve_fluid_mode(scheme, A, pt, sv);
        bc_det = f.bc_det;
        const cplx v1f = f.v1f0, v2f = f.v2f0;
        cplx vI[2], sI[2];
        switch (scheme) {
            case Scheme::AMP:
                vI[0] = th_f * v1f + th_s * sv.v1 + (sv.s12 - f.s12) / (zf + 1.0);
                vI[1] = th_f * v2f + th_s * sv.v2 + (sv.s22 - f.s22) / (zf + 1.0);
                sI[0] = th_s * f.s12 + th_f * sv.s12 + zf / (zf + 1.0) * (sv.v1 - v1f);
                sI[1] = th_s * f.s22 + th_f * sv.s22 + zf / (zf + 1.0) * (sv.v2 - v2f);
                break;
            case Scheme::TP:
                vI[0] = sv.v1;
                vI[1] = sv.v2;
                sI[0] = f.s12;
                sI[1] = f.s22;
                break;
            case Scheme::ATP:
                vI[0] = v1f;
                vI[1] = v2f;
                sI[0] = sv.s12;
                sI[1] = sv.s22;
                break;
        }
        // Ghost outgoing values minus the incoming ones implied by the interface state.
        G[0][j] = s.ghost_a1 - (sI[0] + vI[0]);
        G[1][j] = s.ghost_a2 - (sI[1] + vI[1]);
    }
    return {{G[0][0], G[0][1], G[1][0], G[1][1]}, bc_det};
}

}  // namespace

InterfaceSystem2x2 assemble_G(Scheme scheme, cplx A, const ViscousPoint& pt) {
    return assemble(scheme, A, pt).G;
}

cplx viscous_characteristic(Scheme scheme, cplx A, const ViscousPoint& pt) {
    const Assembled a = assemble(scheme, A, pt);
    return a.bc_det * a.G.det();
}

InterfaceSystem2x2 closed_form_G(Scheme scheme, cplx A, const ViscousPoint& pt) {
    const double L = pt.Lambda, Z = pt.Z, lx = pt.lam_x;
    const cplx g = gamma_of(A, L);
    const SolidMode m = phi_star_of(A, pt.lam_x, pt.lam_y);
    const cplx ph = m.phi_star, e = m.eta_phi, ei = m.eta_inv_phi;
    const cplx A2 = A * A;
    switch (scheme) {
        case Scheme::AMP: {
            const cplx b0 = ((g + 1.0) * A2 - A) * L * L;
            const cplx b1 = ((g + 1.0) * (2.0 * L * L + (g + 3.0) * L + 2.0) * A2 -
                             (2.0 * L + 1.0) * (L * (g + 1.0) + g + 2.0) * A + 2.0 * L + 1.0) *
                            L;
            const cplx b2 = (g + 1.0) *
                                (4.0 * g * L * L * L + 2.0 * (2.0 * g + 1.0) * L * L +
                                 (2.0 * g + 3.0) * L + 1.0) *
                                A2 -
                            (4.0 * (g * g + g) * L * L * L + 4.0 * (g * g + g) * L * L +
                             (g * g + 3.0 * g) * L + g + 1.0) *
                                A;
            const cplx b3 = (2.0 * L + 1.0) * ((2.0 * L + 1.0) * (g * g + g) * A2 -
                                               (g - 1.0) * (g + 2.0 * L + 2.0) * A - 2.0);
            const cplx B = b0 + b1 * Z + b2 * Z * Z + b3 * Z * Z * Z;
            return {I * (ph - 1.0) * ei * B, 0.0, 0.0, -lx * (ph - 1.0) * A * B};
        }
        case Scheme::TP: {
            const cplx Q = L * (g + 1.0) * A2 - (2.0 * L + 1.0) * A + 1.0;
            const cplx R = (g + 1.0) * ((2.0 * g + 1.0) * L + 1.0) * A2 -
                           (2.0 * (g + 1.0) * L + g + 3.0) * A + 2.0;
            const cplx gA = g * A * (g + 1.0);
            return {I * ei * L * ((2.0 * ph - 1.0) * ((g + 1.0) * A - 1.0) + gA * Z) - I * lx * Z * Q,
                    -I * e * L * ((g + 1.0) * A - 1.0 - gA * Z) + I * lx * Z * Q,
                    ei * L * Z * (gA - 2.0 * g) - lx * (((g + 1.0) * A2 - A) * L - R * Z),
                    e * L * Z * (gA - 2.0 * g) +
                        lx * ((1.0 - 2.0 * ph) * ((g + 1.0) * A2 - A) * L - R * Z)};
        }
        case Scheme::ATP: {
            const cplx S = (g + 1.0) * (g * g + 1.0) * A + 2.0 * (g - 1.0);
            const cplx T = (g + 1.0) * (g * g + 1.0) * A2 + 2.0 * (g - 1.0) * A;
            return {I * ei * (g * (g + 1.0) * A + (2.0 * ph - 1.0) * S * Z) + I * lx * ((g - 1.0) * A),
                    -I * e * (g * (g + 1.0) * A - S * Z) + I * lx * ((g - 1.0) * A),
                    -ei * ((g + 1.0) * A - 2.0) - lx * ((g + 1.0) * A - T * Z),
                    e * ((g + 1.0) * A - 2.0) - lx * ((g + 1.0) * A + (2.0 * ph - 1.0) * T * Z)};
        }
    }
    return {};
}

StabilityVerdict count_unstable(Scheme scheme, const ViscousPoint& pt, int n_samples) {
    const AnalyticFn g = [scheme, pt](cplx zeta) {
        return viscous_characteristic(scheme, 1.0 / zeta, pt);
    };
    StabilityVerdict v;
    // The unit circle passes through A = 1; fall back to a slightly smaller circle.
    for (double radius : {1.0, 1.0 - 1e-6}) {
        try {
            const WindingResult w = winding_number(g, Contour{0.0, radius, n_samples});
            v.n_unstable = w.winding + 2;
            v.min_abs_on_contour = w.min_abs_on_contour;
            v.refinements = w.refinements;
            v.contour_radius = radius;
            v.verdict = v.n_unstable == 0 ? Verdict::Stable : Verdict::Unstable;
            return v;
        } catch (const ContourTooClose& e) {
            v.min_abs_on_contour = e.min_abs;
            v.contour_radius = radius;
        } catch (const SingularFluidBC&) {
            v.min_abs_on_contour = 0.0;
            v.contour_radius = radius;
        }
    }
    v.verdict = Verdict::Marginal;
    v.n_unstable = 0;
    return v;
}

ViscousGrid make_viscous_grid(int nL, int nZ, int nx, int ny, double lo, double hi, double l0,
                              double l1) {
    auto logspace = [&](int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = n == 1 ? lo : std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1));
        return v;
    };
    auto linspace = [&](int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = n == 1 ? l0 : l0 + (l1 - l0) * i / (n - 1);
        return v;
    };
    return {logspace(nL), logspace(nZ), linspace(nx), linspace(ny)};
}

std::vector<ViscousCell> sweep(Scheme scheme, const ViscousGrid& grid, int jobs) {
    std::vector<std::pair<double, double>> lam;
    for (double lx : grid.lam_x)
        for (double ly : grid.lam_y)
            if (viscous_cauchy_Amax(lx, ly) <= 1.0 + 1e-9) lam.emplace_back(lx, ly);

    const int nZ = static_cast<int>(grid.Z.size());
    const int n_cells = static_cast<int>(grid.Lambda.size()) * nZ;
    std::vector<ViscousCell> cells(n_cells);
    parallel_for(n_cells, jobs, [&](int idx) {
        ViscousCell c;
        c.Lambda = grid.Lambda[idx / nZ];
        c.Z = grid.Z[idx % nZ];
        c.min_abs_on_contour = std::numeric_limits<double>::infinity();
        for (auto [lx, ly] : lam) {
            const StabilityVerdict v = count_unstable(scheme, {c.Lambda, c.Z, lx, ly});
            ++c.n_points;
            c.min_abs_on_contour = std::min(c.min_abs_on_contour, v.min_abs_on_contour);
            if (v.verdict == Verdict::Marginal) ++c.n_marginal;
            c.max_unstable = std::max(c.max_unstable, v.n_unstable);
        }
        if (c.max_unstable > 0) c.verdict = Verdict::Unstable;
        else if (c.n_marginal > 0) c.verdict = Verdict::Marginal;
        cells[idx] = c;
    });
    return cells;
}

}  // namespace ampfsi
