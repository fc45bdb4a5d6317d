#include "ampfsi/inviscid_modes.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ampfsi/parallel.hpp"

namespace ampfsi {

double mass_ratio(double Mcal, double eta, double lam_y) { return Mcal * eta / lam_y; }

DifferenceSystem difference_system(cplx A, double lx, double ly) {
    DifferenceSystem d;
    const double l2 = lx * lx / 4.0;
    Eigen::Matrix3cd m2, m1, m0;
    m2 << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -I * lx / 3.0, I * lx / 3.0, 1.0;
    m1 << 1.0 - l2, l2, I * lx, l2, 1.0 - l2, -I * lx, 0.0, 0.0, 4.0 / 3.0;
    m0 = Eigen::Matrix3cd::Zero();
    m0(2, 2) = 1.0 / 3.0;
    d.H0 = -A * A * m2 + A * m1 - m0;
    d.H1 << ly / 2.0, 0.0, I * lx * ly / 4.0, 0.0, -ly / 2.0, I * lx * ly / 4.0, 0.0, 0.0, 0.0;
    d.H1 *= A;
    d.H2 = Eigen::Matrix3cd::Zero();
    d.H2(0, 0) = d.H2(1, 1) = A * ly * ly / 2.0;
    return d;
}

Eigen::Matrix3cd difference_matrix(cplx A, double lx, double ly, cplx phi) {
    const DifferenceSystem d = difference_system(A, lx, ly);
    return d.H0 + d.H1 * (phi - 1.0 / phi) + d.H2 * (phi - 2.0 + 1.0 / phi);
}

namespace {

cplx bdf_factor(cplx A) { return 3.0 * A * A - 4.0 * A + 1.0; }

// (q, r) block of psi * H(1/psi) after eliminating s, scaled by 3A^2 - 4A + 1.
Eigen::Matrix2cd reduced_psi(const DifferenceSystem& d, cplx A, double lx, cplx psi) {
    const Eigen::Matrix3cd m =
        d.H0 * psi + d.H1 * (1.0 - psi * psi) + d.H2 * ((1.0 - psi) * (1.0 - psi));
    const cplx D = bdf_factor(A), c = I * lx * A * A;
    Eigen::Matrix2cd R;
    R << D * m(0, 0) + c * m(0, 2), D * m(0, 1) - c * m(0, 2), D * m(1, 0) + c * m(1, 2),
        D * m(1, 1) - c * m(1, 2);
    return R;
}

Polynomial psi_quartic(const DifferenceSystem& d, cplx A, double lx) {
    std::vector<cplx> vals(5);
    for (int k = 0; k < 5; ++k) vals[k] = reduced_psi(d, A, lx, std::polar(1.0, 2.0 * kPi * k / 5)).determinant();
    return interpolate_on_circle(vals, 1.0);
}

struct PsiMode {
    cplx psi, q, r;
    double null_scale;  // size of the reduced matrix, for degeneracy checks
};

std::array<PsiMode, 2> outer_modes(cplx A, double lx, double ly) {
    const DifferenceSystem d = difference_system(A, lx, ly);
    const Polynomial p = psi_quartic(d, A, lx).trimmed();
    if (p.degree() < 2) throw DegenerateQuartic("spatial quartic degenerates to degree < 2");
    std::vector<cplx> roots = poly_roots(p);
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    std::array<PsiMode, 2> out;
    for (int j = 0; j < 2; ++j) {
        const Eigen::Matrix2cd R = reduced_psi(d, A, lx, roots[j]);
        // Sum of the two cofactor null vectors: never picks a branch by magnitude.
        out[j] = {roots[j], -R(0, 1) + R(1, 1), R(0, 0) - R(1, 0), R.cwiseAbs().maxCoeff()};
    }
    return out;
}

std::array<PsiMode, 2> modes_1d(cplx A, double ly) {
    const LwEigen1D e = lw_eigenvalues_1d(A, ly);
    return {PsiMode{1.0 / e.phi1, 1.0, 0.0, 1.0}, PsiMode{1.0 / e.phi2, 0.0, 1.0, 1.0}};
}

std::array<PsiMode, 2> modes_for(cplx A, double lx, double ly) {
    return lx == 0.0 ? modes_1d(A, ly) : outer_modes(A, lx, ly);
}

Eigen::Vector3cd mode_column(Scheme scheme, double M, const PsiMode& m) {
    const cplx ps = m.psi;
    const cplx P = ps * ps + 1.0;                 // psi (phi + 1/phi)
    const cplx Q = (1.0 - ps) * (1.0 - ps);       // psi (phi - 2 + 1/phi)
    const cplx vbar = ps * (m.q - m.r) / 2.0;
    const cplx sig = ps * (m.q + m.r) / 2.0;
    Eigen::Vector3cd col;
    switch (scheme) {
        case Scheme::TP: col << -vbar, m.q * P, m.r * Q; break;
        case Scheme::ATP: col << (2.0 / (3.0 * M)) * sig, m.q * P - 2.0 * sig, m.r * Q; break;
        case Scheme::AMP: {
            const double th_f = M / (1.0 + M), th_s = 1.0 / (1.0 + M);
            const double k = M / (M + th_s);
            const cplx mp = k * sig - k * th_s * 1.5 * vbar;  // -p_I, solid part
            col << th_f * 2.0 / (3.0 * M) * mp - th_s * vbar, m.q * P - 2.0 * mp, m.r * Q;
            break;
        }
    }
    return col;
}

Eigen::Vector3cd vI_column(Scheme scheme, cplx A, double M) {
    const cplx ext = 4.0 / (3.0 * A) - 1.0 / (3.0 * A * A);
    Eigen::Vector3cd col;
    switch (scheme) {
        case Scheme::TP: {
            const cplx bdf = bdf_factor(A) / (2.0 * A * A);
            col << 1.0, -2.0 * (1.0 - M * bdf), 0.0;
            break;
        }
        case Scheme::ATP: col << 1.0 - ext, -2.0, 0.0; break;
        case Scheme::AMP: {
            const double th_f = M / (1.0 + M), th_s = 1.0 / (1.0 + M);
            const double k = M / (M + th_s);
            const cplx mp_v = k * th_s * (2.0 / A - 0.5 / (A * A));  // -p_I, v_I part
            col << 1.0 - th_f * ext + th_f * 2.0 / (3.0 * M) * mp_v, -2.0 * (mp_v + 1.0), 0.0;
            break;
        }
    }
    return col;
}

SpatialEigen to_eigen(const PsiMode& m, cplx A, double lx) {
    const cplx s = lx == 0.0 ? cplx{0.0, 0.0} : I * lx * A * A / bdf_factor(A) * (m.q - m.r);
    return {1.0 / m.psi, m.q, m.r, s};
}

}  // namespace

Polynomial quartic_phi(cplx A, double lam_x, double lam_y) {
    const DifferenceSystem d = difference_system(A, lam_x, lam_y);
    const Polynomial p = psi_quartic(d, A, lam_x);
    const cplx D = bdf_factor(A);
    Polynomial out;
    out.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
    out.coeffs.resize(5, 0.0);
    for (auto& c : out.coeffs) c /= D * D;
    double scale = 0.0;
    for (const auto& c : out.coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(out.coeffs[4]) < 1e-13 * scale) throw DegenerateQuartic("quartic_phi: vanishing leading coefficient");
    return out;
}

std::array<SpatialEigen, 2> spatial_eigen(cplx A, double lam_x, double lam_y) {
    const auto m = modes_for(A, lam_x, lam_y);
    return {to_eigen(m[0], A, lam_x), to_eigen(m[1], A, lam_x)};
}

LwEigen1D lw_eigenvalues_1d(cplx A, double ly) {
    const double c = 1.0 - ly * ly;
    const cplx sq = std::sqrt(A * A - (2.0 * A - 1.0) * c);
    LwEigen1D e;
    e.phi_b_plus = (A - c + sq) / (ly * (ly + 1.0));
    e.phi_b_minus = (A - c - sq) / (ly * (ly + 1.0));
    e.phi_a_plus = 1.0 / e.phi_b_minus;
    e.phi_a_minus = 1.0 / e.phi_b_plus;
    if (A.real() >= c) {
        e.phi1 = e.phi_b_plus;
        e.phi2 = e.phi_a_plus;
    } else {
        e.phi1 = e.phi_b_minus;
        e.phi2 = e.phi_a_minus;
    }
    return e;
}

InterfaceAssembly interface_assembly(Scheme scheme, cplx A, const InviscidPoint& pt) {
    const auto m = modes_for(A, pt.lam_x, pt.lam_y);
    InterfaceAssembly out;
    out.S.col(0) = mode_column(scheme, pt.M, m[0]);
    out.S.col(1) = mode_column(scheme, pt.M, m[1]);
    out.S.col(2) = vI_column(scheme, A, pt.M);
    out.modes = {to_eigen(m[0], A, pt.lam_x), to_eigen(m[1], A, pt.lam_x)};
    return out;
}

Eigen::Matrix3cd interface_system(Scheme scheme, cplx A, const InviscidPoint& pt) {
    return interface_assembly(scheme, A, pt).S;
}

Eigen::Matrix2cd closed_form_H(Scheme scheme, cplx A, const InviscidPoint& pt,
                               const std::array<SpatialEigen, 2>& eigs) {
    const double M = pt.M;
    const cplx A2 = A * A;
    const cplx cubic = A2 - 4.0 * A / 3.0 + 1.0 / 3.0;
    Eigen::Matrix2cd H;
    for (int a = 0; a < 2; ++a) {
        const auto& e = eigs[a];
        const cplx P = e.phi + 1.0 / e.phi;
        const cplx q = e.q, r = e.r;
        switch (scheme) {
            case Scheme::AMP: {
                const cplx d0 = A2 * (q - r - q * P);
                const cplx d1 = -A2 * (q / 6.0 - 5.0 * r / 6.0 + q * P) + 2.0 * A * (q - r) + 0.5 * (r - q);
                const cplx d2 = cubic * (q + r - q * P);
                H(0, a) = (d2 * M * M + d1 * M + d0) / (cubic * M * M + A2 * M + A2);
                break;
            }
            case Scheme::TP:
                H(0, a) = (r + q) * P - M * bdf_factor(A) / A2 * (r - q);
                break;
            case Scheme::ATP:
                H(0, a) = (r - q) * P - 1.0 / (4.0 * M) * A2 / bdf_factor(A) * (r + q);
                break;
        }
        H(1, a) = r * (e.phi - 2.0 + 1.0 / e.phi);
    }
    return H;
}

cplx inviscid_characteristic(Scheme scheme, cplx A, const InviscidPoint& pt) {
    const auto m = modes_for(A, pt.lam_x, pt.lam_y);
    Eigen::Matrix3cd S;
    S.col(0) = mode_column(scheme, pt.M, m[0]);
    S.col(1) = mode_column(scheme, pt.M, m[1]);
    S.col(2) = vI_column(scheme, A, pt.M);
    const cplx det = S.determinant();
    return pt.lam_x == 0.0 ? det : det / (m[0].psi - m[1].psi);
}

cplx inviscid_closed_characteristic(Scheme scheme, cplx A, const InviscidPoint& pt) {
    const auto m = modes_for(A, pt.lam_x, pt.lam_y);
    std::array<SpatialEigen, 2> e;
    for (int j = 0; j < 2; ++j) e[j] = {1.0 / m[j].psi, m[j].q * m[j].psi, m[j].r * m[j].psi, 0.0};
    cplx det = closed_form_H(scheme, A, pt, e).determinant();
    const cplx A2 = A * A;
    if (scheme == Scheme::AMP) {
        const cplx den = (A2 - 4.0 * A / 3.0 + 1.0 / 3.0) * pt.M * pt.M + A2 * pt.M + A2;
        det *= den * den;
    } else if (scheme == Scheme::ATP) {
        det *= bdf_factor(A) * bdf_factor(A);
    }
    return pt.lam_x == 0.0 ? det : det / (m[0].psi - m[1].psi);
}

bool is_spurious_root(cplx A, const InviscidPoint& pt) {
    if (pt.lam_x == 0.0) return false;
    const auto m = outer_modes(A, pt.lam_x, pt.lam_y);
    for (const auto& mode : m)
        if (std::abs(mode.q) + std::abs(mode.r) <= 1e-6 * mode.null_scale) return true;
    return false;
}

double default_search_radius(double M) { return 1e3 * std::max(1.0, M); }

namespace {

struct RootSearch {
    std::vector<cplx> roots;
    bool marginal = false;
};

RootSearch search_roots(Scheme scheme, const InviscidPoint& pt, double outer_radius) {
    const AnalyticFn f = [scheme, pt](cplx A) { return inviscid_characteristic(scheme, A, pt); };
    RootSearch out;
    for (double margin : {1e-8, 1e-6}) {
        RootSearchOptions opt;
        opt.outer_radius = outer_radius;
        opt.inner_margin = margin;
        try {
            for (cplx A : subdivide_roots(f, opt))
                if (!is_spurious_root(A, pt)) out.roots.push_back(A);
            out.marginal = margin != 1e-8;
            return out;
        } catch (const ContourTooClose&) {
        }
    }
    out.marginal = true;
    return out;
}

}  // namespace

RootSet1D find_unstable_roots_1d(Scheme scheme, double lam_y, double M0, double outer_radius) {
    if (!(lam_y > 0.0 && lam_y <= 1.0) || !(M0 > 0.0))
        throw DegenerateInput("find_unstable_roots_1d: need lam_y in (0,1], M0 > 0");
    if (outer_radius <= 0.0) outer_radius = default_search_radius(M0);
    const RootSearch r = search_roots(scheme, {M0, 0.0, lam_y}, outer_radius);
    RootSet1D out;
    out.roots = r.roots;
    out.scheme = scheme;
    out.lam_y = lam_y;
    out.M0 = M0;
    out.marginal = r.marginal;
    return out;
}

namespace {

// Tracks one root from lam_x = 0 to the target; nullopt if it leaves |A| > 1 or is lost.
std::optional<cplx> continue_root(Scheme scheme, cplx A0, double lam_x, double lam_y, double M,
                                  bool& lost) {
    constexpr double kMaxStep = 0.02, kMinStep = 1e-6;
    double lx = 0.0, h = std::min(kMaxStep, lam_x);
    cplx A = A0;
    while (lx < lam_x) {
        const double next = std::min(lam_x, lx + h);
        const InviscidPoint pt{M, next, lam_y};
        const AnalyticFn f = [scheme, pt](cplx z) { return inviscid_characteristic(scheme, z, pt); };
        std::optional<cplx> An;
        try {
            An = newton_refine(f, A, {50, 1e-12});
        } catch (const Error&) {
            An.reset();
        }
        if (An && std::abs(*An - A) <= 0.1 * (1.0 + std::abs(A)) && std::isfinite(std::abs(*An))) {
            A = *An;
            lx = next;
            h = std::min(kMaxStep, 2.0 * h);
            if (std::abs(A) <= 1.0 + 1e-8) return std::nullopt;
        } else {
            h *= 0.5;
            if (h < kMinStep) {
                lost = true;
                return std::nullopt;
            }
        }
    }
    return A;
}

}  // namespace

AmaxResult amax_continued_detail(Scheme scheme, double lam_x, double lam_y, double M) {
    if (lam_x < 0.0 || !(lam_y > 0.0) || !(M > 0.0)) throw DegenerateInput("amax_continued: bad parameters");
    AmaxResult out;
    const RootSet1D base = find_unstable_roots_1d(scheme, lam_y, M);
    out.marginal = base.marginal;
    if (lam_x == 0.0) {
        out.roots = base.roots;
    } else {
        std::vector<cplx> tracked;
        for (cplx A : base.roots)
            if (auto At = continue_root(scheme, A, lam_x, lam_y, M, out.continuation_lost)) tracked.push_back(*At);
        // Roots born away from lam_x = 0 are caught by a direct search at the target.
        const RootSearch direct = search_roots(scheme, {M, lam_x, lam_y}, default_search_radius(M));
        out.marginal = out.marginal || direct.marginal;
        out.roots = direct.roots;
        for (cplx A : tracked) {
            const bool seen = std::any_of(out.roots.begin(), out.roots.end(), [&](cplx B) {
                return std::abs(A - B) <= 1e-6 * (1.0 + std::abs(A));
            });
            if (!seen) out.roots.push_back(A);
        }
    }
    for (cplx A : out.roots) out.amax = std::max(out.amax, std::abs(A));
    return out;
}

double amax_continued(Scheme scheme, double lam_x, double lam_y, double M) {
    return amax_continued_detail(scheme, lam_x, lam_y, M).amax;
}

double script_Amax(Scheme scheme, double Mcal, double lam_y, int n_lam_x, int n_eta, int jobs) {
    const double lx_max = std::sqrt(std::max(0.0, 1.0 - lam_y * lam_y));
    std::vector<double> vals(static_cast<size_t>(n_lam_x) * n_eta, 1.0);
    parallel_for(static_cast<int>(vals.size()), jobs, [&](int idx) {
        const int i = idx / n_eta, k = idx % n_eta;
        const double lx = n_lam_x == 1 ? 0.0 : lx_max * i / (n_lam_x - 1);
        const double eta = static_cast<double>(k + 1) / n_eta;
        vals[idx] = amax_continued(scheme, lx, lam_y, mass_ratio(Mcal, eta, lam_y));
    });
    return *std::max_element(vals.begin(), vals.end());
}

double script_A_CFL(double lam_x, double lam_y, int n_M, int jobs) {
    std::vector<double> vals(n_M, 1.0);
    parallel_for(n_M, jobs, [&](int i) {
        const double M = std::pow(10.0, -6.0 + 12.0 * i / std::max(1, n_M - 1));
        vals[i] = amax_continued(Scheme::AMP, lam_x, lam_y, M);
    });
    return *std::max_element(vals.begin(), vals.end());
}

}  // namespace ampfsi
