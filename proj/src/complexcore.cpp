#include "ampfsi/complexcore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ampfsi {

cplx branch_sqrt(cplx z) {
    cplx w = std::sqrt(z);
    if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
    return w;
}

cplx Polynomial::operator()(cplx z) const {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx Polynomial::derivative(cplx z) const {
    cplx acc{0.0, 0.0};
    for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

Polynomial Polynomial::trimmed(double rel_tol) const {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    Polynomial out{coeffs};
    while (!out.coeffs.empty() && std::abs(out.coeffs.back()) <= rel_tol * scale)
        out.coeffs.pop_back();
    return out;
}

std::vector<cplx> poly_roots(const Polynomial& p) {
    Polynomial q = p.trimmed();
    if (q.degree() < 1) throw DegenerateInput("poly_roots: degree < 1 after trimming");
    const int n = q.degree();
    const cplx lead = q.coeffs[n];

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -q.coeffs[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw NoConvergence("poly_roots: eigenvalue solver failed");

    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()(i);
        // A few Newton steps against the original coefficients; keep the
        // best iterate so clustered roots cannot be pushed away.
        cplx best = z;
        double best_res = std::abs(q(z));
        for (int it = 0; it < 8; ++it) {
            const cplx d = q.derivative(z);
            if (d == cplx{0.0, 0.0}) break;
            z -= q(z) / d;
            const double res = std::abs(q(z));
            if (!std::isfinite(res)) break;
            if (res < best_res) {
                best_res = res;
                best = z;
            }
        }
        roots[i] = best;
    }
    return roots;
}

Polynomial interpolate_on_circle(const std::vector<cplx>& values, double radius) {
    const int n = static_cast<int>(values.size());
    Polynomial p;
    p.coeffs.assign(n, cplx{0.0, 0.0});
    // Small n only: a direct DFT is exact enough and keeps this dependency free.
    for (int k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += values[j] * std::polar(1.0, -2.0 * kPi * j * k / n);
        p.coeffs[k] = acc / (static_cast<double>(n) * std::pow(radius, k));
    }
    return p;
}

namespace {

constexpr int kMaxSamples = 1 << 20;

struct Sample {
    double t;
    cplx v;
};

}  // namespace

WindingResult winding_along(const AnalyticFn& f, const Path& path, int n_samples,
                            double max_phase_step) {
    n_samples = std::max(n_samples, 8);
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    int samples = 0;

    auto eval = [&](double t) {
        const cplx z = path(t);
        const cplx v = f(z);
        ++samples;
        const double a = std::abs(v);
        if (!std::isfinite(a)) {
            std::ostringstream os;
            os << "winding: non-finite value at z=" << z;
            throw ContourTooClose(os.str(), z, std::abs(z), 0.0);
        }
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
        return v;
    };

    std::vector<Sample> base(n_samples + 1);
    for (int k = 0; k < n_samples; ++k) {
        const double t = static_cast<double>(k) / n_samples;
        base[k] = {t, eval(t)};
    }
    base[n_samples] = {1.0, base[0].v};

    double total = 0.0;
    int refinements = 0;
    std::vector<std::pair<Sample, Sample>> stack;
    for (int k = 0; k < n_samples; ++k) {
        stack.clear();
        stack.emplace_back(base[k], base[k + 1]);
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            const double dphi = std::arg(b.v / a.v);
            if (std::abs(dphi) > max_phase_step && samples < kMaxSamples && b.t - a.t > 1e-15) {
                const double tm = 0.5 * (a.t + b.t);
                const Sample m{tm, eval(tm)};
                ++refinements;
                stack.emplace_back(m, b);
                stack.emplace_back(a, m);
            } else {
                total += dphi;
            }
        }
    }

    WindingResult res;
    res.min_abs_on_contour = min_abs;
    res.refinements = refinements;
    const double turns = total / (2.0 * kPi);
    res.winding = static_cast<int>(std::lround(turns));
    if (min_abs <= 1e-12 * max_abs || min_abs == 0.0 || std::abs(turns - res.winding) > 0.25) {
        throw ContourTooClose("winding: function vanishes (or is unresolved) on the contour",
                              path(0.0), 0.0, min_abs);
    }
    return res;
}

WindingResult winding_number(const AnalyticFn& f, const Contour& c) {
    const cplx center = c.center;
    const double r = c.radius;
    Path path = [center, r](double t) { return center + std::polar(r, 2.0 * kPi * t); };
    try {
        return winding_along(f, path, c.n_samples, c.max_phase_step);
    } catch (const ContourTooClose& e) {
        throw ContourTooClose(e.what(), c.center, c.radius, e.min_abs);
    }
}

std::optional<cplx> newton_refine(const AnalyticFn& f, cplx z0, const NewtonOptions& opt) {
    cplx z = z0;
    for (int it = 0; it < opt.max_iter; ++it) {
        const double h = 1e-7 * (1.0 + std::abs(z));
        const cplx fz = f(z);
        if (fz == cplx{0.0, 0.0}) return z;
        const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
        if (d == cplx{0.0, 0.0} || !std::isfinite(std::abs(d))) return std::nullopt;
        const cplx step = fz / d;
        z -= step;
        if (!std::isfinite(std::abs(z))) return std::nullopt;
        if (std::abs(step) <= opt.step_tol * (1.0 + std::abs(z))) return z;
    }
    return std::nullopt;
}

namespace {

// Annular sector r0 <= |zeta| <= r1, th0 <= arg(zeta) <= th1.
struct Cell {
    double r0, r1, th0, th1;
    int count;
};

Path sector_path(const Cell& c) {
    return [c](double t) {
        const int piece = std::min(3, static_cast<int>(t * 4.0));
        const double s = t * 4.0 - piece;
        switch (piece) {
            case 0: return std::polar(c.r1, c.th0 + s * (c.th1 - c.th0));
            // Radial edges are sampled geometrically; cells can span many decades in r.
            case 1: return std::polar(c.r1 * std::pow(c.r0 / c.r1, s), c.th1);
            case 2: return std::polar(c.r0, c.th1 + s * (c.th0 - c.th1));
            default: return std::polar(c.r0 * std::pow(c.r1 / c.r0, s), c.th0);
        }
    };
}

bool inside(const Cell& c, cplx zeta, double tol) {
    const double r = std::abs(zeta);
    double th = std::arg(zeta);
    while (th < c.th0 - tol) th += 2.0 * kPi;
    while (th > c.th1 + tol) th -= 2.0 * kPi;
    return r >= c.r0 - tol && r <= c.r1 + tol && th >= c.th0 - tol && th <= c.th1 + tol;
}

}  // namespace

std::vector<cplx> subdivide_roots(const AnalyticFn& f, const RootSearchOptions& opt) {
    const AnalyticFn g = [&f](cplx zeta) { return f(1.0 / zeta); };
    const double r_in = 1.0 / opt.outer_radius;
    const double r_out = 1.0 / (1.0 + opt.inner_margin);
    const int n = opt.n_samples;

    // g usually has a pole at zeta = 0 (f grows like a power of A); multiplying by
    // zeta^order leaves every sector count unchanged and flattens the magnitude along
    // radial edges, which otherwise spans many decades.
    int order = 0;
    const AnalyticFn g_flat = [&g, &order](cplx zeta) {
        cplx v = g(zeta);
        for (int k = 0; k < order; ++k) v *= zeta;
        return v;
    };
    // A zero just off an edge can hide a full turn between samples, so counts are
    // redone at a higher density when they do not add up.
    auto count_of = [&](const Cell& c, int density = 1) {
        return winding_along(g_flat, sector_path(c), 4 * n * density).winding;
    };

    // Offset the quadrants so real and imaginary roots do not sit on an edge.
    constexpr double kOffset = 0.1234567;
    std::vector<Cell> work;
    bool consistent = false;
    for (int density : {1, 4, 16}) {
        const int w_out = winding_number(g, Contour{0.0, r_out, 4 * n * density}).winding;
        const int w_in = winding_number(g, Contour{0.0, r_in, 4 * n * density}).winding;
        order = std::max(0, -w_in);
        work.clear();
        int sum = 0;
        for (int q = 0; q < 4; ++q) {
            Cell c{r_in, r_out, -kPi + kOffset + q * kPi / 2, -kPi + kOffset + (q + 1) * kPi / 2, 0};
            c.count = count_of(c, density);
            sum += c.count;
            if (c.count > 0) work.push_back(c);
        }
        if (sum == w_out - w_in) {
            consistent = true;
            break;
        }
    }
    if (!consistent) throw ContourTooClose("subdivide_roots: sector counts do not add up", 0.0, r_out, 0.0);

    std::vector<cplx> roots;
    auto accept = [&](cplx A) {
        const double m = std::abs(A);
        return m > 1.0 + opt.inner_margin && m <= opt.outer_radius * (1.0 + 1e-12);
    };

    while (!work.empty()) {
        Cell c = work.back();
        work.pop_back();
        const double rm = 0.5 * (c.r0 + c.r1);
        const double diam = std::max(c.r1 - c.r0, c.r1 * (c.th1 - c.th0));
        const cplx A_center = 1.0 / std::polar(rm, 0.5 * (c.th0 + c.th1));

        if (c.count == 1) {
            if (auto A = newton_refine(f, A_center)) {
                if (accept(*A) && inside(c, 1.0 / *A, 1e-12)) {
                    roots.push_back(*A);
                    continue;
                }
            }
        }
        if (diam < opt.min_cell) {
            cplx A = A_center;
            if (auto An = newton_refine(f, A_center); An && inside(c, 1.0 / *An, 10 * diam)) A = *An;
            for (int k = 0; k < c.count; ++k) roots.push_back(A);
            continue;
        }

        const bool split_r = (c.r1 - c.r0) > rm * (c.th1 - c.th0);
        bool done = false;
        for (int density : {1, 4, 16}) {
            if (density > 1) {
                try {
                    c.count = count_of(c, density);
                } catch (const ContourTooClose&) {
                    continue;
                }
                if (c.count <= 0) {
                    done = true;
                    break;
                }
            }
            for (double ratio : {0.5, 0.4731, 0.5269, 0.4417}) {
                Cell a = c, b = c;
                if (split_r) {
                    const double rs = c.r1 > 4.0 * c.r0 ? c.r0 * std::pow(c.r1 / c.r0, ratio)
                                                        : c.r0 + ratio * (c.r1 - c.r0);
                    a.r1 = rs;
                    b.r0 = rs;
                } else {
                    const double ts = c.th0 + ratio * (c.th1 - c.th0);
                    a.th1 = ts;
                    b.th0 = ts;
                }
                try {
                    a.count = count_of(a, density);
                    b.count = count_of(b, density);
                } catch (const ContourTooClose&) {
                    continue;
                }
                if (a.count + b.count != c.count || a.count < 0 || b.count < 0) continue;
                if (a.count > 0) work.push_back(a);
                if (b.count > 0) work.push_back(b);
                done = true;
                break;
            }
            if (done) break;
        }
        if (!done) {
            std::ostringstream os;
            os << "subdivide_roots: cannot split cell r=[" << c.r0 << "," << c.r1 << "] th=["
               << c.th0 << "," << c.th1 << "]";
            throw ContourTooClose(os.str(), std::polar(rm, 0.5 * (c.th0 + c.th1)), diam, 0.0);
        }
    }

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace ampfsi
