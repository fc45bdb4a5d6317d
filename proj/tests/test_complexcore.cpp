#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ampfsi/complexcore.hpp"

using namespace ampfsi;

namespace {

Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0) {
    std::vector<cplx> c{lead};
    for (cplx r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return {c};
}

// Distance from each expected root to its nearest match, removing matches as used.
double match_error(std::vector<cplx> got, const std::vector<cplx>& want) {
    if (got.size() != want.size()) return INFINITY;
    double worst = 0.0;
    for (cplx w : want) {
        auto it = std::min_element(got.begin(), got.end(),
                                   [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
        worst = std::max(worst, std::abs(*it - w));
        got.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("branch_sqrt follows the Re >= 0 convention") {
    CHECK(std::abs(branch_sqrt(4.0) - cplx(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(branch_sqrt(-1.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(branch_sqrt({3.0, 4.0}) - cplx(2.0, 1.0)) < 1e-15);
    CHECK(branch_sqrt(cplx(-4.0, -0.0)).imag() >= 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int k = 0; k < 10000; ++k) {
        const cplx z{u(rng), u(rng)};
        const cplx w = branch_sqrt(z);
        REQUIRE(std::abs(w * w - z) <= 1e-14 * std::abs(z));
        REQUIRE(w.real() >= 0.0);
    }
}

TEST_CASE("poly_roots examples") {
    CHECK(match_error(poly_roots({{-1.0, 0.0, 1.0}}), {1.0, -1.0}) < 1e-12);
    CHECK(match_error(poly_roots({{1.0, -2.0, 1.0}}), {1.0, 1.0}) < 1e-7);
    const auto r = poly_roots({{1.0, 0.0, 0.0, 0.0, 1.0}});
    REQUIRE(r.size() == 4);
    for (cplx z : r) {
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
        const double k = std::arg(z) / (kPi / 4);
        CHECK(std::abs(k - std::round(k)) < 1e-10);
        CHECK(std::abs(std::fmod(std::abs(std::round(k)), 2.0) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(poly_roots({{3.0}}), DegenerateInput);
    CHECK_THROWS_AS(poly_roots({{0.0, 0.0, 0.0}}), DegenerateInput);
}

TEST_CASE("poly_roots recovers random roots and meets the residual bound") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = 1 + trial % 8;
        std::vector<cplx> roots;
        while (static_cast<int>(roots.size()) < deg) {
            const cplx z{u(rng), u(rng)};
            const bool close = std::any_of(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r - z) < 0.1; });
            if (!close) roots.push_back(z);
        }
        const Polynomial p = from_roots(roots, cplx(u(rng) + 3.0, u(rng)));
        const auto got = poly_roots(p);
        REQUIRE(match_error(got, roots) < 1e-8);
        double cmax = 0.0;
        for (cplx c : p.coeffs) cmax = std::max(cmax, std::abs(c));
        for (cplx z : got)
            REQUIRE(std::abs(p(z)) <= 1e-9 * cmax * std::pow(std::max(1.0, std::abs(z)), deg));
    }
}

TEST_CASE("interpolate_on_circle reproduces a polynomial") {
    const Polynomial p{{1.0, {2.0, -1.0}, 0.5, {0.0, 3.0}}};
    std::vector<cplx> vals(4);
    for (int k = 0; k < 4; ++k) vals[k] = p(2.0 * std::polar(1.0, 2.0 * kPi * k / 4));
    const Polynomial q = interpolate_on_circle(vals, 2.0);
    REQUIRE(q.coeffs.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(q.coeffs[k] - p.coeffs[k]) < 1e-13);
}

TEST_CASE("winding_number examples") {
    const Contour unit{0.0, 1.0, 64};
    CHECK(winding_number([](cplx z) { return z; }, unit).winding == 1);
    CHECK(winding_number([](cplx z) { return 1.0 / (z * z); }, unit).winding == -2);
    CHECK(winding_number([](cplx z) { return (z - 0.3) * (z - 0.5 * I) / z; }, unit).winding == 1);
    CHECK_THROWS_AS(winding_number([](cplx z) { return z - 1.0; }, unit), ContourTooClose);
}

TEST_CASE("winding_number is stable under doubling the samples") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> roots;
        for (int k = 0; k < 5; ++k) roots.emplace_back(u(rng), u(rng));
        const Polynomial p = from_roots(roots);
        const AnalyticFn f = [&p](cplx z) { return p(z); };
        int expected = 0;
        for (cplx r : roots) expected += std::abs(r) < 1.0;
        try {
            const int w1 = winding_number(f, {0.0, 1.0, 64}).winding;
            const int w2 = winding_number(f, {0.0, 1.0, 128}).winding;
            CHECK(w1 == w2);
            CHECK(w1 == expected);
        } catch (const ContourTooClose&) {
            // a random root landed on the circle; nothing to compare
        }
    }
}

TEST_CASE("subdivide_roots examples") {
    auto near = [](const std::vector<cplx>& got, const std::vector<cplx>& want) {
        return match_error(got, want) < 1e-10;
    };
    CHECK(near(subdivide_roots([](cplx A) { return A - 2.0; }), {2.0}));
    const AnalyticFn two = [](cplx A) { return (A - 1.5) * (A - 3.0 * I); };
    const auto r = subdivide_roots(two);
    CHECK(near(r, {1.5, 3.0 * I}));
    for (cplx A : r) CHECK(std::abs(two(A)) <= 1e-10);
    CHECK(subdivide_roots([](cplx A) { return A - 0.5; }).empty());
}

TEST_CASE("subdivide_roots agrees with poly_roots outside the unit circle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mod_in(0.1, 0.9), mod_out(1.1, 50.0), ang(-kPi, kPi);
    std::bernoulli_distribution outside(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int deg = 1 + trial % 6;
        std::vector<cplx> roots;
        for (int k = 0; k < deg; ++k)
            roots.push_back(std::polar(outside(rng) ? mod_out(rng) : mod_in(rng), ang(rng)));
        const Polynomial p = from_roots(roots);
        std::vector<cplx> want;
        for (cplx z : poly_roots(p))
            if (std::abs(z) > 1.0) want.push_back(z);
        const auto got = subdivide_roots([&p](cplx A) { return p(A); });
        REQUIRE(match_error(got, want) < 1e-8);
    }
}
