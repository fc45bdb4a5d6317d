#include <doctest.h>

#include <cmath>
#include <random>

#include "ampfsi/cauchy_cfl.hpp"
#include "ampfsi/viscous_modes.hpp"
#include "root_search.hpp"

using namespace ampfsi;

namespace {

ViscousPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> e(-3.0, 3.0), l(0.05, 0.95);
    ViscousPoint pt{std::pow(10.0, e(rng)), std::pow(10.0, e(rng)), l(rng), l(rng)};
    while (pt.lam_x * pt.lam_x + pt.lam_y * pt.lam_y > 1.0) {
        pt.lam_x *= 0.8;
        pt.lam_y *= 0.8;
    }
    return pt;
}

cplx random_unstable_A(std::mt19937_64& rng, double max_mod = 10.0) {
    std::uniform_real_distribution<double> m(1.0 + 1e-3, max_mod), a(-kPi, kPi);
    return std::polar(m(rng), a(rng));
}

}  // namespace

TEST_CASE("gamma_of examples") {
    CHECK(std::abs(gamma_of(1.0, 0.37) - 1.0) < 1e-15);
    CHECK(std::abs(gamma_of(1e9, 1.0) - std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(gamma_of(2.0, 0.5) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("phi_star_of examples") {
    CHECK(std::abs(phi_star_of(2.0, 0.0, 1.0).phi_star - 2.0) < 1e-15);
    const cplx A{1.5, 0.2};
    const SolidMode m = phi_star_of(A, 0.3, 0.4);
    CHECK(std::abs(m.phi_star) > 1.0);
    CHECK(std::abs(solid_det(m.phi_star, A, 0.3, 0.4)) < 1e-10);
    CHECK(std::abs(solid_det(1.0 / m.phi_star, A, 0.3, 0.4)) < 1e-10);
    CHECK(std::abs(m.eta_phi - eta_of(m.phi_star, A, 0.4)) < 1e-15);
}

TEST_CASE("spatial roots and fluid decay are bounded for |A| > 1") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> l(0.0, 1.0), e(-3.0, 3.0);
    for (int k = 0; k < 1000; ++k) {
        const cplx A = random_unstable_A(rng);
        double lx = l(rng), ly = l(rng);
        if (lx * lx + ly * ly > 1.0 || ly < 1e-3) continue;
        const SolidMode m = phi_star_of(A, lx, ly);
        REQUIRE(std::abs(m.phi_star) > 1.0);
        // The pair phi*, 1/phi* both solve the determinant condition (product one).
        REQUIRE(std::abs(solid_det(1.0 / m.phi_star, A, lx, ly)) <=
                1e-9 * (1.0 + std::abs(A * A * A * A)));
        REQUIRE(gamma_of(A, std::pow(10.0, e(rng))).real() > 0.0);
    }
}

TEST_CASE("solve_fluid_mode boundary residuals") {
    const ViscousPoint pt{1.0, 1.0, 0.5, 0.5};
    const cplx A = 1.5;
    SUBCASE("TP with zero solid velocity gives a quiescent fluid") {
        const FluidMode f = solve_fluid_mode(Scheme::TP, A, pt, {0.0, 0.0, 1.0, 2.0});
        CHECK(std::abs(f.v1f0) < 1e-14);
        CHECK(std::abs(f.v2f0) < 1e-14);
    }
    SUBCASE("ATP with zero solid traction is traction free") {
        const FluidMode f = solve_fluid_mode(Scheme::ATP, A, pt, {1.0, 0.5, 0.0, 0.0});
        CHECK(std::abs(f.s12) < 1e-12);
        CHECK(std::abs(f.s22) < 1e-12);
    }
    SUBCASE("AMP matches the outgoing tangential characteristic") {
        const InterfaceValues solid{1.0, 1.0, 1.0, 1.0};
        const FluidMode f = solve_fluid_mode(Scheme::AMP, A, pt, solid);
        // zbar = 1: sigma12 - v1 is continuous across the interface.
        CHECK(std::abs((f.s12 - f.v1f0) - (solid.s12 - solid.v1)) < 1e-11);
        CHECK(f.gamma.real() > 0.0);
    }
}

TEST_CASE("AMP decouples at lam_x = 0") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 20; ++k) {
        ViscousPoint pt = random_point(rng);
        pt.lam_x = 0.0;
        const cplx A = random_unstable_A(rng);
        const InterfaceSystem2x2 G = assemble_G(Scheme::AMP, A, pt);
        CHECK(std::abs(G.g12) <= 1e-12 * G.scale());
        CHECK(std::abs(G.g21) <= 1e-12 * G.scale());
        const InterfaceSystem2x2 C = closed_form_G(Scheme::AMP, A, pt);
        CHECK(C.g12 == cplx(0.0, 0.0));
        CHECK(C.g21 == cplx(0.0, 0.0));
    }
}

TEST_CASE("closed forms and assembly share their zero sets") {
    std::mt19937_64 rng(29);
    for (Scheme s : kAllSchemes) {
        int located = 0;
        for (int k = 0; k < 20; ++k) {
            const ViscousPoint pt = random_point(rng);
            const AnalyticFn closed = [&](cplx A) { return closed_form_G(s, A, pt).det(); };
            const AnalyticFn direct = [&](cplx A) { return viscous_characteristic(s, A, pt); };
            INFO("scheme " << static_cast<int>(s) << " point " << pt.Lambda << " " << pt.Z << " " << pt.lam_x
                           << " " << pt.lam_y);
            const auto from_closed = testing::roots_outside_unit(closed, 10.0);
            const auto from_direct = testing::roots_outside_unit(direct, 10.0);
            REQUIRE(from_closed);
            REQUIRE(from_direct);
            for (cplx A : *from_closed) {
                const InterfaceSystem2x2 G = assemble_G(s, A, pt);
                CHECK(std::abs(G.det()) <= 1e-8 * G.scale());
            }
            for (cplx A : *from_direct) {
                const InterfaceSystem2x2 G = closed_form_G(s, A, pt);
                CHECK(std::abs(G.det()) <= 1e-8 * G.scale());
            }
            located += static_cast<int>(from_closed->size() + from_direct->size());
        }
        if (s != Scheme::AMP) CHECK(located > 0);
    }
}

TEST_CASE("characteristic function has a pole of order two at zeta = 0") {
    std::mt19937_64 rng(31);
    for (Scheme s : kAllSchemes)
        for (int k = 0; k < 10; ++k) {
            const ViscousPoint pt = random_point(rng);
            const AnalyticFn g = [&](cplx z) { return viscous_characteristic(s, 1.0 / z, pt); };
            CHECK(winding_number(g, Contour{0.0, 1e-3, 256}).winding == -2);
        }
}

TEST_CASE("count_unstable examples") {
    CHECK(count_unstable(Scheme::AMP, {1.0, 1.0, 0.5, 0.5}).n_unstable == 0);
    CHECK(count_unstable(Scheme::TP, {1e-3, 1e3, 0.5, 0.5}).n_unstable >= 1);
    CHECK(count_unstable(Scheme::ATP, {1e3, 1e-3, 0.5, 0.5}).n_unstable >= 1);
}

TEST_CASE("count_unstable agrees with a direct root search") {
    std::mt19937_64 rng(37);
    for (Scheme s : kAllSchemes)
        for (int k = 0; k < 10; ++k) {
            const ViscousPoint pt = random_point(rng);
            const StabilityVerdict v = count_unstable(s, pt);
            if (v.verdict == Verdict::Marginal) continue;
            const auto roots = testing::roots_outside_unit(
                [&](cplx A) { return viscous_characteristic(s, A, pt); }, 1e7);
            REQUIRE(roots);
            CHECK(static_cast<int>(roots->size()) == v.n_unstable);
        }
}

TEST_CASE("sweep on a small grid") {
    const ViscousGrid grid = make_viscous_grid(7, 7, 4, 4);
    const auto amp = sweep(Scheme::AMP, grid, 2);
    REQUIRE(amp.size() == 49);
    for (const auto& c : amp) CHECK(c.verdict == Verdict::Stable);

    // TP fails for heavy fluids relative to the solid (large Z), ATP for light ones.
    const auto tp = sweep(Scheme::TP, grid, 2);
    const auto atp = sweep(Scheme::ATP, grid, 2);
    auto unstable_at = [](const std::vector<ViscousCell>& cells, double Z) {
        int n = 0;
        for (const auto& c : cells) n += std::abs(std::log10(c.Z / Z)) < 1e-9 && c.verdict == Verdict::Unstable;
        return n;
    };
    CHECK(unstable_at(tp, 1e3) > unstable_at(tp, 1e-3));
    CHECK(unstable_at(atp, 1e-3) > unstable_at(atp, 1e3));

    // Results do not depend on the thread count.
    const auto serial = sweep(Scheme::TP, grid, 1);
    REQUIRE(serial.size() == tp.size());
    for (size_t i = 0; i < tp.size(); ++i) {
        CHECK(serial[i].max_unstable == tp[i].max_unstable);
        CHECK(serial[i].n_points == tp[i].n_points);
    }
}
