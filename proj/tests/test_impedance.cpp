#include <doctest.h>

#include <cmath>
#include <random>

#include "ampfsi/impedance.hpp"

using namespace ampfsi;

namespace {

// Normal and tangential interface residuals of the exponential perturbation
// solution, with mu = k = 1 and dt / rho = Lambda, for unit velocity (col 0) or
// unit pressure (col 1) amplitude. Derivatives are fourth-order differences.
std::pair<cplx, cplx> perturbation_residuals(double Lambda, double theta_p, double theta_s, int col) {
    const double beta = std::sqrt(1.0 + 1.0 / Lambda), h = 1e-4;
    const double V0 = col == 0, P0 = col == 1;
    auto v2 = [&](double y) -> cplx {
        return V0 * std::exp(-beta * y) + Lambda * P0 * (std::exp(-y) - std::exp(-beta * y));
    };
    auto d = [h](auto f, double y) -> cplx {
        return (-f(y + 2 * h) + 8.0 * f(y + h) - 8.0 * f(y - h) + f(y - 2 * h)) / (12.0 * h);
    };
    auto v1 = [&](double y) -> cplx { return -d(v2, y) / I; };
    auto p = [&](double y) -> cplx { return P0 * std::exp(-y); };
    const cplx normal = -p(0.0) + 2.0 * d(v2, 0.0) - theta_p * v2(0.0);
    const cplx tangential = I * v2(0.0) + d(v1, 0.0) - theta_s * v1(0.0);
    return {normal, tangential};
}

}  // namespace

TEST_CASE("variational system matches the perturbation oracle") {
    const VariationalSystem s = build_variational_system({0.5, 2.0, 3.0});
    // Frozen from perturbation_residuals(0.5, 2, 3, col).
    CHECK(std::abs(s.a11 - cplx(-5.46410162, 0.0)) < 1e-7);
    CHECK(std::abs(s.a12 - cplx(-0.26794919, 0.0)) < 1e-7);
    CHECK(std::abs(s.a21 - cplx(0.0, 9.19615242)) < 1e-7);
    CHECK(std::abs(s.a22 - cplx(0.0, -2.09807621)) < 1e-7);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0), th(0.0, 5.0);
    for (int k = 0; k < 20; ++k) {
        const double L = std::pow(10.0, u(rng)), tp = th(rng), ts = th(rng);
        const VariationalSystem v = build_variational_system({L, tp, ts});
        const auto [n0, t0] = perturbation_residuals(L, tp, ts, 0);
        const auto [n1, t1] = perturbation_residuals(L, tp, ts, 1);
        const double scale = 1.0 + std::abs(v.a11) + std::abs(v.a21);
        CHECK(std::abs(v.a11 - n0) < 1e-6 * scale);
        CHECK(std::abs(v.a21 - t0) < 1e-6 * scale);
        CHECK(std::abs(v.a12 - n1) < 1e-6 * scale);
        CHECK(std::abs(v.a22 - t1) < 1e-6 * scale);
    }
}

TEST_CASE("coefficient examples") {
    const VariationalSystem s = build_variational_system({1.0, 0.0, 0.0});
    CHECK(std::abs(s.a12 - cplx(2.0 * std::sqrt(2.0) - 3.0, 0.0)) < 1e-14);
    // Lambda (gamma - 1) = 1 / (gamma + 1) tends to 1/2, so a12 tends to 0.
    const VariationalSystem big = build_variational_system({1e12, 0.0, 0.0});
    CHECK(std::abs(big.a12) < 1e-6);
    const auto [n1, t1] = perturbation_residuals(1e6, 0.0, 0.0, 1);
    CHECK(std::abs(n1) < 1e-5);
    CHECK_THROWS_AS(build_variational_system({0.0, 0.0, 0.0}), DegenerateInput);
    CHECK_THROWS_AS(build_variational_system({1.0, -1.0, 0.0}), DegenerateInput);
}

TEST_CASE("z_f_from_system examples") {
    CHECK(std::abs(z_f_from_system(build_variational_system({1e6, 0.0, 0.0}), 0.0) - 2.0) < 1e-3);
    CHECK(std::abs(z_f_from_system(build_variational_system({1e-6, 0.0, 0.0}), 0.0) * 1e-6 - 1.0) < 5e-3);
    const double zf = z_f_from_system(build_variational_system({1.0, 0.3, 1.0}), 0.3);
    CHECK(std::abs(zf - compute_R(1.0, 1.0)) < 1e-12);
    CHECK(std::abs(zf - 3.36396103067893) < 1e-12);
    VariationalSystem bad = build_variational_system({1.0, 0.0, 0.0});
    bad.a22 = 0.0;
    CHECK_THROWS_AS(z_f_from_system(bad, 0.0), SingularSystem);
}

TEST_CASE("compute_R examples and R_tilde") {
    const double small = compute_R(1e-6, 5.0) * 1e-6;
    CHECK(small >= 0.99);
    CHECK(small <= 1.01);
    const double large = compute_R(1e6, 5.0);
    CHECK(large >= 1.99);
    CHECK(large <= 2.01);
    const double zf = z_f_from_system(build_variational_system({2.0, 0.0, 0.7}), 0.0);
    CHECK(std::abs(compute_R(2.0, 0.7) - zf) <= 1e-10 * zf);
    CHECK(compute_R_tilde(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(compute_R_tilde(0.5) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(compute_R_tilde(1e3) == doctest::Approx(2.001).epsilon(1e-15));
}

TEST_CASE("z_f does not depend on theta_p") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0), tp(0.0, 1e3);
    for (int k = 0; k < 200; ++k) {
        const double L = std::pow(10.0, u(rng)), ts = std::pow(10.0, u(rng));
        const double R = compute_R(L, ts);
        for (int j = 0; j < 3; ++j) {
            const double p = tp(rng);
            const double zf = z_f_from_system(build_variational_system({L, p, ts}), p);
            REQUIRE(std::abs(zf - R) <= 1e-10 * R);
        }
    }
}

TEST_CASE("shear-ratio form agrees with the theta form") {
    for (double e = -6.0; e <= 6.0; e += 0.25) {
        const double ts = std::pow(10.0, e);
        for (double L : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
            const double a = compute_R(L, ts), b = compute_R_shear_ratio(L, 1.0 / ts);
            REQUIRE(std::abs(a - b) <= 1e-12 * a);
        }
    }
}

TEST_CASE("ratio_curve stays near one") {
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 49.0));
    for (double ts : {1e-3, 1e3}) {
        const auto curve = ratio_curve(ts, grid);
        REQUIRE(curve.size() == grid.size());
        for (const auto& [L, r] : curve) {
            CHECK(std::isfinite(r));
            CHECK(r >= 0.5);
            CHECK(r <= 1.5);
        }
        const double L0 = curve.front().first;
        CHECK(std::abs(curve.front().second - compute_R(L0, ts) * L0 / (1.0 + 2.0 * L0)) < 1e-12);
    }
}
