#include "oracles.hpp"

#include <doctest.h>

#include "qgauss/dg.hpp"
#include "qgauss/quad.hpp"

#include <cmath>

using namespace qgauss;

namespace {
const auto ctx5 = QContext<double>::from_q(0.5);
}

TEST_CASE("norms and coefficients") {
    const double unit = std::sqrt(M_PI / (2 * ctx5.c2()));
    CHECK(dg_norm(ctx5, 0) == doctest::Approx(std::sqrt(unit)).epsilon(1e-15));
    for (double q : {0.2, 0.5, 0.8}) {
        const auto ctx = QContext<double>::from_q(q);
        for (int n = 0; n <= 12; ++n) {
            const auto Phi = build_Phi(ctx, n);
            CHECK(dg_norm(ctx, n) == doctest::Approx(std::sqrt(inner(Phi, Phi))).epsilon(1e-12));
            for (int k = 0; k <= n; ++k) {
                const double want = static_cast<double>(oracle::binom_q(q, n, k) * ((k % 2) ? -1 : 1) *
                                                        std::pow(static_cast<oracle::ld>(q), -k / 2.0L));
                CHECK(Phi.coeff(2 * k) == doctest::Approx(want).epsilon(1e-13));
            }
        }
    }
    const auto c1 = dg_coeffs(ctx5, 1);
    CHECK(c1.normalized[0] == doctest::Approx(ctx5.alpha() * std::sqrt(0.5) / std::sqrt(0.5)).epsilon(1e-15));
    CHECK(c1.normalized[1] == doctest::Approx(-ctx5.alpha() / std::sqrt(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(dg_coeffs(ctx5, -1), std::domain_error);
}

TEST_CASE("Phi_n against direct summation") {
    for (double q : {0.3, 0.6}) {
        const auto ctx = QContext<double>::from_q(q);
        for (int n = 0; n <= 8; ++n)
            for (double x : {-1.5, 0.0, 0.7, 3.2}) {
                const double want = static_cast<double>(oracle::Phi(q, n, x));
                CHECK(std::abs(evaluate(build_Phi(ctx, n), x) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
            }
    }
}

TEST_CASE("orthonormality in binary64") {
    CHECK(std::abs(inner(build_phi(ctx5, 3), build_phi(ctx5, 5))) < 1e-12);
    for (double q : {0.2, 0.5, 0.8}) {
        CHECK(dg_gram(QSpec::from_q(q), 12).max_deviation() <= 1e-10);
        CHECK(dg_gram(QSpec::from_q(q), 20).max_deviation() <= 1e-6);
    }
}

TEST_CASE("high nmax switches to a wider backend") {
    const auto r = dg_gram(QSpec::from_q(0.5), 24);
    CHECK(r.precision.high);
    CHECK(r.max_deviation() <= 1e-10);
    const auto b = dg_gram(QSpec::from_q(0.5), 6, PrecisionRequest::binary64());
    CHECK_FALSE(b.precision.high);
}

TEST_CASE("closed form equals repeated raising") {
    for (double q : {0.2, 0.5, 0.8}) {
        const auto ctx = QContext<double>::from_q(q);
        for (int n = 0; n <= 12; ++n)
            CHECK(relative_chain_residual(build_An_by_raising(ctx, n), build_phi(ctx, n)) <= 1e-12);
    }
    CHECK_THROWS_AS(build_An_by_raising(ctx5, max_raising_degree + 1), std::domain_error);
}

TEST_CASE("ladder residuals") {
    for (double q : {0.2, 0.5, 0.8}) {
        const auto ctx = QContext<double>::from_q(q);
        for (int n = 0; n <= 15; ++n) {
            const auto r = ladder_check(ctx, n);
            CHECK(r.lower_residual <= 1e-11);
            CHECK(r.raise_residual <= 1e-11);
        }
    }
}

TEST_CASE("harmonic limit protocol") {
    const auto grid = default_limit_grid();
    CHECK(grid.size() == 121);
    CHECK(grid.front() == -3.0);
    CHECK(grid.back() == 3.0);
    // ground state: the ratio is exactly constant
    const auto t0 = harmonic_limit_scan(0, {0.2, 0.1, 0.05}, grid);
    for (const auto& row : t0.rows) CHECK(row.dev < 1e-12);
    CHECK(t0.monotone());
    CHECK_FALSE(t0.rate(1, 2).has_value());
    // Phi_1 has its zero at x = 1/4, which drifts to s = 0 linearly in c
    CHECK(std::abs(dg_limit_value(1, 0.05, 0.0)) < std::abs(dg_limit_value(1, 0.1, 0.0)));
    CHECK(std::abs(dg_limit_value(1, 0.01, 0.0)) < 0.01);
    for (int n = 1; n <= 4; ++n) {
        const auto t = harmonic_limit_scan(n, {0.2, 0.1, 0.05}, grid);
        CHECK(t.monotone());
        CHECK(t.rows.back().dev < t.rows.front().dev / 2);
        CHECK(t.rows.back().excluded > 0);
    }
    CHECK_THROWS_AS(harmonic_limit_scan(1, {0.1, 0.2}, grid), std::invalid_argument);
    CHECK_THROWS_AS(harmonic_limit_scan(1, {0.1}, {5.0}), std::domain_error);
}

TEST_CASE("Stieltjes-Wigert coefficients") {
    const auto p0 = stieltjes_wigert(ctx5, 0, 0.5);
    REQUIRE(p0.coeffs.size() == 1);
    CHECK(p0.coeffs[0] == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-15));
    const auto p1 = stieltjes_wigert(ctx5, 1, 0.5);
    REQUIRE(p1.coeffs.size() == 2);
    CHECK(p1.coeffs[0] == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-15));
    CHECK(p1.coeffs[1] == doctest::Approx(-std::pow(0.5, 1.75)).epsilon(1e-15));
}

TEST_CASE("Stieltjes-Wigert u-form equals the shifted chain") {
    std::vector<double> xs;
    for (int i = 0; i <= 60; ++i) xs.push_back(-2.0 + 0.1 * i);
    for (double q : {0.3, 0.5, 0.8})
        for (int n = 0; n <= 6; ++n) {
            const auto ctx = QContext<double>::from_q(q);
            const auto r = sw_pointwise(ctx, n, 0.5, xs);
            CHECK(r.max_rel <= 1e-11);
            CHECK(r.used > 0);
            for (double x : {-0.5, 0.25, 1.0}) {
                const double want = static_cast<double>(oracle::Phi(q, n, x - 0.5));
                CHECK(std::abs(shifted_Phi(ctx, n, 0.5, x) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
            }
        }
}

TEST_CASE("Stieltjes-Wigert orthogonality under du") {
    for (int n = 0; n <= 6; ++n)
        for (int m = n + 1; m <= 6; ++m) {
            const auto r = sw_inner(ctx5, n, m, 0.5, SWMeasure::du);
            CHECK(std::abs(r.value) <= 1e-6);
        }
    // under dx the integrand loses the Jacobian and the off-diagonal stays finite
    CHECK(std::abs(sw_inner(ctx5, 0, 1, 0.5, SWMeasure::dx).value) > 1e-3);
}
