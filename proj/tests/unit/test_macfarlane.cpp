#include "oracles.hpp"

#include <doctest.h>

#include "qgauss/macfarlane.hpp"
#include "qgauss/quad.hpp"

#include <cmath>

using namespace qgauss;

namespace {
const auto ctx5 = QContext<double>::from_q(0.5);
}

TEST_CASE("coefficients of the first members") {
    const auto m0 = mac_coeffs(ctx5, 0);
    CHECK(m0.zeta == doctest::Approx(ctx5.alpha()).epsilon(1e-15));
    REQUIRE(m0.E.size() == 1);
    CHECK(m0.E[0] == 1.0);
    const auto m1 = mac_coeffs(ctx5, 1);
    REQUIRE(m1.E.size() == 2);
    CHECK(m1.E[1] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m1.zeta == doctest::Approx(ctx5.alpha() / std::sqrt(0.5)).epsilon(1e-15));
    const auto b0 = build_Bn(ctx5, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0.coeff(0) == doctest::Approx(ctx5.alpha()).epsilon(1e-15));
}

TEST_CASE("recursion matches the closed form") {
    for (double q : {0.2, 0.5, 0.9})
        for (int n = 0; n <= 12; ++n) {
            const auto ctx = QContext<double>::from_q(q);
            const auto mc = mac_coeffs(ctx, n);
            CHECK(mc.closed_form_discrepancy <= 1e-12);
            for (int k = 0; k <= n; ++k) {
                const oracle::ld want = oracle::binom_q(q, n, k) * ((k % 2) ? -1 : 1) *
                                        std::pow(static_cast<oracle::ld>(q), -n * k + k / 2.0L);
                CHECK(std::abs(mc.E[k] - static_cast<double>(want)) <= 1e-12 * std::abs(static_cast<double>(want)));
            }
        }
}

TEST_CASE("indefinite norms and orthogonality") {
    const auto tw = InnerKind::parity_twisted;
    for (int n = 0; n <= 5; ++n) {
        const auto b = build_Bn(ctx5, n);
        CHECK(inner(b, b, tw) == doctest::Approx((n % 2) ? -1.0 : 1.0).epsilon(1e-12));
    }
    CHECK(std::abs(inner(build_Bn(ctx5, 2), build_Bn(ctx5, 5), tw)) < 1e-12);
    const auto g = indefinite_gram(QSpec::from_q(0.5), 5);
    CHECK(g.max_deviation() <= 1e-8);
    CHECK(g.diagonal_signs_alternate());
    const auto g9 = indefinite_gram(QSpec::from_q(0.9), 10);
    CHECK(g9.max_deviation() <= 1e-8);
    const auto g0 = indefinite_gram(QSpec::from_q(0.9), 0);
    CHECK(std::abs(g0.at(0, 0) - 1.0) <= 1e-14);
}

TEST_CASE("wide backend resolves deep cancellation") {
    const auto g = indefinite_gram(QSpec::from_q(0.5), 12, PrecisionRequest::with_digits(40));
    CHECK(g.precision.high);
    CHECK(g.max_deviation() <= 1e-20);
    CHECK(mac_dynamic_range(QSpec::from_q(0.5), 12) > 1e10);
    // eight digits cannot hold the cancellation
    const auto lo = indefinite_gram(QSpec::from_q(0.5), 12, PrecisionRequest::with_digits(8));
    CHECK(lo.max_deviation() > 1e-8);
}

TEST_CASE("closed form equals raising") {
    for (double q : {0.3, 0.5, 0.9})
        for (int n = 0; n <= 10; ++n) {
            const auto ctx = QContext<double>::from_q(q);
            CHECK(relative_chain_residual(build_Bn_by_raising(ctx, n), build_Bn(ctx, n)) <= 1e-11);
        }
}

TEST_CASE("ladder and eigenvalue identities") {
    CHECK(apply_ladder(LadderKind::mac_lower, build_Bn(ctx5, 0)).empty());
    for (double q : {0.3, 0.5, 0.9})
        for (int n = 0; n <= 10; ++n) {
            const auto ctx = QContext<double>::from_q(q);
            const auto r = mac_ladder_check(ctx, n);
            CHECK(r.lower_residual <= 1e-11);
            CHECK(r.raise_residual <= 1e-11);
            if (n <= 8) CHECK(mac_eigen_residual(ctx, n) <= 1e-10);
        }
}

TEST_CASE("twisted products of Macfarlane members match quadrature") {
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
            const auto a = inner(build_Bn(ctx5, n), build_Bn(ctx5, m), InnerKind::parity_twisted);
            const auto qr = quad_inner(build_Bn(ctx5, n), build_Bn(ctx5, m), InnerKind::parity_twisted);
            CHECK(std::abs(a - qr.value.real()) <= 1e-9);
        }
}

TEST_CASE("harmonic limit of the Macfarlane family") {
    const auto grid = default_limit_grid();
    for (int n = 1; n <= 4; ++n) {
        const auto t = mac_harmonic_limit(n, {0.2, 0.1, 0.05}, grid);
        CHECK(t.monotone());
        CHECK(t.rows.back().eigenvalue_gap <= 0.05);
        for (const auto& row : t.rows) CHECK(row.parity_sign == ((n % 2) ? -1 : 1));
    }
}
