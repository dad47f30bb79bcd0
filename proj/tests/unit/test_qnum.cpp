#include "oracles.hpp"

#include <doctest.h>

#include "qgauss/qnum.hpp"

#include <cmath>

using namespace qgauss;

TEST_CASE("q-pochhammer small cases") {
    CHECK(qpochhammer(0.5, 0) == 1.0);
    CHECK(qpochhammer(0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(qpochhammer(0.5, 2) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK_THROWS_AS(qpochhammer(1.0, 2), std::domain_error);
    CHECK_THROWS_AS(qpochhammer(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(qpochhammer(0.5, -1), std::domain_error);
}

TEST_CASE("q-pochhammer agrees with the direct product") {
    for (double q : {0.1, 0.5, 0.9, 0.99}) {
        for (int n = 0; n <= 40; ++n) {
            const double want = static_cast<double>(oracle::poch(q, n));
            // each factor 1 - q^j carries a relative error of order eps / (1 - q)
            CHECK(std::abs(qpochhammer(q, n) - want) <= 1e-14 / (1.0 - q) * std::abs(want));
        }
    }
}

TEST_CASE("q-binomial examples") {
    CHECK(qbinomial(0.5, 5, 0) == 1.0);
    CHECK(qbinomial(0.5, 5, 5) == 1.0);
    CHECK(qbinomial(0.5, 2, 1) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(qbinomial(0.5, 3, 4) == 0.0);
    CHECK(qbinomial(0.5, 3, -1) == 0.0);
    CHECK_THROWS_AS(qbinomial(0.5, -1, 0), std::domain_error);
}

TEST_CASE("q-binomial: recursion, closed form, symmetry") {
    for (double q : {0.1, 0.5, 0.9}) {
        QBinomialTable<double> table(q, 30);
        for (int n = 0; n <= 30; ++n) {
            for (int k = 0; k <= n; ++k) {
                const double rec = table(n, k);
                const double closed = qbinomial_closed(q, n, k);
                const double direct = static_cast<double>(oracle::binom_q(q, n, k));
                CHECK(std::abs(rec - closed) <= 1e-13 * closed);
                CHECK(std::abs(rec - direct) <= 1e-13 * direct);
                CHECK(std::abs(rec - table(n, n - k)) <= 1e-13 * rec);
            }
        }
    }
}

TEST_CASE("q-binomial tends to the ordinary binomial as q -> 1") {
    const double q = 1.0 - 1e-6;
    for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= n; ++k) {
            const double b = static_cast<double>(oracle::binom(n, k));
            CHECK(std::abs(qbinomial(q, n, k) - b) <= 1e-4 * b);
        }
}

TEST_CASE("Arik-Coon spectrum") {
    CHECK(arik_coon_eigenvalue(0.5, 0) == 0.0);
    CHECK(arik_coon_eigenvalue(0.5, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(arik_coon_eigenvalue(0.5, 2) == doctest::Approx(1.5).epsilon(1e-15));
    for (double q : {0.2, 0.5, 0.9}) {
        double prev = -1.0;
        for (int n = 0; n <= 20; ++n) {
            const double v = arik_coon_eigenvalue(q, n);
            CHECK(std::abs(v - arik_coon_eigenvalue_recursive(q, n)) <= 1e-14 * std::max(v, 1.0));
            CHECK(v >= prev);
            CHECK(v <= 1.0 / (1.0 - q));
            prev = v;
        }
    }
}

TEST_CASE("Macfarlane spectrum") {
    CHECK(macfarlane_eigenvalue(0.5, 0) == 0.0);
    CHECK(macfarlane_eigenvalue(0.5, 1) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(macfarlane_eigenvalue(0.5, 2) == doctest::Approx(-6.0).epsilon(1e-15));
    for (double q : {0.2, 0.5, 0.9}) {
        double prev = 1.0;
        for (int n = 0; n <= 30; ++n) {
            const double v = macfarlane_eigenvalue(q, n);
            CHECK(std::abs(v - macfarlane_eigenvalue_recursive(q, n)) <= 1e-13 * std::max(-v, 1.0));
            CHECK(v < prev);
            CHECK(v <= 0.0);
            prev = v;
        }
    }
    // approaches -n in the classical limit
    for (int n = 0; n <= 4; ++n) {
        const double q = std::exp(-0.05 * 0.05);
        CHECK(std::abs(macfarlane_eigenvalue(q, n) + n) <= 0.05);
    }
}

TEST_CASE("Hermite polynomials and zeros") {
    CHECK(hermite(0, 1.3) == 1.0);
    CHECK(hermite(1, 1.5) == 3.0);
    CHECK(hermite(2, 2.0) == doctest::Approx(14.0));
    CHECK(hermite(3, 1.0) == doctest::Approx(-4.0));
    const auto z3 = hermite_zeros(3);
    REQUIRE(z3.size() == 3);
    CHECK(z3[0] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-12));
    CHECK(std::abs(z3[1]) < 1e-12);
    CHECK(z3[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(hermite_zeros(0).empty());
    for (int n = 1; n <= 8; ++n) {
        const auto z = hermite_zeros(n);
        CHECK(static_cast<int>(z.size()) == n);
        for (double s : z) CHECK(std::abs(hermite(n, s)) < 1e-9 * std::pow(2.0, n) * std::tgamma(n + 1.0));
    }
}

TEST_CASE("context from c and from q") {
    const auto a = QContext<double>::from_c(1.0);
    CHECK(a.q() == doctest::Approx(std::exp(-1.0)).epsilon(1e-16));
    const auto b = QContext<double>::from_q(0.5);
    CHECK(b.c2() == doctest::Approx(std::log(2.0)).epsilon(1e-16));
    CHECK(b.alpha() == doctest::Approx(std::pow(2.0 * std::log(2.0) / M_PI, 0.25)).epsilon(1e-15));
    CHECK(b.overlap_unit() * b.alpha() * b.alpha() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.pow(Rational(3, 2)) == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-15));
    CHECK_THROWS_AS(QContext<double>::from_c(0.0), std::domain_error);
    CHECK_THROWS_AS(QContext<double>::from_c(-1.0), std::domain_error);
    CHECK_THROWS_AS(QContext<double>::from_q(1.0), std::domain_error);
    CHECK(QSpec::from_q(0.5).q() == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(QSpec::from_c(2.0).c() == doctest::Approx(2.0).epsilon(1e-16));
}

TEST_CASE("precision selection") {
    const auto cheap = choose_precision(PrecisionRequest::automatic(), 10.0, 1e-10);
    CHECK_FALSE(cheap.high);
    const auto costly = choose_precision(PrecisionRequest::automatic(), 1e12, 1e-10);
    CHECK(costly.high);
    CHECK(costly.digits >= 23);
    const auto forced = choose_precision(PrecisionRequest::with_digits(40), 1.0, 1e-10);
    CHECK(forced.high);
    CHECK(forced.digits == 40);
    CHECK_FALSE(choose_precision(PrecisionRequest::binary64(), 1e30, 1e-10).high);
}

TEST_CASE("scoped digits restore the previous precision") {
    const auto before = HighReal::default_precision();
    {
        ScopedDigits guard(50);
        CHECK(HighReal::default_precision() == 50);
        const HighReal pi = pi_v<HighReal>();
        CHECK(std::abs(static_cast<double>(pi) - M_PI) < 1e-15);
        const HighReal third = HighReal(1) / HighReal(3);
        CHECK(abs(third * 3 - 1) < HighReal(1e-48));
        {
            ScopedDigits inner(30);
            CHECK(HighReal::default_precision() == 30);
        }
        CHECK(HighReal::default_precision() == 50);
    }
    CHECK(HighReal::default_precision() == before);
}

TEST_CASE("high precision q-binomial matches long double") {
    ScopedDigits guard(40);
    const HighReal q("0.7");
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= n; ++k) {
            const double want = static_cast<double>(oracle::binom_q(0.7L, n, k));
            CHECK(std::abs(static_cast<double>(qbinomial(q, n, k)) - want) <= 1e-15 * want);
        }
}
