#include "oracles.hpp"

#include <doctest.h>

#include "qgauss/dg.hpp"
#include "qgauss/weights.hpp"

#include <cmath>

using namespace qgauss;

namespace {
const auto ctx5 = QContext<double>::from_q(0.5);

double weighted_norm_oracle(const PeriodicWeight& w, const QContext<double>& ctx) {
    const double c2 = ctx.c2();
    auto f = [&](oracle::ld x) {
        const double xd = static_cast<double>(x);
        return static_cast<oracle::ld>(std::norm(w(xd)) * std::exp(-2 * c2 * xd * xd));
    };
    return static_cast<double>(1.0L / std::sqrt(oracle::simpson(f, -15.0L, 15.0L, 20000)));
}
}  // namespace

TEST_CASE("weight construction") {
    CHECK_THROWS(PeriodicWeight({{0, 0.0}}));
    const auto w = PeriodicWeight::cosine(1.0, 0.3);
    for (double x : {0.0, 0.1, 0.37})
        CHECK(std::abs(w(x) - cplx(1.0 + 0.3 * std::cos(4 * M_PI * x))) < 1e-15);
    CHECK(std::abs(w(0.1) - w(0.6)) < 1e-14);
    CHECK(w.bound() == doctest::Approx(1.3));
}

TEST_CASE("weighted normalisation") {
    CHECK(alpha_w(PeriodicWeight::constant(), ctx5) == doctest::Approx(ctx5.alpha()).epsilon(1e-14));
    CHECK(alpha_w(PeriodicWeight({{1, 1.0}}), ctx5) == doctest::Approx(ctx5.alpha()).epsilon(1e-14));
    for (const auto& w : {PeriodicWeight::cosine(1.0, 0.3), PeriodicWeight({{0, 1.0}, {2, cplx(0.2, -0.4)}})})
        for (double q : {0.3, 0.5, 0.95}) {
            const auto ctx = QContext<double>::from_q(q);
            CHECK(alpha_w(w, ctx) == doctest::Approx(weighted_norm_oracle(w, ctx)).epsilon(1e-10));
        }
}

TEST_CASE("mode kernel") {
    CHECK(mode_kernel(ctx5, 0) == doctest::Approx(ctx5.overlap_unit()).epsilon(1e-15));
    const auto K = mode_overlap_matrix(ctx5, 4);
    CHECK((K - K.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("constant weight reproduces the plain inner product") {
    const auto w = PeriodicWeight::constant();
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) {
            const auto f = build_phi(ctx5, n).convert<cplx>();
            const auto g = build_phi(ctx5, m).convert<cplx>();
            CHECK(std::abs(weighted_inner({w, f}, {w, g}) - inner(f, g)) < 1e-14);
        }
    CHECK_THROWS_AS(weighted_inner({w, CChain(ctx5)}, {PeriodicWeight::cosine(1, 1), CChain(ctx5)}),
                    std::invalid_argument);
}

TEST_CASE("weighted products match quadrature") {
    const auto ws = random_weights(42, 3);
    const auto f = build_phi(ctx5, 3).convert<cplx>();
    const auto g = build_phi(ctx5, 2).convert<cplx>();
    for (const auto& a : ws)
        for (const auto& b : ws) {
            const cplx exact = weighted_inner_cross(a, f, b, g);
            CHECK(std::abs(exact - weighted_inner_quad(a, f, b, g).value) <= 1e-9);
        }
}

TEST_CASE("ladders commute with period-1/2 weights") {
    const auto w = PeriodicWeight({{0, 1.0}, {1, cplx(0.3, 0.1)}, {-2, 0.2}});
    const double q = ctx5.q();
    const WeightedChain f{w, build_phi(ctx5, 2).convert<cplx>()};
    const double s1 = 1.0 / std::sqrt(1.0 - q);
    const double s2 = 1.0 / std::sqrt(q * (1.0 - q));
    auto F = [&](double x) { return f(x); };
    auto Q = [&](double p) { return std::pow(q, p); };
    for (double x : {-0.8, 0.1, 0.45, 1.3}) {
        const cplx a = s1 * (Q(x + 0.75) * F(x + 0.5) - F(x + 1.0));
        const cplx b = s2 * (Q(2 * x + 0.5) * F(x) - Q(x + 0.25) * F(x + 0.5));
        CHECK(std::abs(apply_ladder(LadderKind::arik_lower, f)(x) - a) < 1e-13);
        CHECK(std::abs(apply_ladder(LadderKind::mac_lower, f)(x) - b) < 1e-13);
    }
}

TEST_CASE("degenerate eigenfunction sets stay orthonormal") {
    const auto w = PeriodicWeight::cosine(1.0, 0.3);
    CHECK(degeneracy_gram(w, ctx5, 8).max_deviation() <= 1e-9);
    CHECK(degeneracy_gram(w, ctx5, 8, true).max_deviation() <= 1e-9);
    for (const auto& rw : random_weights(7, 3)) CHECK(degeneracy_gram(rw, ctx5, 6).max_deviation() <= 1e-9);
    // shifting every member by a whole period leaves the Gram unchanged
    const auto A2 = weighted_eigenfunction(w, ctx5, 2);
    const auto A3 = weighted_eigenfunction(w, ctx5, 3);
    const WeightedChain S2{w, shift(A2.chain, 1.0)}, S3{w, shift(A3.chain, 1.0)};
    CHECK(std::abs(weighted_inner(S2, S3) - weighted_inner(A2, A3)) < 1e-14);
}

TEST_CASE("orthonormal weight families") {
    const auto one = orthonormal_weight_family(ctx5, 1);
    REQUIRE(one.weights.size() == 1);
    CHECK(std::abs(one.weights[0].modes().at(0) - cplx(ctx5.alpha())) < 1e-14);
    const auto fam = orthonormal_weight_family(ctx5, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const CChain g0(ctx5, {{0, 1.0}});
            const cplx v = weighted_inner_cross(fam.weights[i], g0, fam.weights[j], g0);
            CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) <= 1e-9);
        }
    CHECK(fam.condition_number >= 1.0);
}

TEST_CASE("doubly indexed family") {
    CHECK(gamma_family_gram(ctx5, 1, 3).max_deviation() <= 1e-12);
    CHECK(gamma_family_gram(ctx5, 2, 2).max_deviation() <= 1e-12);
    const auto g = gamma_family_gram(ctx5, 3, 6);
    CHECK(g.dim() == 21);
    CHECK(g.labels[1] == "0,1");
    CHECK(g.max_deviation() <= 1e-8);
}

TEST_CASE("random weights are reproducible") {
    const auto a = random_weights(5, 2);
    const auto b = random_weights(5, 2);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    CHECK(a[0] != random_weights(6, 1)[0]);
}
