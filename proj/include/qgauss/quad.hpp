#pragma once

// Reference integrators used only as oracles for the analytic inner products.
// They share no code with the overlap formulas: composite Simpson with
// Richardson control on a truncated real line, and the equispaced trapezoid on
// [0, 1] for periodic integrands.

#include "qgauss/chain.hpp"

#include <complex>
#include <functional>

namespace qgauss {

/// |f(x)| <= bound * exp(-decay * dist(x, [lo, hi])^2)
struct GaussianEnvelope {
    double lo = 0.0;
    double hi = 0.0;
    double bound = 1.0;
    double decay = 1.0;
};

/// Truncated interval [center - half_width, center + half_width] and the bound
/// on the integrand mass discarded outside it.
struct RealLineRule {
    double center = 0.0;
    double half_width = 0.0;
    int points = 0;
    double tail_bound = 0.0;
};

struct QuadResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    RealLineRule rule;
};

struct PeriodicResult {
    std::complex<double> value;
    /// |I(2P) - I(P)|, the spectral-accuracy diagnostic.
    double doubling_delta = 0.0;
    int points = 0;
};

using RealFunction = std::function<std::complex<double>(double)>;

RealLineRule real_line_rule(const GaussianEnvelope& env, double tail_tol);

/// Composite Simpson on the truncated line; panels double until the Richardson
/// estimate |S_2N - S_N| / 15 is below tol on two consecutive levels. Throws
/// std::runtime_error if `max_points` is exhausted.
QuadResult integrate_real_line(const RealFunction& f, const GaussianEnvelope& env, double tol,
                               int max_points = 1 << 22);

/// Equispaced trapezoid on [0, 1) with `points` nodes; also evaluates 2*points
/// nodes to report the doubling delta.
PeriodicResult integrate_periodic_unit(const RealFunction& f, int points);

/// Envelope for conj(f(±x)) g(x) w(x) with |w| <= weight_bound.
template <typename Scalar>
GaussianEnvelope product_envelope(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g,
                                  bool twisted = false, double weight_bound = 1.0) {
    double sf = 0.0, sg = 0.0;
    for (const auto& [t, a] : f.coeffs()) sf += to_double(abs_of(a));
    for (const auto& [t, a] : g.coeffs()) sg += to_double(abs_of(a));
    double flo = f.min_twice_center() / 2.0, fhi = f.max_twice_center() / 2.0;
    if (twisted) {
        const double tmp = flo;
        flo = -fhi;
        fhi = -tmp;
    }
    const double glo = g.min_twice_center() / 2.0, ghi = g.max_twice_center() / 2.0;
    GaussianEnvelope env;
    env.lo = std::min(flo, glo);
    env.hi = std::max(fhi, ghi);
    env.bound = std::max(sf * sg * weight_bound, 1e-300);
    // Outside the hull both factors decay at least like q^{dist^2}.
    env.decay = 2.0 * to_double(f.context().c2());
    return env;
}

/// Oracle for chain inner products: Simpson on the pointwise product of the
/// evaluated chains (binary64 evaluation regardless of Scalar).
template <typename Scalar>
QuadResult quad_inner(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g,
                      InnerKind kind = InnerKind::standard, double tol = 1e-11) {
    const auto fd = f.template convert<std::conditional_t<is_complex<Scalar>::value, std::complex<double>, double>>();
    const auto gd = g.template convert<std::conditional_t<is_complex<Scalar>::value, std::complex<double>, double>>();
    const bool twisted = kind == InnerKind::parity_twisted;
    auto integrand = [&](double x) {
        const auto left = to_cdouble(evaluate(fd, twisted ? -x : x));
        return std::conj(left) * to_cdouble(evaluate(gd, x));
    };
    return integrate_real_line(integrand, product_envelope(fd, gd, twisted), tol);
}

}  // namespace qgauss
