#include "qgauss/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace qgauss {

RealLineRule real_line_rule(const GaussianEnvelope& env, double tail_tol) {
    if (!(env.decay > 0.0) || !(env.bound > 0.0)) {
        throw std::invalid_argument("real_line_rule: envelope needs positive decay and bound");
    }
    // Two tails, each <= bound * exp(-decay d^2) / (2 decay d).
    auto tail = [&](double d) { return env.bound * std::exp(-env.decay * d * d) / (env.decay * d); };
    double d = 0.5;
    while (tail(d) > tail_tol) d += 0.25;
    RealLineRule rule;
    rule.center = 0.5 * (env.lo + env.hi);
    rule.half_width = 0.5 * (env.hi - env.lo) + d;
    rule.tail_bound = tail(d);
    return rule;
}

namespace {
std::complex<double> simpson(const RealFunction& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    std::complex<double> s = f(a) + f(b);
    std::complex<double> odd = 0.0, even = 0.0;
    for (int i = 1; i < panels; ++i) {
        const auto v = f(a + h * i);
        if (i % 2) {
            odd += v;
        } else {
            even += v;
        }
    }
    s += 4.0 * odd + 2.0 * even;
    return s * (h / 3.0);
}
}  // namespace

QuadResult integrate_real_line(const RealFunction& f, const GaussianEnvelope& env, double tol, int max_points) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_real_line: tol must be positive");
    QuadResult out;
    out.rule = real_line_rule(env, 0.25 * tol);
    const double a = out.rule.center - out.rule.half_width;
    const double b = out.rule.center + out.rule.half_width;

    int panels = 64;
    while ((b - a) / panels > 0.05) panels *= 2;
    auto prev = simpson(f, a, b, panels);
    int agreed = 0;
    while (2 * panels <= max_points) {
        panels *= 2;
        const auto cur = simpson(f, a, b, panels);
        const double err = std::abs(cur - prev) / 15.0;
        agreed = err <= 0.5 * tol ? agreed + 1 : 0;
        if (agreed >= 2) {
            out.value = cur + (cur - prev) / 15.0;
            out.error_estimate = err + out.rule.tail_bound;
            out.rule.points = panels + 1;
            return out;
        }
        prev = cur;
    }
    throw std::runtime_error("integrate_real_line: no convergence within the point budget");
}

PeriodicResult integrate_periodic_unit(const RealFunction& f, int points) {
    if (points < 1) throw std::invalid_argument("integrate_periodic_unit: points must be positive");
    auto rule = [&](int n) {
        std::complex<double> s = 0.0;
        for (int i = 0; i < n; ++i) s += f(static_cast<double>(i) / n);
        return s / static_cast<double>(n);
    };
    PeriodicResult out;
    out.points = points;
    out.value = rule(points);
    out.doubling_delta = std::abs(rule(2 * points) - out.value);
    return out;
}

}  // namespace qgauss
