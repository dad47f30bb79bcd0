#include "qgauss/circle.hpp"

#include "qgauss/dg.hpp"

#include <cmath>
#include <sstream>

namespace qgauss {

std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(-0.5 + i / 16.0);
    return grid;
}

PoissonReport poisson_check(double c, const std::vector<double>& theta_grid, double tol) {
    if (!(c > 0.0)) throw std::domain_error("poisson_check: c must be positive");
    const double pi = pi_v<double>();
    const double a = 2.0 * (pi / c) * (pi / c);
    const double q = std::exp(-c * c);
    const ThetaEvaluator<double> theta(q, tol);
    PoissonReport out;
    out.c = c;
    for (double th : theta_grid) {
        // Terms decay like exp(-a d^2) away from k = -theta; stop once below tol.
        const long k0 = std::lround(-th);
        long double lhs = 0.0L;
        for (long k = k0;; ++k) {
            const double t = std::exp(-a * (th + k) * (th + k));
            lhs += t;
            if (k > k0 && t < tol * 1e-3) break;
        }
        for (long k = k0 - 1;; --k) {
            const double t = std::exp(-a * (th + k) * (th + k));
            lhs += t;
            if (t < tol * 1e-3) break;
        }
        const double rhs = std::sqrt(c * c / (2.0 * pi)) * theta(2.0 * pi * th);
        out.theta.push_back(th);
        out.gaussian_side.push_back(static_cast<double>(lhs));
        out.theta_side.push_back(rhs);
        out.max_deviation = std::max(out.max_deviation, std::abs(static_cast<double>(lhs) - rhs));
    }
    return out;
}

void require_circle_points(int points) {
    if (points < 64 || (points & (points - 1)) != 0) {
        throw std::invalid_argument("circle quadrature: points must be a power of two >= 64");
    }
}

double circle_dynamic_range(CircleFamily family, const QSpec& spec, int nmax) {
    using L = long double;
    const auto ctx = spec.make<L>();
    const L q = ctx.q();
    const L theta_peak = ThetaEvaluator<L>(q, 1e-20)(0.0L);
    std::vector<L> peak, target;
    for (int n = 0; n <= nmax; ++n) {
        const L a = family == CircleFamily::dg ? std::pow(q, -0.5L) : std::pow(q, -(n - 0.5L));
        const auto p = rogers_szego(n, q);
        L s = 0, ak = 1;
        for (const L& cf : p.coeffs) {
            s += cf * ak;
            ak *= a;
        }
        peak.push_back(s);
        target.push_back(std::abs(circle_target(family, q, n)));
    }
    L worst = 1;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= nmax; ++m)
            worst = std::max(worst, peak[n] * peak[m] * theta_peak / std::sqrt(target[n] * target[m]));
    return static_cast<double>(worst);
}

GramReport circle_gram(CircleFamily family, const QSpec& spec, int nmax, const CircleOptions& options) {
    if (nmax < 0) throw std::domain_error("circle_gram: nmax must be nonnegative");
    require_circle_points(options.points);
    const double range = circle_dynamic_range(family, spec, nmax);
    const PrecisionChoice choice = choose_precision(options.precision, range, options.tol);
    GramReport report;
    if (choice.high) {
        ScopedDigits guard(choice.digits);
        report = circle_gram_in(family, spec.make<HighReal>(), nmax, options.points, options.conjugate_first);
    } else {
        report = circle_gram_in(family, spec.make<double>(), nmax, options.points, options.conjugate_first);
    }
    report.precision = choice;
    std::ostringstream note;
    note << options.points << "-point periodic trapezoid";
    report.notes.push_back(note.str());
    if (family == CircleFamily::mac) {
        report.notes.push_back(options.conjugate_first ? "first factor conjugated (variant)"
                                                       : "both factors carry e^{+i2 pi theta}");
    }
    return report;
}

GramReport parseval_bridge(const QSpec& spec, int nmax, int points) {
    CircleOptions options;
    options.points = points;
    const GramReport circle = circle_gram_dg(spec, nmax, options);
    const GramReport line = dg_gram(spec, nmax);
    const double q = spec.q();
    std::vector<double> t;
    for (int n = 0; n <= nmax; ++n) t.push_back(circle_target(CircleFamily::dg, q, n));
    GramReport report("parseval-bridge", line.labels);
    for (std::size_t n = 0; n < line.dim(); ++n) {
        for (std::size_t m = 0; m < line.dim(); ++m) {
            const auto via_circle = circle.at(n, m) / std::sqrt(t[n] * t[m]);
            report.set(n, m, line.at(n, m), via_circle);
        }
    }
    report.precision = circle.precision;
    report.notes.push_back("matrix: real-line overlaps; target: circle integral / sqrt(T_nn T_mm)");
    return report;
}

}  // namespace qgauss
