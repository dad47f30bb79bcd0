#pragma once

// Rogers-Szego polynomials H_n(z) = sum_k C_k^n z^k, the truncated theta_3, the
// Poisson resummation of a periodised Gaussian, and the two unit-circle
// orthogonality relations (DG and Macfarlane arguments).

#include "qgauss/gram_report.hpp"
#include "qgauss/qnum.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qgauss {

template <typename Real>
struct RSPolynomial {
    int n = 0;
    Real q{};
    std::vector<Real> coeffs;

    std::complex<Real> operator()(const std::complex<Real>& z) const {
        std::complex<Real> v(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + std::complex<Real>(*it);
        return v;
    }
};

template <typename Real>
RSPolynomial<Real> rogers_szego(int n, const Real& q) {
    if (n < 0) throw std::domain_error("rogers_szego: degree must be nonnegative");
    QBinomialTable<Real> binom(q, n);
    return {n, q, binom.row(n)};
}

template <typename Real>
std::complex<Real> rs_eval(int n, const Real& q, const std::complex<Real>& z) {
    return rogers_szego(n, q)(z);
}

/// theta_3(theta; q) = sum_n q^{n^2/2} e^{i n theta}, truncated at |n| <= N with
/// 2 q^{N^2/2} / (1 - q^{N/2}) <= tol.
template <typename Real>
class ThetaEvaluator {
public:
    ThetaEvaluator(const Real& q, double tol) : q_(q), tol_(tol) {
        using std::pow;
        require_q_in_unit_interval(q, "theta3");
        if (!(tol > 0.0)) throw std::domain_error("theta3: tol must be positive");
        const double qd = static_cast<double>(q);
        while (tail_bound_for(qd, N_) > tol) ++N_;
        for (int n = 0; n <= N_; ++n) weights_.push_back(pow(q_, Real(n * n) / Real(2)));
    }

    int truncation() const { return N_; }
    double tol() const { return tol_; }
    double tail_bound() const { return tail_bound_for(static_cast<double>(q_), N_); }
    const Real& q() const { return q_; }

    Real operator()(const Real& theta) const {
        using std::cos;
        Real s = weights_[0];
        for (int n = 1; n <= N_; ++n) s += Real(2) * weights_[n] * cos(Real(n) * theta);
        return s;
    }

    static double tail_bound_for(double q, int N) {
        return 2.0 * std::pow(q, 0.5 * N * N) / (1.0 - std::pow(q, 0.5 * N));
    }

private:
    Real q_;
    double tol_;
    int N_ = 1;
    std::vector<Real> weights_;
};

template <typename Real>
Real theta3(const Real& theta, const Real& q, double tol) {
    return ThetaEvaluator<Real>(q, tol)(theta);
}

struct PoissonReport {
    double c = 0.0;
    std::vector<double> theta;
    std::vector<double> gaussian_side;  // sum_k exp(-2 (pi/c)^2 (theta + k)^2)
    std::vector<double> theta_side;     // sqrt(c^2 / 2pi) theta_3(2 pi theta; q)
    double max_deviation = 0.0;
};

/// 17 points spanning one period, -1/2 .. 1/2.
std::vector<double> default_theta_grid();

PoissonReport poisson_check(double c, const std::vector<double>& theta_grid, double tol = 1e-15);

enum class CircleFamily { dg, mac };

/// Arguments of the two factors at theta: DG uses -q^{-1/2} conj(z) and
/// -q^{-1/2} z; Macfarlane uses -q^{-(n-1/2)} z in both factors by default, or
/// conj(z) in the first factor with `conjugate_first`.
struct CircleOptions {
    int points = 512;
    bool conjugate_first = false;
    PrecisionRequest precision = PrecisionRequest::automatic();
    double tol = 1e-9;  // used to size automatic precision
};

void require_circle_points(int points);

/// q^{-n}(q;q)_n for DG, q^{-n(n-1)/2}(q;q)_n(-1)^n for Macfarlane.
template <typename Real>
Real circle_target(CircleFamily family, const Real& q, int n) {
    const Real poch = qpochhammer(q, n);
    Real qn(1);
    for (int j = 0; j < n; ++j) qn *= q;
    if (family == CircleFamily::dg) return poch / qn;
    using std::pow;
    const Real v = poch / pow(q, Real(n) * Real(n - 1) / Real(2));
    return (n % 2) ? -v : v;
}

template <typename Real>
GramReport circle_gram_in(CircleFamily family, const QContext<Real>& ctx, int nmax, int points,
                          bool conjugate_first) {
    using std::cos;
    using std::pow;
    using std::sin;
    using C = std::complex<Real>;
    require_circle_points(points);
    const Real q = ctx.q();
    std::vector<RSPolynomial<Real>> polys;
    std::vector<Real> scale;  // |argument| of H_n: q^{-1/2} or q^{-(n-1/2)}
    for (int n = 0; n <= nmax; ++n) {
        polys.push_back(rogers_szego(n, q));
        scale.push_back(family == CircleFamily::dg ? pow(q, Real(-1) / Real(2))
                                                   : pow(q, -(Real(n) - Real(1) / Real(2))));
    }
    const ThetaEvaluator<Real> theta(q, 0.01 * unit_roundoff<Real>());
    const bool conj_left = family == CircleFamily::dg || conjugate_first;
    const std::size_t dim = static_cast<std::size_t>(nmax + 1);
    std::vector<C> acc(dim * dim, C(0));
    std::vector<C> left(dim), right(dim);
    const Real two_pi = Real(2) * pi_v<Real>();
    for (int j = 0; j < points; ++j) {
        const Real th = Real(j) / Real(points);
        const C z(cos(two_pi * th), sin(two_pi * th));
        const Real w = theta(two_pi * th);
        for (std::size_t n = 0; n < dim; ++n) {
            const C arg = -scale[n] * z;
            right[n] = polys[n](arg);
            left[n] = conj_left ? polys[n](std::conj(arg)) : right[n];
        }
        for (std::size_t n = 0; n < dim; ++n)
            for (std::size_t m = 0; m < dim; ++m) acc[n * dim + m] += left[n] * right[m] * w;
    }
    std::vector<std::string> labels;
    for (int n = 0; n <= nmax; ++n) labels.push_back(std::to_string(n));
    GramReport report(family == CircleFamily::dg ? "circle-dg" : "circle-mac", labels,
                      GramReport::Scale::relative_to_diagonal);
    for (std::size_t n = 0; n < dim; ++n) {
        for (std::size_t m = 0; m < dim; ++m) {
            const C value = acc[n * dim + m] / Real(points);
            const C target = n == m ? C(circle_target(family, q, static_cast<int>(n))) : C(0);
            report.set(n, m, value, target);
        }
    }
    return report;
}

/// Largest |integrand| bound over |target| normalisation, estimated in long double.
double circle_dynamic_range(CircleFamily family, const QSpec& spec, int nmax);

GramReport circle_gram(CircleFamily family, const QSpec& spec, int nmax, const CircleOptions& options = {});

inline GramReport circle_gram_dg(const QSpec& spec, int nmax, const CircleOptions& options = {}) {
    return circle_gram(CircleFamily::dg, spec, nmax, options);
}

inline GramReport circle_gram_mac(const QSpec& spec, int nmax, const CircleOptions& options = {}) {
    return circle_gram(CircleFamily::mac, spec, nmax, options);
}

/// Real-line Gram <phi_n, phi_m> (matrix) against the circle Gram divided by
/// sqrt(q^{-n}(q;q)_n q^{-m}(q;q)_m) (target).
GramReport parseval_bridge(const QSpec& spec, int nmax, int points = 512);

}  // namespace qgauss
