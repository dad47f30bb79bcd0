#pragma once

// Scalar q-arithmetic shared by every other module: the deformation context,
// q-Pochhammer symbols, q-binomials, both oscillator spectra and the Hermite
// polynomials used by the harmonic-limit studies.

#include "qgauss/precision.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgauss {

using Rational = boost::rational<std::int64_t>;

template <typename Real>
void require_q_in_unit_interval(const Real& q, const char* where) {
    if (!(q > 0 && q < 1)) {
        throw std::domain_error(std::string(where) + ": q must lie in (0, 1)");
    }
}

/// Deformation data. `c` is the Gaussian inverse width and q = exp(-c^2); both
/// are always derived from the same source value.
template <typename Real>
class QContext {
public:
    static QContext from_c(Real c) {
        using std::exp;
        if (!(c > 0)) {
            throw std::domain_error("QContext: c must be positive");
        }
        QContext ctx;
        ctx.c_ = c;
        ctx.c2_ = c * c;
        ctx.q_ = exp(-ctx.c2_);
        require_q_in_unit_interval(ctx.q_, "QContext");
        return ctx;
    }

    static QContext from_q(Real q) {
        using std::log;
        using std::sqrt;
        require_q_in_unit_interval(q, "QContext");
        QContext ctx;
        ctx.q_ = q;
        ctx.c2_ = -log(q);
        ctx.c_ = sqrt(ctx.c2_);
        return ctx;
    }

    const Real& c() const { return c_; }
    const Real& c2() const { return c2_; }
    const Real& q() const { return q_; }

    /// q^r as a single exponential exp(-c^2 r).
    Real pow(const Rational& r) const {
        using std::exp;
        return exp(-c2_ * Real(r.numerator()) / Real(r.denominator()));
    }
    Real pow(const Real& r) const {
        using std::exp;
        return exp(-c2_ * r);
    }

    /// alpha = (2c^2/pi)^{1/4}, the normalisation of q^{x^2}.
    Real alpha() const {
        using std::sqrt;
        return sqrt(sqrt(Real(2) * c2_ / pi_v<Real>()));
    }

    /// sqrt(pi / (2c^2)) = 1/alpha^2, the overlap of two coincident Gaussians.
    Real overlap_unit() const {
        using std::sqrt;
        return sqrt(pi_v<Real>() / (Real(2) * c2_));
    }

    template <typename Other>
    QContext<Other> convert() const {
        return QContext<Other>::from_c(Other(c_));
    }

    friend bool operator==(const QContext& a, const QContext& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QContext& a, const QContext& b) { return !(a == b); }

private:
    QContext() = default;
    Real c_{};
    Real c2_{};
    Real q_{};
};

/// Where a context comes from: the user supplies either c or q, and contexts at
/// any working precision are rebuilt from that one value.
struct QSpec {
    enum class Source { c, q };
    Source source = Source::c;
    double value = 1.0;

    static QSpec from_c(double c) { return {Source::c, c}; }
    static QSpec from_q(double q) { return {Source::q, q}; }

    template <typename Real>
    QContext<Real> make() const {
        return source == Source::c ? QContext<Real>::from_c(Real(value)) : QContext<Real>::from_q(Real(value));
    }

    double c() const { return static_cast<double>(make<long double>().c()); }
    double q() const { return static_cast<double>(make<long double>().q()); }
};

/// (q;q)_n = (1-q)(1-q^2)...(1-q^n), with (q;q)_0 = 1.
template <typename Real>
Real qpochhammer(const Real& q, int n) {
    require_q_in_unit_interval(q, "qpochhammer");
    if (n < 0) {
        throw std::domain_error("qpochhammer: n must be nonnegative");
    }
    Real prod(1);
    Real qj(1);
    for (int j = 1; j <= n; ++j) {
        qj *= q;
        prod *= Real(1) - qj;
    }
    return prod;
}

/// Rows of the D-recursion D_k^{n+1} = q^k D_k^n + D_{k-1}^n with D_0^0 = 1,
/// D_{-1}^0 = 0. Row n holds the q-binomials C_k^n for k = 0..n.
template <typename Real>
class QBinomialTable {
public:
    QBinomialTable(const Real& q, int nmax) : q_(q) {
        require_q_in_unit_interval(q, "QBinomialTable");
        if (nmax < 0) {
            throw std::domain_error("QBinomialTable: nmax must be nonnegative");
        }
        rows_.push_back({Real(1)});
        extend(nmax);
    }

    const std::vector<Real>& row(int n) {
        extend(n);
        return rows_.at(static_cast<std::size_t>(n));
    }

    Real operator()(int n, int k) {
        if (n < 0 || k < 0 || k > n) {
            return Real(0);
        }
        return row(n)[static_cast<std::size_t>(k)];
    }

private:
    void extend(int nmax) {
        while (static_cast<int>(rows_.size()) <= nmax) {
            const auto& prev = rows_.back();
            const int n = static_cast<int>(prev.size()) - 1;
            std::vector<Real> next(static_cast<std::size_t>(n + 2));
            Real qk(1);
            for (int k = 0; k <= n + 1; ++k) {
                Real v(0);
                if (k <= n) {
                    v += qk * prev[static_cast<std::size_t>(k)];
                }
                if (k >= 1) {
                    v += prev[static_cast<std::size_t>(k - 1)];
                }
                next[static_cast<std::size_t>(k)] = v;
                qk *= q_;
            }
            rows_.push_back(std::move(next));
        }
    }

    Real q_;
    std::vector<std::vector<Real>> rows_;
};

/// q-binomial via the D-recursion; zero outside 0 <= k <= n.
template <typename Real>
Real qbinomial(const Real& q, int n, int k) {
    if (n < 0) {
        throw std::domain_error("qbinomial: n must be nonnegative");
    }
    QBinomialTable<Real> table(q, n);
    return table(n, k);
}

/// (q;q)_n / ((q;q)_k (q;q)_{n-k}); zero outside 0 <= k <= n.
template <typename Real>
Real qbinomial_closed(const Real& q, int n, int k) {
    require_q_in_unit_interval(q, "qbinomial_closed");
    if (n < 0) {
        throw std::domain_error("qbinomial_closed: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return Real(0);
    }
    return qpochhammer(q, n) / (qpochhammer(q, k) * qpochhammer(q, n - k));
}

/// Arik-Coon spectrum (1 - q^n)/(1 - q).
template <typename Real>
Real arik_coon_eigenvalue(const Real& q, int n) {
    using std::pow;
    require_q_in_unit_interval(q, "arik_coon_eigenvalue");
    if (n < 0) {
        throw std::domain_error("arik_coon_eigenvalue: n must be nonnegative");
    }
    Real qn(1);
    for (int j = 0; j < n; ++j) qn *= q;
    return (Real(1) - qn) / (Real(1) - q);
}

/// lambda_{n+1} = q lambda_n + 1 from lambda_0 = 0.
template <typename Real>
Real arik_coon_eigenvalue_recursive(const Real& q, int n) {
    require_q_in_unit_interval(q, "arik_coon_eigenvalue_recursive");
    Real lambda(0);
    for (int j = 0; j < n; ++j) lambda = q * lambda + Real(1);
    return lambda;
}

/// Macfarlane spectrum -q^{-n}(1 - q^n)/(1 - q); nonpositive.
template <typename Real>
Real macfarlane_eigenvalue(const Real& q, int n) {
    require_q_in_unit_interval(q, "macfarlane_eigenvalue");
    if (n < 0) {
        throw std::domain_error("macfarlane_eigenvalue: n must be nonnegative");
    }
    Real qn(1);
    for (int j = 0; j < n; ++j) qn *= q;
    return -(Real(1) - qn) / (qn * (Real(1) - q));
}

/// q lambda_{n+1} = lambda_n - 1 from lambda_0 = 0.
template <typename Real>
Real macfarlane_eigenvalue_recursive(const Real& q, int n) {
    require_q_in_unit_interval(q, "macfarlane_eigenvalue_recursive");
    Real lambda(0);
    for (int j = 0; j < n; ++j) lambda = (lambda - Real(1)) / q;
    return lambda;
}

/// Physicists' Hermite polynomial by H_{n+1} = 2s H_n - 2n H_{n-1}.
template <typename Real>
Real hermite(int n, const Real& s) {
    if (n < 0) {
        throw std::domain_error("hermite: n must be nonnegative");
    }
    Real prev(1);
    if (n == 0) return prev;
    Real cur = Real(2) * s;
    for (int k = 1; k < n; ++k) {
        Real next = Real(2) * s * cur - Real(2 * k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Zeros of H_n located by sign changes on a fine grid and bisection.
std::vector<double> hermite_zeros(int n);

}  // namespace qgauss
