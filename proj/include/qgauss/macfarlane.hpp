#pragma once

// Macfarlane eigenfunctions
//   B_n(y) = zeta_n sum_k E_k^n q^{(y-k)^2},
//   zeta_n = alpha q^{n(n-1)/4} / sqrt((q;q)_n),  E_k^n = (-1)^k C_k^n q^{-nk+k/2},
// normalised against the parity-twisted product so that (B_n, B_n) = (-1)^n.

#include "qgauss/chain.hpp"
#include "qgauss/dg.hpp"
#include "qgauss/gram_report.hpp"
#include "qgauss/qnum.hpp"

#include <string>
#include <vector>

namespace qgauss {

template <typename Real>
struct MacCoefficients {
    int n = 0;
    QContext<Real> ctx;
    Real zeta{};
    Real mu{};  // sqrt(-lambda_n), the lowering constant
    std::vector<Real> E;
    /// max_k |E_k(recursion) - E_k(closed form)| / |E_k(closed form)|
    double closed_form_discrepancy = 0.0;
};

/// E_k^n from E_0 = 1 and E_k^n = -E_{k-1}^{n-1} (1-q^n)/(1-q^k) q^{-n-k+3/2}.
template <typename Real>
std::vector<Real> mac_E_recursive(const QContext<Real>& ctx, int n) {
    std::vector<Real> prev{Real(1)};
    for (int m = 1; m <= n; ++m) {
        std::vector<Real> cur(static_cast<std::size_t>(m + 1));
        cur[0] = Real(1);
        const Real top = Real(1) - ctx.pow(Rational(m));
        for (int k = 1; k <= m; ++k) {
            cur[k] = -prev[k - 1] * top / (Real(1) - ctx.pow(Rational(k))) * ctx.pow(Rational(2 * (-m - k) + 3, 2));
        }
        prev = std::move(cur);
    }
    return prev;
}

template <typename Real>
std::vector<Real> mac_E_closed(const QContext<Real>& ctx, int n) {
    QBinomialTable<Real> binom(ctx.q(), n);
    std::vector<Real> E;
    for (int k = 0; k <= n; ++k) {
        const Real sign = (k % 2) ? Real(-1) : Real(1);
        E.push_back(sign * binom(n, k) * ctx.pow(Rational(2 * (-n * k) + k, 2)));
    }
    return E;
}

template <typename Real>
MacCoefficients<Real> mac_coeffs(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "mac_coeffs");
    MacCoefficients<Real> out{n, ctx, {}, {}, mac_E_recursive(ctx, n), 0.0};
    out.zeta = ctx.alpha() * ctx.pow(Rational(n * (n - 1), 4)) / sqrt(qpochhammer(ctx.q(), n));
    out.mu = sqrt(-macfarlane_eigenvalue(ctx.q(), n));
    const auto closed = mac_E_closed(ctx, n);
    for (int k = 0; k <= n; ++k) {
        const double d = to_double(abs_of(out.E[k] - closed[k]) / abs_of(closed[k]));
        out.closed_form_discrepancy = std::max(out.closed_form_discrepancy, d);
    }
    return out;
}

template <typename Real>
GaussianChain<Real> build_Bn(const QContext<Real>& ctx, int n) {
    const auto mc = mac_coeffs(ctx, n);
    std::vector<Real> coeffs;
    for (const auto& e : mc.E) coeffs.push_back(mc.zeta * e);
    return chain_on_integers(ctx, coeffs);
}

/// B_{n+1} = -b^dag B_n / sqrt(-lambda_{n+1}) from B_0 = alpha q^{y^2}.
template <typename Real>
GaussianChain<Real> build_Bn_by_raising(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "build_Bn_by_raising");
    if (n > max_raising_degree) throw std::domain_error("build_Bn_by_raising: degree above the raising cap");
    GaussianChain<Real> b(ctx, {{0, ctx.alpha()}});
    for (int j = 0; j < n; ++j) {
        const Real mu = sqrt(-macfarlane_eigenvalue(ctx.q(), j + 1));
        b = apply_ladder(LadderKind::mac_raise, b).scaled(Real(-1) / mu);
    }
    return b;
}

struct MacLadderResiduals {
    int n = 0;
    double lower_residual = 0.0;  // b B_n = sqrt(-lambda_n) B_{n-1}
    double raise_residual = 0.0;  // b^dag B_n = -sqrt(-lambda_{n+1}) B_{n+1}
};

/// Residuals for B_n given by `build` (closed form or raising), relative to the
/// largest expected coefficient; at n = 0 the lowering target is zero.
template <typename Real, typename Build>
MacLadderResiduals mac_ladder_check_with(const QContext<Real>& ctx, int n, Build&& build) {
    using std::sqrt;
    require_degree(n, "mac_ladder_check");
    const auto b = build(ctx, n);
    MacLadderResiduals out;
    out.n = n;
    const auto lowered = apply_ladder(LadderKind::mac_lower, b);
    if (n == 0) {
        out.lower_residual = to_double(lowered.max_abs_coeff()) / to_double(b.max_abs_coeff());
    } else {
        const auto want = build(ctx, n - 1).scaled(sqrt(-macfarlane_eigenvalue(ctx.q(), n)));
        out.lower_residual = relative_chain_residual(lowered, want);
    }
    const auto raised = apply_ladder(LadderKind::mac_raise, b);
    const auto want = build(ctx, n + 1).scaled(-sqrt(-macfarlane_eigenvalue(ctx.q(), n + 1)));
    out.raise_residual = relative_chain_residual(raised, want);
    return out;
}

template <typename Real>
MacLadderResiduals mac_ladder_check(const QContext<Real>& ctx, int n) {
    return mac_ladder_check_with(ctx, n, [](const QContext<Real>& c, int k) { return build_Bn(c, k); });
}

template <typename Real>
MacLadderResiduals mac_ladder_check_raised(const QContext<Real>& ctx, int n) {
    return mac_ladder_check_with(ctx, n, [](const QContext<Real>& c, int k) { return build_Bn_by_raising(c, k); });
}

/// |b^dag b B_n - lambda_n B_n| relative to max(|lambda_n|, 1) max|B_n|.
template <typename Real>
double mac_eigen_residual(const QContext<Real>& ctx, int n) {
    using std::abs;
    const auto b = build_Bn(ctx, n);
    const Real lambda = macfarlane_eigenvalue(ctx.q(), n);
    const auto lhs = apply_ladder(LadderKind::mac_raise, apply_ladder(LadderKind::mac_lower, b));
    const double scale = std::max(to_double(abs(lambda)), 1.0) * to_double(b.max_abs_coeff());
    return coefficient_abs_residual(lhs, b.scaled(lambda), scale);
}

template <typename Real>
GramReport indefinite_gram_in(const QContext<Real>& ctx, int nmax) {
    std::vector<GaussianChain<Real>> bs;
    std::vector<Real> diag;
    for (int n = 0; n <= nmax; ++n) {
        bs.push_back(build_Bn(ctx, n));
        diag.push_back((n % 2) ? Real(-1) : Real(1));
    }
    return gram_of_chains("mac", bs, diag, InnerKind::parity_twisted);
}

/// Largest sum of |term| in any parity-twisted product (B_n, B_m), n, m <= nmax.
/// Every target is 0 or +-1, so this is the cancellation ratio of the suite.
double mac_dynamic_range(const QSpec& spec, int nmax);

/// Parity-twisted Gram of B_0..B_nmax against diag((-1)^n). Automatic precision
/// sizes the backend from mac_dynamic_range and `tol`.
GramReport indefinite_gram(const QSpec& spec, int nmax, PrecisionRequest request = PrecisionRequest::automatic(),
                           double tol = 1e-8);

/// B_n(s/(sqrt2 c)) / (zeta_n (-c/sqrt2)^n)
double mac_limit_value(int n, double c, double s);

/// Ratio-constancy of B_n(s/(sqrt2 c)) against e^{-s^2/2} H_n(s); each row also
/// carries |lambda_n(c) + n| and the sign of (B_n, B_n).
LimitTable mac_harmonic_limit(int n, const std::vector<double>& c_list, const std::vector<double>& grid,
                              double margin = 0.2);

}  // namespace qgauss
