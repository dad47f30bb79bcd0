#pragma once

// DG polynomials
//   Phi_n(x) = sum_k C_k^n (-1)^k q^{-k/2} q^{(x-k)^2}
//   phi_n    = Phi_n / ||Phi_n||,  ||Phi_n|| = (pi/2c^2)^{1/4} q^{-n/2} sqrt((q;q)_n)
// built in closed form and by Arik-Coon raising, plus the harmonic-limit study
// and the Stieltjes-Wigert substitution u = q^{-2x}.

#include "qgauss/chain.hpp"
#include "qgauss/gram_report.hpp"
#include "qgauss/qnum.hpp"
#include "qgauss/quad.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgauss {

/// Longest chain built by repeated raising.
inline constexpr int max_raising_degree = 64;

template <typename Real>
struct DGCoefficients {
    int n = 0;
    QContext<Real> ctx;
    std::vector<Real> raw;         // coefficient of q^{(x-k)^2} in Phi_n
    std::vector<Real> normalized;  // coefficient of q^{(x-k)^2} in phi_n
};

inline void require_degree(int n, const char* where) {
    if (n < 0) throw std::domain_error(std::string(where) + ": degree must be nonnegative");
}

template <typename Real>
Real dg_norm(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "dg_norm");
    return sqrt(ctx.overlap_unit()) * ctx.pow(Rational(-n, 2)) * sqrt(qpochhammer(ctx.q(), n));
}

template <typename Real>
DGCoefficients<Real> dg_coeffs(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "dg_coeffs");
    QBinomialTable<Real> binom(ctx.q(), n);
    const auto& row = binom.row(n);
    const Real scale = ctx.alpha() / sqrt(qpochhammer(ctx.q(), n));
    DGCoefficients<Real> out{n, ctx, {}, {}};
    for (int k = 0; k <= n; ++k) {
        const Real sign = (k % 2) ? Real(-1) : Real(1);
        out.raw.push_back(sign * row[k] * ctx.pow(Rational(-k, 2)));
        out.normalized.push_back(sign * scale * row[k] * ctx.pow(Rational(n - k, 2)));
    }
    return out;
}

template <typename Real>
GaussianChain<Real> chain_on_integers(const QContext<Real>& ctx, const std::vector<Real>& coeffs) {
    typename GaussianChain<Real>::Map m;
    for (std::size_t k = 0; k < coeffs.size(); ++k) m.emplace(2 * static_cast<int>(k), coeffs[k]);
    return GaussianChain<Real>(ctx, std::move(m));
}

template <typename Real>
GaussianChain<Real> build_Phi(const QContext<Real>& ctx, int n) {
    return chain_on_integers(ctx, dg_coeffs(ctx, n).raw);
}

template <typename Real>
GaussianChain<Real> build_phi(const QContext<Real>& ctx, int n) {
    return chain_on_integers(ctx, dg_coeffs(ctx, n).normalized);
}

/// A_n = sqrt((1-q)^n / (q;q)_n) (a^dag)^n A_0 with A_0 = alpha q^{x^2}.
template <typename Real>
GaussianChain<Real> build_An_by_raising(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "build_An_by_raising");
    if (n > max_raising_degree) throw std::domain_error("build_An_by_raising: degree above the raising cap");
    GaussianChain<Real> a(ctx, {{0, ctx.alpha()}});
    Real scale(1);
    for (int j = 1; j <= n; ++j) {
        a = apply_ladder(LadderKind::arik_raise, a);
        scale *= sqrt((Real(1) - ctx.q()) / (Real(1) - ctx.pow(Rational(j))));
    }
    return a.scaled(scale);
}

/// Coefficient-space residuals, each relative to the largest coefficient of the
/// expected chain.
struct LadderResiduals {
    int n = 0;
    double lower_residual = 0.0;
    double raise_residual = 0.0;
};

template <typename Scalar>
double relative_chain_residual(const GaussianChain<Scalar>& got, const GaussianChain<Scalar>& want) {
    const double scale = to_double(want.max_abs_coeff());
    return coefficient_abs_residual(got, want, scale > 0.0 ? scale : 1.0);
}

/// a A_n = sqrt(lambda_n) A_{n-1} and a^dag A_n = sqrt(lambda_{n+1}) A_{n+1}.
/// At n = 0 the lowering target is the zero chain, measured against |A_0|.
template <typename Real>
LadderResiduals ladder_check(const QContext<Real>& ctx, int n) {
    using std::sqrt;
    require_degree(n, "ladder_check");
    const auto phi = build_phi(ctx, n);
    LadderResiduals out;
    out.n = n;
    const auto lowered = apply_ladder(LadderKind::arik_lower, phi);
    if (n == 0) {
        out.lower_residual = to_double(lowered.max_abs_coeff()) / to_double(phi.max_abs_coeff());
    } else {
        const auto want = build_phi(ctx, n - 1).scaled(sqrt(arik_coon_eigenvalue(ctx.q(), n)));
        out.lower_residual = relative_chain_residual(lowered, want);
    }
    const auto raised = apply_ladder(LadderKind::arik_raise, phi);
    const auto want = build_phi(ctx, n + 1).scaled(sqrt(arik_coon_eigenvalue(ctx.q(), n + 1)));
    out.raise_residual = relative_chain_residual(raised, want);
    return out;
}

template <typename Real>
GramReport gram_of_chains(const std::string& title, const std::vector<GaussianChain<Real>>& chains,
                          const std::vector<Real>& diagonal_target, InnerKind kind) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < chains.size(); ++i) labels.push_back(std::to_string(i));
    GramReport report(title, labels);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        for (std::size_t j = 0; j < chains.size(); ++j) {
            const Real v = inner(chains[i], chains[j], kind);
            report.set(i, j, v, i == j ? diagonal_target[i] : Real(0));
        }
    }
    return report;
}

template <typename Real>
GramReport dg_gram_in(const QContext<Real>& ctx, int nmax) {
    std::vector<GaussianChain<Real>> phis;
    for (int n = 0; n <= nmax; ++n) phis.push_back(build_phi(ctx, n));
    return gram_of_chains("dg", phis, std::vector<Real>(phis.size(), Real(1)), InnerKind::standard);
}

/// Gram matrix of phi_0..phi_nmax against the identity. Automatic precision
/// keeps binary64 up to degree 20 and moves to 40 digits beyond.
GramReport dg_gram(const QSpec& spec, int nmax, PrecisionRequest request = PrecisionRequest::automatic());

/// Matrix of sum_k d_k^{nm}, the daughter coefficients of phi_n^* phi_m over
/// alpha^2, against the identity.
template <typename Real>
GramReport dg_sum_rule_in(const QContext<Real>& ctx, int nmax) {
    std::vector<GaussianChain<Real>> phis;
    std::vector<std::string> labels;
    for (int n = 0; n <= nmax; ++n) {
        phis.push_back(build_phi(ctx, n));
        labels.push_back(std::to_string(n));
    }
    const Real a2 = ctx.alpha() * ctx.alpha();
    GramReport report("dg sum rule", labels);
    for (std::size_t i = 0; i < phis.size(); ++i)
        for (std::size_t j = 0; j < phis.size(); ++j)
            report.set(i, j, product_daughters(phis[i], phis[j]).coefficient_sum() / a2, Real(i == j ? 1 : 0));
    return report;
}

/// Largest sum_k |d_k^{nm}| / alpha^2 over n, m <= nmax.
double dg_sum_rule_range(const QSpec& spec, int nmax);

/// The daughter sum rule with the backend sized from dg_sum_rule_range and tol.
GramReport dg_sum_rule(const QSpec& spec, int nmax, PrecisionRequest request = PrecisionRequest::automatic(),
                       double tol = 1e-12);

// ---------------------------------------------------------------------------
// Harmonic-oscillator limit

struct LimitRow {
    double c = 0.0;
    double dev = 0.0;       // (max r - min r) / |mean r| over the used grid points
    double constant = 0.0;  // mean r
    int used = 0;
    int excluded = 0;       // grid points within the margin of a Hermite zero
    double eigenvalue_gap = 0.0;  // |lambda_n(c) + n| (Macfarlane only)
    int parity_sign = 0;          // sign of (B_n, B_n) (Macfarlane only)
};

struct LimitTable {
    std::string family;
    int n = 0;
    double margin = 0.2;
    /// Deviations below this are rounding noise and count as converged.
    double floor = 1e-12;
    std::vector<LimitRow> rows;

    /// dev decreases strictly along the rows, or has already reached the floor.
    bool monotone() const;
    /// dev at row b over dev at row a; empty when dev at row a is at the floor.
    std::optional<double> rate(std::size_t a, std::size_t b) const;
};

std::vector<double> default_limit_grid();

/// Phi_n(s/(sqrt2 c)) / (-c/sqrt2)^n
double dg_limit_value(int n, double c, double s);

/// Ratio r_c(s) = dg_limit_value(n, c, s) / [e^{-s^2/2} H_n(s)].
LimitTable harmonic_limit_scan(int n, const std::vector<double>& c_list, const std::vector<double>& grid,
                               double margin = 0.2);

/// Shared protocol: `scaled(s)` is the family member on the s axis at this c.
template <typename F>
LimitRow limit_row(int n, double c, const std::vector<double>& grid, double margin, F&& scaled) {
    const auto zeros = hermite_zeros(n);
    LimitRow row;
    row.c = c;
    double lo = 0.0, hi = 0.0, sum = 0.0;
    for (double s : grid) {
        if (s < -4.0 || s > 4.0) throw std::domain_error("harmonic limit: grid must lie in [-4, 4]");
        bool near = false;
        for (double z : zeros) near = near || std::abs(s - z) < margin;
        if (near) {
            ++row.excluded;
            continue;
        }
        const double r = scaled(s) / (std::exp(-0.5 * s * s) * hermite(n, s));
        if (row.used == 0) lo = hi = r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        sum += r;
        ++row.used;
    }
    if (row.used == 0) throw std::domain_error("harmonic limit: every grid point is near a Hermite zero");
    row.constant = sum / row.used;
    row.dev = (hi - lo) / std::abs(row.constant);
    return row;
}

// ---------------------------------------------------------------------------
// Stieltjes-Wigert connection

/// P_n(u; s) = sum_k C_k^n (-1)^k q^{(k+s)^2 - k/2} u^k
template <typename Real>
struct SWPolynomial {
    int n = 0;
    Real s{};
    QContext<Real> ctx;
    std::vector<Real> coeffs;

    Real operator()(const Real& u) const {
        Real v(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * u + *it;
        return v;
    }

    /// W(u) = exp(-(ln u)^2 / (-2 ln q)) u^{2s-1}
    Real weight(const Real& u) const {
        using std::exp;
        using std::log;
        using std::pow;
        const Real lu = log(u);
        return exp(-lu * lu / (Real(-2) * log(ctx.q()))) * pow(u, Real(2) * s - Real(1));
    }

    /// exp(-(ln u)^2 / (-4 ln q)) u^s P_n(u; s) at u = q^{-2x}; equals Phi_n(x - s).
    Real u_form(const Real& x) const {
        using std::exp;
        using std::log;
        using std::pow;
        const Real u = pow(ctx.q(), Real(-2) * x);
        const Real lu = log(u);
        return exp(-lu * lu / (Real(-4) * log(ctx.q()))) * pow(u, s) * (*this)(u);
    }
};

template <typename Real>
SWPolynomial<Real> stieltjes_wigert(const QContext<Real>& ctx, int n, const Real& s) {
    require_degree(n, "stieltjes_wigert");
    QBinomialTable<Real> binom(ctx.q(), n);
    SWPolynomial<Real> p{n, s, ctx, {}};
    for (int k = 0; k <= n; ++k) {
        const Real sign = (k % 2) ? Real(-1) : Real(1);
        const Real ks = Real(k) + s;
        p.coeffs.push_back(sign * binom(n, k) * ctx.pow(ks * ks - Real(k) / Real(2)));
    }
    return p;
}

/// Phi_n(x - s) evaluated directly from the chain.
double shifted_Phi(const QContext<double>& ctx, int n, double s, double x);

struct SWPointwise {
    double max_rel = 0.0;
    int used = 0;
    int excluded = 0;
};

/// max |u_form(x) - Phi_n(x-s)| / |Phi_n(x-s)| over `xs`; points where
/// |Phi_n(x-s)| < zero_margin * max|Phi_n(x-s)| are skipped.
SWPointwise sw_pointwise(const QContext<double>& ctx, int n, double s, const std::vector<double>& xs,
                         double zero_margin = 1e-3);

enum class SWMeasure {
    du,  // int_0^inf W P_n P_m du
    dx,  // the same integrand with du replaced by dx = du / (2c^2 u)
};

/// int W(u) P_n(u;s) P_m(u;s) over u > 0, evaluated by the Simpson oracle in
/// the variable x with u = q^{-2x}.
QuadResult sw_inner(const QContext<double>& ctx, int n, int m, double s, SWMeasure measure, double tol = 1e-10);

}  // namespace qgauss
