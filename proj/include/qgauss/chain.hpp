#pragma once

// Finite Gaussian chains  f(x) = sum_mu a_mu q^{(x - mu)^2}  with centres on the
// half-integer lattice. Centres are stored as exact integers t = 2 mu; only the
// coefficients are floating point. The ladder operators of both oscillators
// close on this lattice, so every operator application is exact up to the
// rounding of the coefficient updates.

#include "qgauss/precision.hpp"
#include "qgauss/qnum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgauss {

/// Converts a real to a twice-value, rejecting anything off the half-integer lattice.
inline int twice_of(double v, const char* what) {
    const double t = 2.0 * v;
    const double r = std::round(t);
    if (!std::isfinite(t) || std::abs(t - r) > 1e-12 || std::abs(r) > 1e9) {
        throw std::invalid_argument(std::string(what) + ": value is not on the half-integer lattice");
    }
    return static_cast<int>(r);
}

template <typename Scalar>
class GaussianChain {
public:
    using Real = real_t<Scalar>;
    using Map = std::map<int, Scalar>;

    explicit GaussianChain(QContext<Real> ctx) : ctx_(std::move(ctx)) {}

    GaussianChain(QContext<Real> ctx, Map coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
        drop_zeros();
    }

    GaussianChain(QContext<Real> ctx, std::initializer_list<std::pair<const int, Scalar>> init)
        : GaussianChain(std::move(ctx), Map(init)) {}

    const QContext<Real>& context() const { return ctx_; }
    /// twice-centre -> coefficient
    const Map& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }

    Scalar coeff(int twice_center) const {
        auto it = coeffs_.find(twice_center);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    int min_twice_center() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    int max_twice_center() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    Real max_abs_coeff() const {
        Real m(0);
        for (const auto& [t, a] : coeffs_) {
            const Real v = abs_of(a);
            if (v > m) m = v;
        }
        return m;
    }

    GaussianChain scaled(const Scalar& s) const {
        Map out;
        for (const auto& [t, a] : coeffs_) out.emplace(t, a * s);
        return GaussianChain(ctx_, std::move(out));
    }

    template <typename Other>
    GaussianChain<Other> convert() const {
        typename GaussianChain<Other>::Map out;
        for (const auto& [t, a] : coeffs_) out.emplace(t, scalar_cast<Other>(a));
        return GaussianChain<Other>(ctx_.template convert<real_t<Other>>(), std::move(out));
    }

    friend bool operator==(const GaussianChain& a, const GaussianChain& b) {
        return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
    }

private:
    void drop_zeros() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            it = (it->second == Scalar(0)) ? coeffs_.erase(it) : std::next(it);
        }
    }

    QContext<Real> ctx_;
    Map coeffs_;
};

template <typename Scalar>
void require_same_context(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g, const char* where) {
    if (f.context() != g.context()) {
        throw std::invalid_argument(std::string(where) + ": chains belong to different q contexts");
    }
}

/// Sums weighted contributions per centre and drops results that are an
/// exact cancellation, i.e. below `prune_tol` times the largest contribution
/// to that centre. Centres whose terms merely differ in scale are untouched.
template <typename Scalar>
class ChainAccumulator {
public:
    using Real = real_t<Scalar>;

    void add(int t, const Scalar& v) {
        auto& slot = slots_[t];
        slot.first += v;
        const Real m = abs_of(v);
        if (m > slot.second) slot.second = m;
    }

    void add(const GaussianChain<Scalar>& f, const Scalar& weight) {
        for (const auto& [t, a] : f.coeffs()) add(t, a * weight);
    }

    GaussianChain<Scalar> finish(const QContext<Real>& ctx, double prune_tol) const {
        typename GaussianChain<Scalar>::Map out;
        for (const auto& [t, slot] : slots_) {
            if (abs_of(slot.first) > Real(prune_tol) * slot.second) out.emplace(t, slot.first);
        }
        return GaussianChain<Scalar>(ctx, std::move(out));
    }

    /// max over centres of |sum| / (largest contribution), 0 for an empty sum.
    double relative_residual() const {
        double worst = 0.0;
        for (const auto& [t, slot] : slots_) {
            if (slot.second > Real(0)) worst = std::max(worst, to_double(abs_of(slot.first) / slot.second));
        }
        return worst;
    }

private:
    std::map<int, std::pair<Scalar, Real>> slots_;
};

template <typename Scalar>
GaussianChain<Scalar> operator+(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g) {
    require_same_context(f, g, "chain +");
    ChainAccumulator<Scalar> acc;
    acc.add(f, Scalar(1));
    acc.add(g, Scalar(1));
    return acc.finish(f.context(), default_prune_tol<real_t<Scalar>>());
}

template <typename Scalar>
GaussianChain<Scalar> operator-(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g) {
    require_same_context(f, g, "chain -");
    ChainAccumulator<Scalar> acc;
    acc.add(f, Scalar(1));
    acc.add(g, Scalar(-1));
    return acc.finish(f.context(), default_prune_tol<real_t<Scalar>>());
}

template <typename Scalar>
GaussianChain<Scalar> operator*(const Scalar& s, const GaussianChain<Scalar>& f) {
    return f.scaled(s);
}

/// q^{(x - t/2)^2}
template <typename Scalar = double>
GaussianChain<Scalar> make_gaussian(const QContext<real_t<Scalar>>& ctx, int twice_center) {
    return GaussianChain<Scalar>(ctx, {{twice_center, Scalar(1)}});
}

/// T^s f(x) = f(x + s) with s = twice_shift / 2: every centre moves to mu - s.
template <typename Scalar>
GaussianChain<Scalar> shift_twice(const GaussianChain<Scalar>& f, int twice_shift) {
    typename GaussianChain<Scalar>::Map out;
    for (const auto& [t, a] : f.coeffs()) out.emplace(t - twice_shift, a);
    return GaussianChain<Scalar>(f.context(), std::move(out));
}

template <typename Scalar>
GaussianChain<Scalar> shift(const GaussianChain<Scalar>& f, double s) {
    return shift_twice(f, twice_of(s, "shift"));
}

/// Multiplication by q^{a x + b}. Completing the square,
///   q^{ax+b} q^{(x-mu)^2} = q^{a mu - a^2/4 + b} q^{(x - (mu - a/2))^2},
/// with the exponent kept as an exact rational until the single exponentiation.
template <typename Scalar>
GaussianChain<Scalar> mul_qlinear(const GaussianChain<Scalar>& f, int a, const Rational& b) {
    typename GaussianChain<Scalar>::Map out;
    for (const auto& [t, coef] : f.coeffs()) {
        const Rational r = Rational(a * static_cast<std::int64_t>(t), 2) - Rational(a * a, 4) + b;
        out.emplace(t - a, coef * Scalar(f.context().pow(r)));
    }
    return GaussianChain<Scalar>(f.context(), std::move(out));
}

template <typename Scalar>
GaussianChain<Scalar> mul_qlinear(const GaussianChain<Scalar>& f, double a, const Rational& b) {
    const double r = std::round(a);
    if (!std::isfinite(a) || r != a) {
        throw std::invalid_argument("mul_qlinear: slope a must be an integer to stay on the lattice");
    }
    return mul_qlinear(f, static_cast<int>(r), b);
}

enum class LadderKind { arik_lower, arik_raise, mac_lower, mac_raise };

inline const char* to_string(LadderKind k) {
    switch (k) {
        case LadderKind::arik_lower: return "arik_lower";
        case LadderKind::arik_raise: return "arik_raise";
        case LadderKind::mac_lower: return "mac_lower";
        case LadderKind::mac_raise: return "mac_raise";
    }
    return "?";
}

/// One of a, a^dagger (Arik-Coon) or b, b^dagger (Macfarlane) bound to a context.
template <typename Real>
struct LadderOperator {
    LadderKind kind;
    QContext<Real> ctx;
};

/// Applies a ladder operator exactly on the lattice:
///   a       = (1-q)^{-1/2} T^{1/2} [q^{x+1/4} - T^{1/2}]
///   a^dag   = (1-q)^{-1/2} [q^{x+1/4} - T^{-1/2}] T^{-1/2}
///   b       = (q^{2y+1/2} - q^{y+1/4} T^{1/2}) / sqrt(q(1-q))
///   b^dag   = (q^{-2y+1/2} - T^{1/2} q^{-y+1/4}) / sqrt(q(1-q))
template <typename Scalar>
GaussianChain<Scalar> apply_ladder(LadderKind kind, const GaussianChain<Scalar>& f,
                                   double prune_tol = default_prune_tol<real_t<Scalar>>()) {
    using Real = real_t<Scalar>;
    using std::sqrt;
    const auto& ctx = f.context();
    const Rational quarter(1, 4);
    const Rational half(1, 2);
    ChainAccumulator<Scalar> acc;
    Real prefactor(1);
    switch (kind) {
        case LadderKind::arik_lower: {
            acc.add(shift_twice(mul_qlinear(f, 1, quarter), 1), Scalar(1));
            acc.add(shift_twice(shift_twice(f, 1), 1), Scalar(-1));
            prefactor = Real(1) / sqrt(Real(1) - ctx.q());
            break;
        }
        case LadderKind::arik_raise: {
            const auto h = shift_twice(f, -1);
            acc.add(mul_qlinear(h, 1, quarter), Scalar(1));
            acc.add(shift_twice(h, -1), Scalar(-1));
            prefactor = Real(1) / sqrt(Real(1) - ctx.q());
            break;
        }
        case LadderKind::mac_lower: {
            acc.add(mul_qlinear(f, 2, half), Scalar(1));
            acc.add(mul_qlinear(shift_twice(f, 1), 1, quarter), Scalar(-1));
            prefactor = Real(1) / sqrt(ctx.q() * (Real(1) - ctx.q()));
            break;
        }
        case LadderKind::mac_raise: {
            acc.add(mul_qlinear(f, -2, half), Scalar(1));
            acc.add(shift_twice(mul_qlinear(f, -1, quarter), 1), Scalar(-1));
            prefactor = Real(1) / sqrt(ctx.q() * (Real(1) - ctx.q()));
            break;
        }
    }
    return acc.finish(ctx, prune_tol).scaled(Scalar(prefactor));
}

template <typename Scalar>
GaussianChain<Scalar> apply_ladder(const LadderOperator<real_t<Scalar>>& op, const GaussianChain<Scalar>& f,
                                   double prune_tol = default_prune_tol<real_t<Scalar>>()) {
    if (op.ctx != f.context()) {
        throw std::invalid_argument("apply_ladder: operator and chain use different q contexts");
    }
    return apply_ladder(op.kind, f, prune_tol);
}

/// Applies a sequence of operators right to left (the last element acts first).
template <typename Scalar>
GaussianChain<Scalar> apply_word(std::initializer_list<LadderKind> word, GaussianChain<Scalar> f) {
    std::vector<LadderKind> ops(word);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) f = apply_ladder(*it, f);
    return f;
}

/// Parity image with conjugation: conj(f(-x)).
template <typename Scalar>
GaussianChain<Scalar> reflect(const GaussianChain<Scalar>& f) {
    typename GaussianChain<Scalar>::Map out;
    for (const auto& [t, a] : f.coeffs()) out.emplace(-t, conj_of(a));
    return GaussianChain<Scalar>(f.context(), std::move(out));
}

enum class InnerKind { standard, parity_twisted };

/// (f, g) = int f*(x) g(x) dx            (standard)
/// (f, g) = int f*(-x) g(x) dx           (parity_twisted)
/// evaluated from the exact overlap  int q^{(x-mu)^2} q^{(x-nu)^2} dx
///   = sqrt(pi/(2c^2)) q^{(mu-nu)^2/2}.
/// The kernel and the sum are evaluated in accum_t<Real>.
template <typename Scalar>
Scalar inner(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g,
             InnerKind kind = InnerKind::standard) {
    using Real = real_t<Scalar>;
    using Acc = accum_t<Real>;
    using AccScalar = std::conditional_t<is_complex<Scalar>::value, std::complex<Acc>, Acc>;
    using std::exp;
    using std::sqrt;
    require_same_context(f, g, "inner");
    const Acc c2 = static_cast<Acc>(f.context().c2());
    const Acc unit = sqrt(pi_v<Acc>() / (Acc(2) * c2));

    std::map<int, Acc> kernel;  // keyed by squared twice-distance
    auto kern = [&](int d) -> const Acc& {
        const int d2 = d * d;
        auto it = kernel.find(d2);
        if (it == kernel.end()) it = kernel.emplace(d2, exp(-c2 * Acc(d2) / Acc(8))).first;
        return it->second;
    };

    AccScalar sum(0);
    for (const auto& [tf, af] : f.coeffs()) {
        const int t_left = kind == InnerKind::parity_twisted ? -tf : tf;
        const AccScalar left = scalar_cast<AccScalar>(conj_of(af));
        for (const auto& [tg, ag] : g.coeffs()) {
            sum += left * scalar_cast<AccScalar>(ag) * kern(t_left - tg);
        }
    }
    sum *= unit;
    return scalar_cast<Scalar>(sum);
}

/// Chain of daughter Gaussians  sum_k b_k q^{2(x - k/4)^2}. The key k is four
/// times the daughter centre, which is the sum of the two parent twice-centres;
/// for parents on integer centres k/2 is the conventional daughter index.
template <typename Scalar>
class DaughterChain {
public:
    using Real = real_t<Scalar>;
    using Map = std::map<int, Scalar>;

    DaughterChain(QContext<Real> ctx, Map coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {}

    const QContext<Real>& context() const { return ctx_; }
    /// quarter-lattice key (4 x centre) -> coefficient
    const Map& coeffs() const { return coeffs_; }

    Scalar coefficient_sum() const {
        using Acc = std::conditional_t<is_complex<Scalar>::value, std::complex<accum_t<Real>>, accum_t<Real>>;
        Acc s(0);
        for (const auto& [k, b] : coeffs_) s += scalar_cast<Acc>(b);
        return scalar_cast<Scalar>(s);
    }

    /// Every daughter integrates to sqrt(pi/(2c^2)) = 1/alpha^2.
    Scalar integral() const { return coefficient_sum() * Scalar(ctx_.overlap_unit()); }

    Scalar evaluate(const Real& x) const {
        using std::exp;
        Scalar s(0);
        for (const auto& [k, b] : coeffs_) {
            const Real d = x - Real(k) / Real(4);
            s += b * Scalar(exp(Real(-2) * ctx_.c2() * d * d));
        }
        return s;
    }

private:
    QContext<Real> ctx_;
    Map coeffs_;
};

/// Pointwise product conj(f) g as daughters:
///   q^{(x-mu)^2} q^{(x-nu)^2} = q^{(mu-nu)^2/2} q^{2(x - (mu+nu)/2)^2}.
template <typename Scalar>
DaughterChain<Scalar> product_daughters(const GaussianChain<Scalar>& f, const GaussianChain<Scalar>& g) {
    require_same_context(f, g, "product_daughters");
    using Acc = std::conditional_t<is_complex<Scalar>::value, std::complex<accum_t<real_t<Scalar>>>,
                                   accum_t<real_t<Scalar>>>;
    const auto& ctx = f.context();
    std::map<int, Acc> acc;
    for (const auto& [tf, af] : f.coeffs()) {
        for (const auto& [tg, ag] : g.coeffs()) {
            const int d = tf - tg;
            acc[tf + tg] += scalar_cast<Acc>(conj_of(af)) * scalar_cast<Acc>(ag) *
                            static_cast<accum_t<real_t<Scalar>>>(ctx.pow(Rational(d * d, 8)));
        }
    }
    typename DaughterChain<Scalar>::Map out;
    for (const auto& [k, v] : acc) out.emplace(k, scalar_cast<Scalar>(v));
    return DaughterChain<Scalar>(ctx, std::move(out));
}

/// sum_mu a_mu q^{(x-mu)^2} by direct summation.
template <typename Scalar>
Scalar evaluate(const GaussianChain<Scalar>& f, const real_t<Scalar>& x) {
    using Real = real_t<Scalar>;
    using std::exp;
    Scalar s(0);
    for (const auto& [t, a] : f.coeffs()) {
        const Real d = x - Real(t) / Real(2);
        s += a * Scalar(exp(-f.context().c2() * d * d));
    }
    return s;
}

/// prefactor * exp(-(pi/c)^2 theta^2) * sum_h gamma_h e^{i pi h theta}, h being a
/// twice-harmonic (integer centres give even h).
template <typename Real>
struct TrigGaussian {
    QContext<Real> ctx;
    Real prefactor;
    std::map<int, std::complex<Real>> trig_coeffs;

    std::complex<Real> evaluate(const Real& theta) const {
        using std::cos;
        using std::exp;
        using std::sin;
        const Real pc = pi_v<Real>() / ctx.c();
        std::complex<Real> s(0);
        for (const auto& [h, g] : trig_coeffs) {
            const Real ph = pi_v<Real>() * Real(h) * theta;
            s += g * std::complex<Real>(cos(ph), sin(ph));
        }
        return s * (prefactor * exp(-pc * pc * theta * theta));
    }
};

template <typename Scalar>
std::complex<real_t<Scalar>> to_complex(const Scalar& a) {
    if constexpr (is_complex<Scalar>::value) {
        return a;
    } else {
        return std::complex<Scalar>(a, Scalar(0));
    }
}

/// Fourier transform with the convention F(theta) = int e^{i 2 pi theta x} f(x) dx:
///   q^{(x-mu)^2} -> sqrt(pi/c^2) exp(-(pi/c)^2 theta^2) e^{i 2 pi mu theta}.
template <typename Scalar>
TrigGaussian<real_t<Scalar>> fourier(const GaussianChain<Scalar>& f) {
    using Real = real_t<Scalar>;
    using std::sqrt;
    TrigGaussian<Real> out{f.context(), sqrt(pi_v<Real>() / f.context().c2()), {}};
    for (const auto& [t, a] : f.coeffs()) out.trig_coeffs.emplace(t, to_complex(a));
    return out;
}

/// int F*(theta) G(theta) d theta in closed form, term by term:
///   int exp(-2(pi/c)^2 theta^2) e^{i pi (h'-h) theta} = (c / sqrt(2 pi)) exp(-c^2 (h'-h)^2 / 8).
template <typename Real>
std::complex<Real> trig_inner(const TrigGaussian<Real>& f, const TrigGaussian<Real>& g) {
    using std::exp;
    using std::sqrt;
    if (f.ctx != g.ctx) throw std::invalid_argument("trig_inner: different q contexts");
    const Real pi = pi_v<Real>();
    const Real a = Real(2) * pi * pi / f.ctx.c2();
    const Real root = sqrt(pi / a);
    std::complex<Real> s(0);
    for (const auto& [h1, g1] : f.trig_coeffs) {
        for (const auto& [h2, g2] : g.trig_coeffs) {
            const Real k = pi * Real(h2 - h1);
            s += std::conj(g1) * g2 * (root * exp(-k * k / (Real(4) * a)));
        }
    }
    return s * (f.prefactor * g.prefactor);
}

/// max over centres of |a_t - b_t| / max(|a_t|, |b_t|); 0 where both vanish.
template <typename Scalar>
double coefficient_residual(const GaussianChain<Scalar>& a, const GaussianChain<Scalar>& b) {
    double worst = 0.0;
    auto visit = [&](int t) {
        const auto x = a.coeff(t);
        const auto y = b.coeff(t);
        const double den = to_double(std::max(abs_of(x), abs_of(y)));
        if (den == 0.0) return;
        worst = std::max(worst, to_double(abs_of(x - y)) / den);
    };
    for (const auto& [t, v] : a.coeffs()) visit(t);
    for (const auto& [t, v] : b.coeffs()) visit(t);
    return worst;
}

/// max over centres of |a_t - b_t| / scale.
template <typename Scalar>
double coefficient_abs_residual(const GaussianChain<Scalar>& a, const GaussianChain<Scalar>& b, double scale = 1.0) {
    double worst = 0.0;
    auto visit = [&](int t) { worst = std::max(worst, to_double(abs_of(a.coeff(t) - b.coeff(t))) / scale); };
    for (const auto& [t, v] : a.coeffs()) visit(t);
    for (const auto& [t, v] : b.coeffs()) visit(t);
    return worst;
}

}  // namespace qgauss
