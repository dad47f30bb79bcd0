#pragma once

// Period-1/2 weights w(x) = sum_m c_m e^{i 4 pi m x}. Multiplying an
// eigenfunction by such a w leaves every ladder relation intact, and the
// weighted overlaps reduce to daughter sums against one weighted Gaussian
// integral.

#include "qgauss/chain.hpp"
#include "qgauss/gram_report.hpp"
#include "qgauss/qnum.hpp"
#include "qgauss/quad.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace qgauss {

using cplx = std::complex<double>;
using CChain = GaussianChain<cplx>;

class PeriodicWeight {
public:
    using Modes = std::map<int, cplx>;

    explicit PeriodicWeight(Modes modes);

    static PeriodicWeight constant(cplx value = 1.0) { return PeriodicWeight({{0, value}}); }
    /// a + b cos(4 pi x)
    static PeriodicWeight cosine(double a, double b) { return PeriodicWeight({{0, a}, {-1, b / 2}, {1, b / 2}}); }

    const Modes& modes() const { return modes_; }
    cplx operator()(double x) const;
    /// sup |w| bound from the mode magnitudes.
    double bound() const;

    friend bool operator==(const PeriodicWeight& a, const PeriodicWeight& b) { return a.modes_ == b.modes_; }
    friend bool operator!=(const PeriodicWeight& a, const PeriodicWeight& b) { return !(a == b); }

private:
    Modes modes_;
};

/// int e^{i 4 pi delta x} q^{2x^2} dx = sqrt(pi/2c^2) exp(-2 pi^2 delta^2 / c^2)
double mode_kernel(const QContext<double>& ctx, int delta);

/// K_{ij} = mode_kernel(j - i) over modes 0..count-1.
Eigen::MatrixXd mode_overlap_matrix(const QContext<double>& ctx, int count);

/// int conj(w_a(x)) w_b(x) q^{2(x - sigma)^2} dx with sigma = key/4.
cplx weighted_daughter_integral(const PeriodicWeight& wa, const PeriodicWeight& wb, const QContext<double>& ctx,
                                int key);

/// (int |w|^2 q^{2x^2} dx)^{-1/2}
double alpha_w(const PeriodicWeight& w, const QContext<double>& ctx);

struct WeightedChain {
    PeriodicWeight weight;
    CChain chain;

    cplx operator()(double x) const { return weight(x) * evaluate(chain, x); }
};

/// int conj(w_a f) (w_b g) dx via product_daughters.
cplx weighted_inner_cross(const PeriodicWeight& wa, const CChain& f, const PeriodicWeight& wb, const CChain& g);

/// Same-weight inner product; throws std::invalid_argument when weights differ.
cplx weighted_inner(const WeightedChain& f, const WeightedChain& g);

/// Simpson oracle for weighted_inner_cross.
QuadResult weighted_inner_quad(const PeriodicWeight& wa, const CChain& f, const PeriodicWeight& wb, const CChain& g,
                               double tol = 1e-11);

/// The ladder acts on the chain only: half-integer shifts leave w unchanged.
WeightedChain apply_ladder(LadderKind kind, const WeightedChain& f);

/// A_n = (alpha_w / alpha) w phi_n, normalised for any w.
WeightedChain weighted_eigenfunction(const PeriodicWeight& w, const QContext<double>& ctx, int n);

struct WeightFamily {
    std::vector<PeriodicWeight> weights;
    double condition_number = 1.0;
};

/// Modified Gram-Schmidt (two passes) of e^{i 4 pi m x}, m = 0..count-1, under
/// the q^{2x^2} weight; throws std::runtime_error when the overlap matrix is
/// numerically singular.
WeightFamily orthonormal_weight_family(const QContext<double>& ctx, int count);

/// Gram of Gamma_{nm} = (alpha(w_n)/alpha) w_n phi_m over n < nweights, m <= nmax,
/// row label "n,m" with m fastest.
GramReport gamma_family_gram(const QContext<double>& ctx, int nweights, int nmax);

/// Gram of weighted_eigenfunction(w, ., n), n <= nmax. With `quadrature` the
/// entries come from the Simpson oracle instead of the daughter sums.
GramReport degeneracy_gram(const PeriodicWeight& w, const QContext<double>& ctx, int nmax, bool quadrature = false);

/// Weights on modes 0..modes-1 with real and imaginary parts of every
/// coefficient uniform in [-1, 1], drawn from mt19937_64(seed).
std::vector<PeriodicWeight> random_weights(std::uint64_t seed, int count, int modes = 3);

}  // namespace qgauss
