#include "qgauss/weights.hpp"

#include "qgauss/dg.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qgauss {

PeriodicWeight::PeriodicWeight(Modes modes) {
    for (const auto& [m, v] : modes) {
        if (v != cplx(0.0)) modes_.emplace(m, v);
    }
    if (modes_.empty()) throw std::invalid_argument("PeriodicWeight: weight has no nonzero mode");
}

cplx PeriodicWeight::operator()(double x) const {
    const double pi = pi_v<double>();
    cplx s = 0.0;
    for (const auto& [m, v] : modes_) s += v * std::polar(1.0, 4.0 * pi * m * x);
    return s;
}

double PeriodicWeight::bound() const {
    double b = 0.0;
    for (const auto& [m, v] : modes_) b += std::abs(v);
    return b;
}

double mode_kernel(const QContext<double>& ctx, int delta) {
    const double pi = pi_v<double>();
    return ctx.overlap_unit() * std::exp(-2.0 * pi * pi * delta * delta / ctx.c2());
}

Eigen::MatrixXd mode_overlap_matrix(const QContext<double>& ctx, int count) {
    Eigen::MatrixXd k(count, count);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) k(i, j) = mode_kernel(ctx, j - i);
    return k;
}

cplx weighted_daughter_integral(const PeriodicWeight& wa, const PeriodicWeight& wb, const QContext<double>& ctx,
                                int key) {
    const double pi = pi_v<double>();
    cplx s = 0.0;
    for (const auto& [ma, va] : wa.modes()) {
        for (const auto& [mb, vb] : wb.modes()) {
            const int delta = mb - ma;
            // e^{i 4 pi delta sigma} with sigma = key / 4; reduce delta*key mod 2 first
            const long long turns = (static_cast<long long>(delta) * key) % 2;
            const cplx phase = std::polar(1.0, pi * static_cast<double>(turns));
            s += std::conj(va) * vb * phase * mode_kernel(ctx, delta);
        }
    }
    return s;
}

double alpha_w(const PeriodicWeight& w, const QContext<double>& ctx) {
    const double n2 = weighted_daughter_integral(w, w, ctx, 0).real();
    if (!(n2 > 0.0)) throw std::invalid_argument("alpha_w: weight has zero weighted norm");
    return 1.0 / std::sqrt(n2);
}

cplx weighted_inner_cross(const PeriodicWeight& wa, const CChain& f, const PeriodicWeight& wb, const CChain& g) {
    const auto d = product_daughters(f, g);
    std::map<int, cplx> cache;  // the integral only depends on key mod 2
    cplx s = 0.0;
    for (const auto& [key, b] : d.coeffs()) {
        const int parity = ((key % 2) + 2) % 2;
        auto it = cache.find(parity);
        if (it == cache.end()) it = cache.emplace(parity, weighted_daughter_integral(wa, wb, f.context(), parity)).first;
        s += b * it->second;
    }
    return s;
}

cplx weighted_inner(const WeightedChain& f, const WeightedChain& g) {
    if (f.weight != g.weight) {
        throw std::invalid_argument("weighted_inner: chains carry different weights");
    }
    require_same_context(f.chain, g.chain, "weighted_inner");
    return weighted_inner_cross(f.weight, f.chain, g.weight, g.chain);
}

QuadResult weighted_inner_quad(const PeriodicWeight& wa, const CChain& f, const PeriodicWeight& wb, const CChain& g,
                               double tol) {
    auto integrand = [&](double x) { return std::conj(wa(x) * evaluate(f, x)) * (wb(x) * evaluate(g, x)); };
    return integrate_real_line(integrand, product_envelope(f, g, false, wa.bound() * wb.bound()), tol);
}

WeightedChain apply_ladder(LadderKind kind, const WeightedChain& f) {
    return {f.weight, apply_ladder(kind, f.chain)};
}

WeightedChain weighted_eigenfunction(const PeriodicWeight& w, const QContext<double>& ctx, int n) {
    const auto phi = build_phi(ctx, n).convert<cplx>();
    return {w, phi.scaled(cplx(alpha_w(w, ctx) / ctx.alpha()))};
}

WeightFamily orthonormal_weight_family(const QContext<double>& ctx, int count) {
    if (count < 1) throw std::invalid_argument("orthonormal_weight_family: count must be positive");
    const Eigen::MatrixXd k = mode_overlap_matrix(ctx, count);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
    const auto& ev = eig.eigenvalues();
    WeightFamily out;
    out.condition_number = ev.maxCoeff() / ev.minCoeff();
    if (!(ev.minCoeff() > 0.0) || out.condition_number > 1e12) {
        std::ostringstream msg;
        msg << "orthonormal_weight_family: mode overlap matrix numerically singular (condition number "
            << out.condition_number << "); use fewer modes";
        throw std::runtime_error(msg.str());
    }
    const Eigen::MatrixXcd kc = k.cast<cplx>();
    auto dot = [&](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) { return u.dot(kc * v); };
    std::vector<Eigen::VectorXcd> basis;
    for (int m = 0; m < count; ++m) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(count);
        v(m) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= dot(b, v) * b;
        v /= std::sqrt(dot(v, v).real());
        basis.push_back(v);
    }
    for (const auto& b : basis) {
        PeriodicWeight::Modes modes;
        for (int m = 0; m < count; ++m) modes.emplace(m, b(m));
        out.weights.emplace_back(std::move(modes));
    }
    return out;
}

GramReport gamma_family_gram(const QContext<double>& ctx, int nweights, int nmax) {
    if (nweights < 1 || nmax < 0) throw std::invalid_argument("gamma_family_gram: need nweights >= 1, nmax >= 0");
    const auto family = orthonormal_weight_family(ctx, nweights);
    std::vector<CChain> phis;
    for (int m = 0; m <= nmax; ++m) phis.push_back(build_phi(ctx, m).convert<cplx>());
    std::vector<double> scale;
    for (const auto& w : family.weights) scale.push_back(alpha_w(w, ctx) / ctx.alpha());

    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> index;
    for (int n = 0; n < nweights; ++n) {
        for (int m = 0; m <= nmax; ++m) {
            labels.push_back(std::to_string(n) + "," + std::to_string(m));
            index.emplace_back(n, m);
        }
    }
    GramReport report("gamma", labels);
    for (std::size_t r = 0; r < index.size(); ++r) {
        for (std::size_t c = 0; c < index.size(); ++c) {
            const auto [n, m] = index[r];
            const auto [i, j] = index[c];
            const cplx v = scale[n] * scale[i] *
                           weighted_inner_cross(family.weights[n], phis[m], family.weights[i], phis[j]);
            report.set(r, c, v, cplx(r == c ? 1.0 : 0.0));
        }
    }
    std::ostringstream note;
    note << "mode overlap condition number " << family.condition_number;
    report.notes.push_back(note.str());
    return report;
}

GramReport degeneracy_gram(const PeriodicWeight& w, const QContext<double>& ctx, int nmax, bool quadrature) {
    std::vector<WeightedChain> fs;
    std::vector<std::string> labels;
    for (int n = 0; n <= nmax; ++n) {
        fs.push_back(weighted_eigenfunction(w, ctx, n));
        labels.push_back(std::to_string(n));
    }
    GramReport report(quadrature ? "degeneracy-quadrature" : "degeneracy", labels);
    for (int n = 0; n <= nmax; ++n) {
        for (int m = 0; m <= nmax; ++m) {
            const cplx v = quadrature ? weighted_inner_quad(w, fs[n].chain, w, fs[m].chain).value
                                      : weighted_inner(fs[n], fs[m]);
            report.set(n, m, v, cplx(n == m ? 1.0 : 0.0));
        }
    }
    return report;
}

std::vector<PeriodicWeight> random_weights(std::uint64_t seed, int count, int modes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<PeriodicWeight> out;
    for (int i = 0; i < count; ++i) {
        PeriodicWeight::Modes m;
        for (int k = 0; k < modes; ++k) {
            const double re = u(rng);
            const double im = u(rng);
            m.emplace(k, cplx(re, im));
        }
        out.emplace_back(std::move(m));
    }
    return out;
}

}  // namespace qgauss
