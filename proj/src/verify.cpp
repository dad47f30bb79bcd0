#include "qgauss/verify.hpp"

#include "qgauss/circle.hpp"
#include "qgauss/dg.hpp"
#include "qgauss/io.hpp"
#include "qgauss/macfarlane.hpp"
#include "qgauss/quad.hpp"
#include "qgauss/weights.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgauss {

bool SuiteResult::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

void SuiteResult::check(std::string name, double value, double tol, std::string where) {
    Check c{std::move(name), value, tol, 0.0, false, value <= tol, {}};
    if (!c.passed) c.where = std::move(where);
    checks.push_back(std::move(c));
}

void SuiteResult::check_band(std::string name, double value, double lower, double upper, std::string where) {
    Check c{std::move(name), value, upper, lower, true, lower <= value && value <= upper, {}};
    if (!c.passed) c.where = std::move(where);
    checks.push_back(std::move(c));
}

GaussianChain<std::complex<double>> random_chain(std::mt19937_64& rng, const QContext<double>& ctx, int max_terms,
                                                 int span) {
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<int> centre(-span, span);
    std::uniform_real_distribution<double> part(-1.0, 1.0);
    GaussianChain<std::complex<double>>::Map m;
    const int n = count(rng);
    while (static_cast<int>(m.size()) < n) {
        const int t = centre(rng);
        const double re = part(rng);
        const double im = part(rng);
        m[t] = {re, im};
    }
    return {ctx, std::move(m)};
}

CommutatorResiduals commutator_residuals(const GaussianChain<std::complex<double>>& f) {
    using K = LadderKind;
    using C = std::complex<double>;
    const double q = f.context().q();
    auto residual = [&](K first, K second) {
        // first second f - q second first f - f, combined per centre
        ChainAccumulator<C> acc;
        acc.add(apply_ladder(first, apply_ladder(second, f, 0.0), 0.0), C(1));
        acc.add(apply_ladder(second, apply_ladder(first, f, 0.0), 0.0), C(-q));
        acc.add(f, C(-1));
        return acc.relative_residual();
    };
    return {residual(K::arik_lower, K::arik_raise), residual(K::mac_raise, K::mac_lower)};
}

namespace {

using Runner = std::function<SuiteResult(const SuiteConfig&)>;

PrecisionRequest request_of(const SuiteConfig& cfg) { return PrecisionRequest::from_optional(cfg.digits); }

std::string offending(const GramReport& r, double tol) {
    std::ostringstream out;
    int shown = 0;
    for (const auto& e : r.entries_above(tol)) {
        if (shown++) out << ' ';
        if (shown > 20) {
            out << "...";
            break;
        }
        out << '(' << r.labels[e.row] << ';' << r.labels[e.col] << ')';
    }
    return out.str();
}

void gram_check(SuiteResult& res, const std::string& name, const GramReport& r, double tol) {
    res.check(name, r.max_deviation(), tol, offending(r, tol));
    res.details[name] = gram_to_json(r, tol);
}

/// Tracks the worst value over a loop and where it occurred.
struct Worst {
    double value = 0.0;
    std::string where;
    void see(double v, const std::string& at) {
        if (where.empty() || v > value) {
            value = v;
            where = at;
        }
    }
};

SuiteResult suite_dg_gram(const SuiteConfig& cfg) {
    SuiteResult res{"dg-gram", {}, {}};
    const int nmax = cfg.nmax.value_or(12);
    const double tol = cfg.tol.value_or(nmax <= 12 ? 1e-10 : 1e-6);
    gram_check(res, "max |<phi_n,phi_m> - delta|", dg_gram(cfg.spec, nmax, request_of(cfg)), tol);
    return res;
}

SuiteResult suite_mac_gram(const SuiteConfig& cfg) {
    SuiteResult res{"mac-gram", {}, {}};
    const int nmax = cfg.nmax.value_or(10);
    const double tol = cfg.tol.value_or(1e-8);
    const GramReport r = indefinite_gram(cfg.spec, nmax, request_of(cfg), tol);
    gram_check(res, "max |(B_n,B_m) - (-1)^n delta|", r, tol);
    res.check("diagonal sign pattern (-1)^n", r.diagonal_signs_alternate() ? 0.0 : 1.0, 0.0, "diagonal");
    const double budget = mac_dynamic_range(cfg.spec, nmax) *
                          (r.precision.high ? std::pow(10.0, -static_cast<double>(r.precision.digits)) : 0x1p-53);
    res.details["cancellation_budget"] = budget;
    if (budget > tol) {
        std::ostringstream why;
        why << "cancellation budget " << budget << " (largest term sum times unit roundoff of "
            << r.precision.backend() << ") exceeds tolerance " << tol << "; raise --digits";
        res.details["explanation"] = why.str();
    }
    return res;
}

SuiteResult suite_ladders(const SuiteConfig& cfg) {
    SuiteResult res{"ladders", {}, {}};
    const int nmax = cfg.nmax.value_or(10);
    const auto ctx = cfg.spec.make<double>();
    const double tol = cfg.tol.value_or(1e-11);
    Worst a_low, a_up, b_low, b_up, b_low_r, b_up_r, eig, equiv, equiv_b, disc;
    for (int n = 0; n <= nmax; ++n) {
        const std::string at = "n=" + std::to_string(n);
        const auto a = ladder_check(ctx, n);
        a_low.see(a.lower_residual, at);
        a_up.see(a.raise_residual, at);
        const auto b = mac_ladder_check(ctx, n);
        b_low.see(b.lower_residual, at);
        b_up.see(b.raise_residual, at);
        const auto br = mac_ladder_check_raised(ctx, n);
        b_low_r.see(br.lower_residual, at);
        b_up_r.see(br.raise_residual, at);
        if (n <= 8) eig.see(mac_eigen_residual(ctx, n), at);
        equiv.see(coefficient_residual(build_phi(ctx, n), build_An_by_raising(ctx, n)), at);
        equiv_b.see(coefficient_residual(build_Bn(ctx, n), build_Bn_by_raising(ctx, n)), at);
        disc.see(mac_coeffs(ctx, n).closed_form_discrepancy, at);
    }
    res.check("a A_n = sqrt(lambda_n) A_{n-1}", a_low.value, tol, a_low.where);
    res.check("a^dag A_n = sqrt(lambda_{n+1}) A_{n+1}", a_up.value, tol, a_up.where);
    res.check("b B_n = sqrt(-lambda_n) B_{n-1} (closed form)", b_low.value, tol, b_low.where);
    res.check("b^dag B_n = -sqrt(-lambda_{n+1}) B_{n+1} (closed form)", b_up.value, tol, b_up.where);
    res.check("b B_n = sqrt(-lambda_n) B_{n-1} (raised)", b_low_r.value, tol, b_low_r.where);
    res.check("b^dag B_n = -sqrt(-lambda_{n+1}) B_{n+1} (raised)", b_up_r.value, tol, b_up_r.where);
    res.check("b^dag b B_n = lambda_n B_n", eig.value, 1e-10, eig.where);
    res.check("phi_n closed form vs raising", equiv.value, 1e-12, equiv.where);
    res.check("B_n closed form vs raising", equiv_b.value, 1e-11, equiv_b.where);
    res.check("E_k recursion vs closed form", disc.value, 1e-12, disc.where);
    return res;
}

SuiteResult suite_commutators(const SuiteConfig& cfg) {
    SuiteResult res{"commutators", {}, {}};
    const auto ctx = cfg.spec.make<double>();
    const double tol = cfg.tol.value_or(1e-13);
    std::mt19937_64 rng(cfg.seed);
    Worst arik, mac;
    nlohmann::json per = nlohmann::json::array();
    for (int i = 0; i < 20; ++i) {
        const auto f = random_chain(rng, ctx);
        const auto r = commutator_residuals(f);
        arik.see(r.arik, "chain " + std::to_string(i));
        mac.see(r.mac, "chain " + std::to_string(i));
        per.push_back({{"terms", f.size()}, {"arik", r.arik}, {"mac", r.mac}});
    }
    res.check("(a a^dag - q a^dag a - 1) f", arik.value, tol, arik.where);
    res.check("(b^dag b - q b b^dag - 1) f", mac.value, tol, mac.where);
    res.details["chains"] = per;
    return res;
}

SuiteResult suite_circle(const SuiteConfig& cfg, CircleFamily family) {
    SuiteResult res{family == CircleFamily::dg ? "circle-dg" : "circle-mac", {}, {}};
    const int nmax = cfg.nmax.value_or(family == CircleFamily::dg ? 8 : 5);
    const double tol = cfg.tol.value_or(family == CircleFamily::dg ? 1e-9 : 1e-8);
    CircleOptions opt;
    opt.points = cfg.points;
    opt.conjugate_first = cfg.conjugate_first;
    opt.precision = request_of(cfg);
    opt.tol = tol;
    const GramReport r = circle_gram(family, cfg.spec, nmax, opt);
    gram_check(res, "max relative deviation from the circle target", r, tol);
    opt.points = 2 * cfg.points;
    const GramReport r2 = circle_gram(family, cfg.spec, nmax, opt);
    Worst delta;
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            const double norm = std::sqrt(std::abs(r.target[r.index(i, i)]) * std::abs(r.target[r.index(j, j)]));
            delta.see(std::abs(r.at(i, j) - r2.at(i, j)) / norm, "(" + r.labels[i] + ";" + r.labels[j] + ")");
        }
    }
    res.check("point-doubling change", delta.value, 1e-12, delta.where);
    return res;
}

SuiteResult suite_poisson(const SuiteConfig& cfg) {
    SuiteResult res{"poisson", {}, {}};
    const double tol = cfg.tol.value_or(1e-12);
    const auto rep = poisson_check(cfg.spec.c(), default_theta_grid());
    std::string where;
    for (std::size_t i = 0; i < rep.theta.size(); ++i) {
        if (std::abs(rep.gaussian_side[i] - rep.theta_side[i]) > tol) where += format_double(rep.theta[i]) + " ";
    }
    res.check("max |periodised Gaussian - theta_3 side|", rep.max_deviation, tol, where);
    res.details["theta"] = rep.theta;
    res.details["gaussian_side"] = rep.gaussian_side;
    res.details["theta_side"] = rep.theta_side;
    return res;
}

nlohmann::json limit_json(const LimitTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"c", r.c}, {"dev", r.dev}, {"constant", r.constant}, {"used", r.used},
                        {"excluded", r.excluded}, {"eigenvalue_gap", r.eigenvalue_gap},
                        {"parity_sign", r.parity_sign}});
    }
    return {{"family", t.family}, {"n", t.n}, {"margin", t.margin}, {"floor", t.floor}, {"rows", rows}};
}

SuiteResult suite_limits(const SuiteConfig& cfg) {
    SuiteResult res{"limits", {}, {}};
    const int nmax = cfg.nmax.value_or(4);
    const std::vector<double> cs{0.2, 0.1, 0.05};
    const auto grid = default_limit_grid();
    nlohmann::json tables = nlohmann::json::array();
    for (int n = 0; n <= nmax; ++n) {
        for (const auto& t : {harmonic_limit_scan(n, cs, grid), mac_harmonic_limit(n, cs, grid)}) {
            const std::string tag = t.family + " n=" + std::to_string(n);
            res.check(tag + " dev(c) decreasing", t.monotone() ? 0.0 : 1.0, 0.0, tag);
            if (const auto rate = t.rate(1, 2)) {
                res.check_band(tag + " dev(0.05)/dev(0.1)", *rate, 0.15, 0.40, tag);
            }
            if (t.family == "mac") {
                res.check(tag + " |lambda_n + n| at c=0.05", t.rows.back().eigenvalue_gap, 0.05, tag);
                const int want = n % 2 ? -1 : 1;
                res.check(tag + " sign of (B_n,B_n) is (-1)^n", t.rows.back().parity_sign == want ? 0.0 : 1.0, 0.0,
                          tag);
            }
            tables.push_back(limit_json(t));
        }
    }
    res.details["tables"] = tables;
    return res;
}

SuiteResult suite_degeneracy(const SuiteConfig& cfg) {
    SuiteResult res{"degeneracy", {}, {}};
    const int nmax = cfg.nmax.value_or(8);
    const double tol = cfg.tol.value_or(1e-9);
    const auto ctx = cfg.spec.make<double>();
    std::vector<std::pair<std::string, PeriodicWeight>> ws{{"1+0.3cos(4 pi x)", PeriodicWeight::cosine(1.0, 0.3)}};
    const auto random = random_weights(cfg.seed, 3);
    for (std::size_t i = 0; i < random.size(); ++i) ws.emplace_back("random " + std::to_string(i), random[i]);
    for (const auto& [name, w] : ws) {
        gram_check(res, "A_n Gram, w = " + name, degeneracy_gram(w, ctx, nmax), tol);
        gram_check(res, "A_n Gram by quadrature, w = " + name, degeneracy_gram(w, ctx, nmax, true), tol);
    }
    // int |w|^2 q^{2(x-k/2)^2} dx by quadrature against the analytic k = 0 value
    const auto& w = ws.front().second;
    const double base = weighted_daughter_integral(w, w, ctx, 0).real();
    Worst shift;
    for (int k = -3; k <= 3; ++k) {
        GaussianEnvelope env;
        env.lo = env.hi = 0.5 * k;
        env.bound = w.bound() * w.bound();
        env.decay = 2.0 * ctx.c2();
        auto integrand = [&](double x) {
            const double d = x - 0.5 * k;
            return std::norm(w(x)) * std::exp(-2.0 * ctx.c2() * d * d) * cplx(1.0);
        };
        const double v = integrate_real_line(integrand, env, 1e-14).value.real();
        shift.see(std::abs(v - base) / base, "k=" + std::to_string(k));
    }
    res.check("weighted daughter integral independent of k", shift.value, 1e-12, shift.where);
    return res;
}

SuiteResult suite_gamma(const SuiteConfig& cfg) {
    SuiteResult res{"gamma", {}, {}};
    const int nmax = cfg.nmax.value_or(6);
    const double tol = cfg.tol.value_or(1e-8);
    const auto ctx = cfg.spec.make<double>();
    gram_check(res, "Gamma family Gram", gamma_family_gram(ctx, cfg.nweights, nmax), tol);
    const auto family = orthonormal_weight_family(ctx, std::max(cfg.nweights, 4));
    Worst ortho;
    for (std::size_t i = 0; i < family.weights.size(); ++i) {
        for (std::size_t j = 0; j < family.weights.size(); ++j) {
            const cplx v = weighted_daughter_integral(family.weights[i], family.weights[j], ctx, 0);
            ortho.see(std::abs(v - cplx(i == j ? 1.0 : 0.0)),
                      "(" + std::to_string(i) + ";" + std::to_string(j) + ")");
        }
    }
    res.check("int w_n* w_m q^{2x^2} dx = delta", ortho.value, 1e-10, ortho.where);
    res.details["condition_number"] = family.condition_number;
    return res;
}

template <typename Real>
Worst daughter_integral_worst(const QContext<Real>& ctx, int nmax) {
    Worst w;
    for (int n = 0; n <= nmax; ++n) {
        const auto fn = build_phi(ctx, n);
        for (int m = 0; m <= nmax; ++m) {
            const auto fm = build_phi(ctx, m);
            const auto at = "(" + std::to_string(n) + ";" + std::to_string(m) + ")";
            w.see(to_double(abs_of(Real(product_daughters(fn, fm).integral() - inner(fn, fm)))), at);
        }
    }
    return w;
}

SuiteResult suite_sumrule(const SuiteConfig& cfg) {
    SuiteResult res{"sumrule", {}, {}};
    const int nmax = cfg.nmax.value_or(10);
    const double tol = cfg.tol.value_or(1e-12);
    const auto report = dg_sum_rule(cfg.spec, nmax, PrecisionRequest::from_optional(cfg.digits), tol);
    gram_check(res, "|sum_k d_k^{nm} - delta_nm|", report, tol);
    // integral consistency at the backend the sum rule needed
    const Worst integral = report.precision.high ? [&] {
        ScopedDigits guard(report.precision.digits);
        return daughter_integral_worst(cfg.spec.make<HighReal>(), nmax);
    }()
                                                 : daughter_integral_worst(cfg.spec.make<double>(), nmax);
    res.check("daughter integral vs overlap", integral.value, 1e-13, integral.where);
    return res;
}

SuiteResult suite_sw(const SuiteConfig& cfg) {
    SuiteResult res{"sw", {}, {}};
    const int nmax = cfg.nmax.value_or(6);
    const double tol = cfg.tol.value_or(1e-6);
    const auto ctx = cfg.spec.make<double>();
    Worst point, ortho;
    nlohmann::json du = nlohmann::json::array(), dx = nlohmann::json::array();
    for (int n = 0; n <= nmax; ++n) {
        std::vector<double> xs;
        for (int i = 0; i <= 40 * (n + 4); ++i) xs.push_back(-2.0 + 0.025 * i);
        point.see(sw_pointwise(ctx, n, cfg.s, xs).max_rel, "n=" + std::to_string(n));
        nlohmann::json row_du = nlohmann::json::array(), row_dx = nlohmann::json::array();
        for (int m = 0; m <= nmax; ++m) {
            const double v = sw_inner(ctx, n, m, cfg.s, SWMeasure::du).value.real();
            row_du.push_back(v);
            row_dx.push_back(sw_inner(ctx, n, m, cfg.s, SWMeasure::dx).value.real());
            if (n != m) ortho.see(std::abs(v), "(" + std::to_string(n) + ";" + std::to_string(m) + ")");
        }
        du.push_back(row_du);
        dx.push_back(row_dx);
    }
    res.check("u-form vs Phi_n(x-s), relative", point.value, 1e-11, point.where);
    res.check("|int W P_n P_m du|, n != m", ortho.value, tol, ortho.where);
    res.details["du_matrix"] = du;
    res.details["dx_matrix_diagnostic"] = dx;
    return res;
}

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> r{
        {"dg-gram", suite_dg_gram},
        {"mac-gram", suite_mac_gram},
        {"ladders", suite_ladders},
        {"commutators", suite_commutators},
        {"circle-dg", [](const SuiteConfig& c) { return suite_circle(c, CircleFamily::dg); }},
        {"circle-mac", [](const SuiteConfig& c) { return suite_circle(c, CircleFamily::mac); }},
        {"poisson", suite_poisson},
        {"limits", suite_limits},
        {"degeneracy", suite_degeneracy},
        {"gamma", suite_gamma},
        {"sumrule", suite_sumrule},
        {"sw", suite_sw},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"dg-gram", "mac-gram", "ladders",    "commutators",
                                                "circle-dg", "circle-mac", "poisson", "limits",
                                                "degeneracy", "gamma",     "sumrule", "sw"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    return it->second(config);
}

nlohmann::json to_json(const SuiteResult& result, const SuiteConfig& config) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : result.checks) {
        nlohmann::json j{{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"passed", c.passed}};
        if (c.banded) j["lower"] = c.lower;
        if (!c.passed) j["where"] = c.where;
        checks.push_back(j);
    }
    return {{"schema", schema_version},
            {"suite", result.suite},
            {"c", config.spec.c()},
            {"q", config.spec.q()},
            {"seed", config.seed},
            {"passed", result.passed()},
            {"checks", checks},
            {"details", result.details}};
}

}  // namespace qgauss
