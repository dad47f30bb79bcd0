#include "qgauss/dg.hpp"

#include <sstream>

#include <cmath>
#include <stdexcept>

namespace qgauss {

GramReport dg_gram(const QSpec& spec, int nmax, PrecisionRequest request) {
    require_degree(nmax, "dg_gram");
    if (request.mode == PrecisionRequest::Mode::automatic && nmax > 20) {
        request = PrecisionRequest::with_digits(40);
    }
    PrecisionChoice choice;
    GramReport report;
    if (request.mode == PrecisionRequest::Mode::digits) {
        ScopedDigits guard(request.value);
        report = dg_gram_in(spec.make<HighReal>(), nmax);
        choice.high = true;
        choice.digits = guard.digits();
        choice.note = "dg gram at " + std::to_string(choice.digits) + " digits";
    } else {
        report = dg_gram_in(spec.make<double>(), nmax);
        choice.note = nmax > 20 ? "dg gram in binary64 above degree 20 (cancellation-limited)"
                                : "dg gram in binary64";
    }
    report.precision = choice;
    return report;
}

double dg_sum_rule_range(const QSpec& spec, int nmax) {
    require_degree(nmax, "dg_sum_rule");
    const auto ctx = spec.make<long double>();
    std::vector<GaussianChain<long double>> phis;
    for (int n = 0; n <= nmax; ++n) phis.push_back(build_phi(ctx, n));
    const long double a2 = ctx.alpha() * ctx.alpha();
    long double worst = 1;
    for (const auto& f : phis)
        for (const auto& g : phis) {
            long double s = 0;
            for (const auto& [tf, af] : f.coeffs())
                for (const auto& [tg, ag] : g.coeffs()) {
                    const int d = tf - tg;
                    s += std::abs(af * ag) * ctx.pow(Rational(d * d, 8));
                }
            worst = std::max(worst, s / a2);
        }
    return static_cast<double>(worst);
}

GramReport dg_sum_rule(const QSpec& spec, int nmax, PrecisionRequest request, double tol) {
    const double range = dg_sum_rule_range(spec, nmax);
    const PrecisionChoice choice = choose_precision(request, range, tol);
    GramReport report;
    if (choice.high) {
        ScopedDigits guard(choice.digits);
        report = dg_sum_rule_in(spec.make<HighReal>(), nmax);
    } else {
        report = dg_sum_rule_in(spec.make<double>(), nmax);
    }
    report.precision = choice;
    std::ostringstream budget;
    budget << "cancellation budget: largest sum_k |d_k| / alpha^2 " << range;
    report.notes.push_back(budget.str());
    return report;
}

bool LimitTable::monotone() const {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double prev = rows[i - 1].dev, cur = rows[i].dev;
        if (cur <= floor) continue;
        if (!(cur < prev)) return false;
    }
    return true;
}

std::optional<double> LimitTable::rate(std::size_t a, std::size_t b) const {
    const double da = rows.at(a).dev, db = rows.at(b).dev;
    if (da <= floor) return std::nullopt;
    return (db <= floor ? 0.0 : db) / da;
}

std::vector<double> default_limit_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(-3.0 + 0.05 * i);
    return grid;
}

namespace {
void require_decreasing(const std::vector<double>& c_list) {
    if (c_list.empty()) throw std::invalid_argument("harmonic limit: empty c list");
    for (std::size_t i = 0; i < c_list.size(); ++i) {
        if (!(c_list[i] > 0.0)) throw std::domain_error("harmonic limit: c must be positive");
        if (i > 0 && !(c_list[i] < c_list[i - 1])) {
            throw std::invalid_argument("harmonic limit: c list must be decreasing");
        }
    }
}
}  // namespace

double dg_limit_value(int n, double c, double s) {
    const auto ctx = QContext<double>::from_c(c);
    return evaluate(build_Phi(ctx, n), s / (std::sqrt(2.0) * c)) / std::pow(-c / std::sqrt(2.0), n);
}

LimitTable harmonic_limit_scan(int n, const std::vector<double>& c_list, const std::vector<double>& grid,
                               double margin) {
    require_degree(n, "harmonic_limit_scan");
    require_decreasing(c_list);
    LimitTable table;
    table.family = "dg";
    table.n = n;
    table.margin = margin;
    for (double c : c_list) {
        table.rows.push_back(limit_row(n, c, grid, margin, [&](double s) { return dg_limit_value(n, c, s); }));
    }
    return table;
}

double shifted_Phi(const QContext<double>& ctx, int n, double s, double x) {
    return evaluate(build_Phi(ctx, n), x - s);
}

SWPointwise sw_pointwise(const QContext<double>& ctx, int n, double s, const std::vector<double>& xs,
                         double zero_margin) {
    const auto p = stieltjes_wigert(ctx, n, s);
    const auto Phi = build_Phi(ctx, n);
    double peak = 0.0;
    for (double x : xs) peak = std::max(peak, std::abs(evaluate(Phi, x - s)));
    SWPointwise out;
    for (double x : xs) {
        const double want = evaluate(Phi, x - s);
        if (std::abs(want) < zero_margin * peak) {
            ++out.excluded;
            continue;
        }
        out.max_rel = std::max(out.max_rel, std::abs(p.u_form(x) - want) / std::abs(want));
        ++out.used;
    }
    return out;
}

QuadResult sw_inner(const QContext<double>& ctx, int n, int m, double s, SWMeasure measure, double tol) {
    const auto pn = stieltjes_wigert(ctx, n, s);
    const auto pm = stieltjes_wigert(ctx, m, s);
    const double c2 = ctx.c2();
    auto integrand = [&](double x) -> std::complex<double> {
        const double u = std::pow(ctx.q(), -2.0 * x);
        const double base = pn.weight(u) * pn(u) * pm(u);
        return measure == SWMeasure::du ? base * 2.0 * c2 * u : base;
    };
    // The integrand is Phi_n(x-s) Phi_m(x-s) times 2c^2 (du) or q^{2x} (dx).
    double sn = 0.0, sm = 0.0;
    for (double v : dg_coeffs(ctx, n).raw) sn += std::abs(v);
    for (double v : dg_coeffs(ctx, m).raw) sm += std::abs(v);
    GaussianEnvelope env;
    env.lo = s;
    env.hi = s + std::max(n, m);
    const double reach = std::max(std::abs(env.lo), std::abs(env.hi));
    if (measure == SWMeasure::du) {
        env.bound = sn * sm * 2.0 * c2;
        env.decay = 2.0 * c2;
    } else {
        // q^{2x} q^{2d^2} <= e^{c^2 (1 + 2 reach)} q^{d^2} beyond the hull
        env.bound = sn * sm * std::exp(c2 * (1.0 + 2.0 * reach));
        env.decay = c2;
    }
    return integrate_real_line(integrand, env, tol);
}

}  // namespace qgauss
