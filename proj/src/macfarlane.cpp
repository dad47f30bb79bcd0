#include "qgauss/macfarlane.hpp"

#include <cmath>
#include <sstream>

namespace qgauss {

double mac_dynamic_range(const QSpec& spec, int nmax) {
    using L = long double;
    const auto ctx = spec.make<L>();
    std::vector<GaussianChain<L>> bs;
    for (int n = 0; n <= nmax; ++n) bs.push_back(build_Bn(ctx, n));
    L worst = 1;
    for (const auto& f : bs) {
        for (const auto& g : bs) {
            L s = 0;
            for (const auto& [tf, af] : f.coeffs()) {
                for (const auto& [tg, ag] : g.coeffs()) {
                    const L d = L(-tf - tg);
                    s += std::abs(af * ag) * std::exp(-ctx.c2() * d * d / 8);
                }
            }
            worst = std::max(worst, s * ctx.overlap_unit());
        }
    }
    return static_cast<double>(worst);
}

GramReport indefinite_gram(const QSpec& spec, int nmax, PrecisionRequest request, double tol) {
    require_degree(nmax, "indefinite_gram");
    const double range = mac_dynamic_range(spec, nmax);
    PrecisionChoice choice = choose_precision(request, range, tol);
    GramReport report;
    if (choice.high) {
        ScopedDigits guard(choice.digits);
        report = indefinite_gram_in(spec.make<HighReal>(), nmax);
    } else {
        report = indefinite_gram_in(spec.make<double>(), nmax);
    }
    report.precision = choice;
    std::ostringstream budget;
    budget << "cancellation budget: largest |term| sum " << range << " against unit targets";
    report.notes.push_back(budget.str());
    report.notes.push_back(std::string("diagonal signs alternate: ") +
                           (report.diagonal_signs_alternate() ? "yes" : "no"));
    return report;
}

double mac_limit_value(int n, double c, double s) {
    const auto ctx = QContext<double>::from_c(c);
    const double scale = mac_coeffs(ctx, n).zeta * std::pow(-c / std::sqrt(2.0), n);
    return evaluate(build_Bn(ctx, n), s / (std::sqrt(2.0) * c)) / scale;
}

LimitTable mac_harmonic_limit(int n, const std::vector<double>& c_list, const std::vector<double>& grid,
                              double margin) {
    require_degree(n, "mac_harmonic_limit");
    LimitTable table;
    table.family = "mac";
    table.n = n;
    table.margin = margin;
    for (std::size_t i = 0; i < c_list.size(); ++i) {
        const double c = c_list[i];
        if (!(c > 0.0)) throw std::domain_error("harmonic limit: c must be positive");
        if (i > 0 && !(c < c_list[i - 1])) throw std::invalid_argument("harmonic limit: c list must be decreasing");
        const auto ctx = QContext<double>::from_c(c);
        const auto B = build_Bn(ctx, n);
        LimitRow row = limit_row(n, c, grid, margin, [&](double s) { return mac_limit_value(n, c, s); });
        row.eigenvalue_gap = std::abs(macfarlane_eigenvalue(ctx.q(), n) + n);
        const double self = inner(B, B, InnerKind::parity_twisted);
        row.parity_sign = self > 0.0 ? 1 : (self < 0.0 ? -1 : 0);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace qgauss
