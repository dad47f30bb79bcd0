#include "qgauss/gram_report.hpp"

#include <algorithm>
#include <cmath>

namespace qgauss {

GramReport::GramReport(std::string t, std::vector<std::string> l, Scale s)
    : title(std::move(t)), labels(std::move(l)), scale(s) {
    const auto n = labels.size() * labels.size();
    matrix.assign(n, {0.0, 0.0});
    target.assign(n, {0.0, 0.0});
    residual.assign(n, {0.0, 0.0});
}

double GramReport::deviation(std::size_t row, std::size_t col) const {
    const double abs_dev = std::abs(residual[index(row, col)]);
    if (scale == Scale::absolute) return abs_dev;
    const double norm = std::sqrt(std::abs(target[index(row, row)]) * std::abs(target[index(col, col)]));
    return norm > 0.0 ? abs_dev / norm : abs_dev;
}

double GramReport::max_abs_deviation() const {
    double m = 0.0;
    for (const auto& r : residual) m = std::max(m, std::abs(r));
    return m;
}

double GramReport::max_rel_deviation() const {
    const Scale saved = scale;
    auto* self = const_cast<GramReport*>(this);
    self->scale = Scale::relative_to_diagonal;
    double m = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m = std::max(m, deviation(i, j));
    self->scale = saved;
    return m;
}

double GramReport::max_deviation() const { return worst_entry().deviation; }

GramReport::Entry GramReport::worst_entry() const {
    Entry worst;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            const double d = deviation(i, j);
            if (d > worst.deviation || (i == 0 && j == 0)) worst = {i, j, d};
        }
    }
    return worst;
}

std::vector<GramReport::Entry> GramReport::entries_above(double tol) const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            const double d = deviation(i, j);
            if (!(d <= tol)) out.push_back({i, j, d});
        }
    }
    return out;
}

bool GramReport::diagonal_signs_alternate() const {
    for (std::size_t n = 0; n < dim(); ++n) {
        const double v = matrix[index(n, n)].real();
        const bool want_positive = (n % 2 == 0);
        if (want_positive ? !(v > 0.0) : !(v < 0.0)) return false;
    }
    return true;
}

}  // namespace qgauss
