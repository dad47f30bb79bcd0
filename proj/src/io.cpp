#include "qgauss/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qgauss {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width differs from header");
    rows_.push_back(std::move(cells));
}

void CsvTable::prepend_constant(const std::string& name, const std::string& value) {
    header_.insert(header_.begin(), name);
    for (auto& r : rows_) r.insert(r.begin(), value);
}

void CsvTable::write(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(cells[i]);
        }
        out << "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

namespace {
template <typename Scalar>
nlohmann::json chain_json(const GaussianChain<Scalar>& f) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [t, a] : f.coeffs()) {
        const auto z = to_cdouble(a);
        entries.push_back({t, z.real(), z.imag()});
    }
    return {{"c", f.context().c()}, {"q", f.context().q()}, {"entries", entries}};
}
}  // namespace

nlohmann::json chain_to_json(const GaussianChain<std::complex<double>>& f) { return chain_json(f); }
nlohmann::json chain_to_json(const GaussianChain<double>& f) { return chain_json(f); }

GaussianChain<std::complex<double>> chain_from_json(const nlohmann::json& j) {
    const auto ctx = QContext<double>::from_c(j.at("c").get<double>());
    GaussianChain<std::complex<double>>::Map m;
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("chain_from_json: entries are [t, re, im]");
        m[e[0].get<int>()] += std::complex<double>(e[1].get<double>(), e[2].get<double>());
    }
    return {ctx, std::move(m)};
}

nlohmann::json gram_to_json(const GramReport& report, double tol) {
    auto matrix_json = [&](const std::vector<std::complex<double>>& v) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < report.dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < report.dim(); ++k) {
                const auto z = v[report.index(i, k)];
                row.push_back({z.real(), z.imag()});
            }
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json offending = nlohmann::json::array();
    for (const auto& e : report.entries_above(tol)) {
        offending.push_back({{"row", report.labels[e.row]}, {"col", report.labels[e.col]}, {"deviation", e.deviation}});
    }
    const auto worst = report.worst_entry();
    return {
        {"title", report.title},
        {"labels", report.labels},
        {"scale", report.scale == GramReport::Scale::absolute ? "absolute" : "relative_to_diagonal"},
        {"precision", {{"backend", report.precision.backend()}, {"digits", report.precision.digits},
                       {"note", report.precision.note}}},
        {"max_abs_deviation", report.max_abs_deviation()},
        {"max_deviation", report.max_deviation()},
        {"worst", {{"row", report.dim() ? report.labels[worst.row] : ""},
                   {"col", report.dim() ? report.labels[worst.col] : ""}}},
        {"tolerance", tol},
        {"offending", offending},
        {"notes", report.notes},
        {"matrix", matrix_json(report.matrix)},
        {"target", matrix_json(report.target)},
    };
}

CsvTable gram_to_csv(const GramReport& report) {
    CsvTable table({"row", "col", "re", "im", "target_re", "target_im", "deviation"});
    for (std::size_t i = 0; i < report.dim(); ++i) {
        for (std::size_t k = 0; k < report.dim(); ++k) {
            const auto z = report.matrix[report.index(i, k)];
            const auto t = report.target[report.index(i, k)];
            table.add_row({report.labels[i], report.labels[k], format_double(z.real()), format_double(z.imag()),
                           format_double(t.real()), format_double(t.imag()), format_double(report.deviation(i, k))});
        }
    }
    return table;
}

}  // namespace qgauss
