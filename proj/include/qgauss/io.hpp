#pragma once

#include "qgauss/chain.hpp"
#include "qgauss/gram_report.hpp"

#include <json.hpp>

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace qgauss {

inline constexpr const char* schema_version = "qgauss/1";

/// 17 significant digits, lowercase scientific, locale independent.
std::string format_double(double v);

/// RFC 4180 table: header row, then data rows; cells are quoted when needed.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    /// Inserts a leading column holding the same value on every row.
    void prepend_constant(const std::string& name, const std::string& value);
    void write(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& cell);

/// {c, q, entries: [[t, re, im], ...]}
nlohmann::json chain_to_json(const GaussianChain<std::complex<double>>& f);
nlohmann::json chain_to_json(const GaussianChain<double>& f);
GaussianChain<std::complex<double>> chain_from_json(const nlohmann::json& j);

nlohmann::json gram_to_json(const GramReport& report, double tol);
CsvTable gram_to_csv(const GramReport& report);

}  // namespace qgauss
