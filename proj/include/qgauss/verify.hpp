#pragma once

// Named verification suites shared by `qgauss verify` and the Python module.
// Each suite records a list of checks (value against tolerance) and a JSON
// block of details, including the indices of any offending entries.

#include "qgauss/chain.hpp"
#include "qgauss/qnum.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qgauss {

struct SuiteConfig {
    QSpec spec = QSpec::from_q(0.5);
    std::optional<int> nmax;  // suite default when empty
    std::optional<unsigned> digits;
    int points = 512;
    bool conjugate_first = false;
    std::uint64_t seed = 20240611;
    double s = 0.5;
    int nweights = 3;
    std::optional<double> tol;  // overrides the suite tolerance
};

struct Check {
    std::string name;
    double value = 0.0;
    double tol = 0.0;     // upper bound
    double lower = 0.0;   // lower bound, used only when `banded`
    bool banded = false;
    bool passed = false;
    std::string where;  // offending indices, empty when passed
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    nlohmann::json details = nlohmann::json::object();

    bool passed() const;
    /// value <= tol
    void check(std::string name, double value, double tol, std::string where = {});
    /// lower <= value <= upper
    void check_band(std::string name, double value, double lower, double upper, std::string where = {});
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

nlohmann::json to_json(const SuiteResult& result, const SuiteConfig& config);

/// Complex chain with 1..max_terms terms at twice-centres in [-span, span] and
/// coefficients with parts uniform in [-1, 1].
GaussianChain<std::complex<double>> random_chain(std::mt19937_64& rng, const QContext<double>& ctx,
                                                 int max_terms = 8, int span = 8);

/// max over centres of |(lhs - f)_t| relative to the largest term entering that
/// centre, for the two commutators
///   a a^dag - q a^dag a   and   b^dag b - q b b^dag.
struct CommutatorResiduals {
    double arik = 0.0;
    double mac = 0.0;
};
CommutatorResiduals commutator_residuals(const GaussianChain<std::complex<double>>& f);

}  // namespace qgauss
