#pragma once

#include "qgauss/precision.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qgauss {

/// Matrix of inner products against a target, with deviation diagnostics.
/// `residual` holds matrix - target evaluated in the working precision before
/// rounding to double, so deviations far below binary64 resolution survive.
struct GramReport {
    enum class Scale {
        absolute,              // |G - T|
        relative_to_diagonal,  // |G - T|_{ij} / sqrt(|T_ii T_jj|)
    };

    struct Entry {
        std::size_t row = 0;
        std::size_t col = 0;
        double deviation = 0.0;
    };

    std::string title;
    std::vector<std::string> labels;
    std::vector<std::complex<double>> matrix;
    std::vector<std::complex<double>> target;
    std::vector<std::complex<double>> residual;
    Scale scale = Scale::absolute;
    PrecisionChoice precision;
    std::vector<std::string> notes;

    GramReport() = default;
    GramReport(std::string title, std::vector<std::string> labels, Scale scale = Scale::absolute);

    std::size_t dim() const { return labels.size(); }
    std::size_t index(std::size_t row, std::size_t col) const { return row * dim() + col; }

    /// Stores value, target and their difference. The difference is taken in the
    /// caller's scalar type.
    template <typename Scalar>
    void set(std::size_t row, std::size_t col, const Scalar& value, const Scalar& expected) {
        const auto i = index(row, col);
        matrix[i] = to_cdouble(value);
        target[i] = to_cdouble(expected);
        residual[i] = to_cdouble(value - expected);
    }

    std::complex<double> at(std::size_t row, std::size_t col) const { return matrix[index(row, col)]; }

    /// Deviation of one entry under `scale`.
    double deviation(std::size_t row, std::size_t col) const;
    double max_abs_deviation() const;
    double max_rel_deviation() const;
    /// Maximum deviation under `scale`.
    double max_deviation() const;
    Entry worst_entry() const;
    std::vector<Entry> entries_above(double tol) const;

    /// sign(Re G_nn) == (-1)^n for every diagonal entry.
    bool diagonal_signs_alternate() const;
};

}  // namespace qgauss
