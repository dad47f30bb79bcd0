#include "qgauss/precision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgauss {

namespace {
std::recursive_mutex& digits_mutex() {
    static std::recursive_mutex m;
    return m;
}
}  // namespace

ScopedDigits::ScopedDigits(unsigned digits)
    : lock_(digits_mutex()), digits_(std::max(digits, 2u)), saved_(HighReal::default_precision()) {
    HighReal::default_precision(digits_);
}

ScopedDigits::~ScopedDigits() { HighReal::default_precision(saved_); }

std::string PrecisionChoice::backend() const {
    return high ? "mpfr:" + std::to_string(digits) : std::string("binary64");
}

PrecisionChoice choose_precision(PrecisionRequest request, double dynamic_range, double tol) {
    constexpr double u64 = 0x1p-53;
    // Each coefficient already carries a few ulps from the q-binomials and the
    // exponentials, so the term-sum bound is padded before comparing.
    constexpr double safety = 16.0;
    const double range = safety * std::max(dynamic_range, 1.0);
    PrecisionChoice choice;
    std::ostringstream note;
    note << "dynamic range " << range << ", tolerance " << tol;

    switch (request.mode) {
        case PrecisionRequest::Mode::binary64:
            choice.high = false;
            choice.digits = 16;
            note << "; binary64 requested, budget " << range * u64;
            break;
        case PrecisionRequest::Mode::digits:
            choice.high = true;
            choice.digits = std::max(request.value, 2u);
            note << "; " << choice.digits << " digits requested, budget "
                 << range * std::pow(10.0, -static_cast<double>(choice.digits));
            break;
        case PrecisionRequest::Mode::automatic:
            if (range * u64 < tol) {
                choice.high = false;
                choice.digits = 16;
                note << "; binary64 sufficient (budget " << range * u64 << ")";
            } else {
                const double need = std::log10(range / tol);
                choice.high = true;
                choice.digits = std::max(20u, static_cast<unsigned>(std::ceil(need)) + 4u);
                note << "; escalated to " << choice.digits << " digits (binary64 budget "
                     << range * u64 << " exceeds tolerance)";
            }
            break;
    }
    choice.note = note.str();
    return choice;
}

}  // namespace qgauss
