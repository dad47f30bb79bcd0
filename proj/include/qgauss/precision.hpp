#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>

namespace qgauss {

/// Configurable-precision real. Precision (decimal digits) is set at runtime
/// through ScopedDigits; expression templates are off so the type composes with
/// std::complex and plain generic code.
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
struct real_of {
    using type = T;
};
template <typename T>
struct real_of<std::complex<T>> {
    using type = T;
};
template <typename T>
using real_t = typename real_of<T>::type;

/// Accumulation type for reductions. binary64 data is reduced in x87 extended
/// precision; every other type reduces in itself.
template <typename Real>
struct accum_of {
    using type = Real;
};
template <>
struct accum_of<double> {
    using type = long double;
};
template <typename Real>
using accum_t = typename accum_of<Real>::type;

template <typename Scalar>
Scalar conj_of(const Scalar& v) {
    if constexpr (is_complex<Scalar>::value) {
        return Scalar(v.real(), -v.imag());
    } else {
        return v;
    }
}

/// |v| without relying on std::abs(std::complex<T>) for non-builtin T.
template <typename Scalar>
real_t<Scalar> abs_of(const Scalar& v) {
    using std::abs;
    using std::sqrt;
    if constexpr (is_complex<Scalar>::value) {
        const auto re = v.real();
        const auto im = v.imag();
        return sqrt(re * re + im * im);
    } else {
        return abs(v);
    }
}

template <typename T>
double to_double(const T& v) {
    return static_cast<double>(v);
}
template <typename T>
std::complex<double> to_cdouble(const T& v) {
    if constexpr (is_complex<T>::value) {
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    } else {
        return {static_cast<double>(v), 0.0};
    }
}

/// Converts between scalar types, real ↔ complex included (imaginary part must
/// be dropped explicitly by the caller).
template <typename To, typename From>
To scalar_cast(const From& v) {
    using ToReal = real_t<To>;
    if constexpr (is_complex<From>::value) {
        static_assert(is_complex<To>::value, "narrowing complex to real");
        return To(static_cast<ToReal>(v.real()), static_cast<ToReal>(v.imag()));
    } else {
        return To(static_cast<ToReal>(v));
    }
}

template <typename Real>
Real pi_v() {
    if constexpr (std::is_same_v<Real, HighReal>) {
        HighReal r;
        mpfr_const_pi(r.backend().data(), GMP_RNDN);
        return r;
    } else {
        return static_cast<Real>(3.141592653589793238462643383279502884L);
    }
}

/// Unit roundoff of the working type (half machine epsilon).
template <typename Real>
double unit_roundoff() {
    if constexpr (std::is_same_v<Real, HighReal>) {
        return std::pow(10.0, -static_cast<double>(HighReal::default_precision()));
    } else {
        return static_cast<double>(std::numeric_limits<Real>::epsilon()) / 2.0;
    }
}

/// Default threshold (relative to the largest contributing term) under which a
/// combined coefficient is treated as an exact cancellation.
template <typename Real>
double default_prune_tol() {
    if constexpr (std::is_same_v<Real, double>) {
        return 1e-15;
    } else {
        return 16.0 * unit_roundoff<Real>();
    }
}

/// Sets the MPFR working precision for the lifetime of the guard. The Boost 1.74
/// MPFR wrapper keeps the default precision in a process-wide static, so guards
/// serialise with each other.
class ScopedDigits {
public:
    explicit ScopedDigits(unsigned digits);
    ~ScopedDigits();
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

    unsigned digits() const { return digits_; }

private:
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned digits_;
    unsigned saved_;
};

/// What the caller asked for.
struct PrecisionRequest {
    enum class Mode { automatic, binary64, digits };
    Mode mode = Mode::automatic;
    unsigned value = 0;

    static PrecisionRequest automatic() { return {}; }
    static PrecisionRequest binary64() { return {Mode::binary64, 0}; }
    static PrecisionRequest with_digits(unsigned d) { return {Mode::digits, d}; }
    static PrecisionRequest from_optional(std::optional<unsigned> d) {
        return d ? with_digits(*d) : automatic();
    }
};

/// What was actually used.
struct PrecisionChoice {
    bool high = false;       // false: binary64 coefficients, extended accumulation
    unsigned digits = 16;    // decimal digits of the working type
    std::string note;

    std::string backend() const;
};

/// Picks a backend so that 16 * dynamic_range * unit_roundoff < tol.
/// `dynamic_range` is the ratio of the largest intermediate term to the quantity
/// being resolved; the factor 16 covers rounding already present in the inputs.
PrecisionChoice choose_precision(PrecisionRequest request, double dynamic_range, double tol);

}  // namespace qgauss
