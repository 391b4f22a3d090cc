#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <string_view>

#include "seclab/double_double.hpp"

namespace seclab {

enum class Backend { Binary64, DoubleDouble };

std::string_view to_string(Backend b) noexcept;
Backend parse_backend(std::string_view name);  // "binary64" | "dd"; throws BadFlags

template <class T>
struct RealTraits;

template <>
struct RealTraits<double> {
    static constexpr Backend backend = Backend::Binary64;
    static constexpr int output_digits = 17;
    static constexpr double epsilon() { return std::numeric_limits<double>::epsilon(); }
};

template <>
struct RealTraits<DoubleDouble> {
    static constexpr Backend backend = Backend::DoubleDouble;
    static constexpr int output_digits = 32;
    static constexpr double epsilon() { return DoubleDouble::epsilon(); }
};

template <class T>
concept Real = requires { RealTraits<T>::backend; };

inline double to_double(double x) { return x; }
inline double to_double(const DoubleDouble& x) { return static_cast<double>(x); }

// Fixed-width scientific text at the backend's output precision. Independent
// of the global locale.
std::string format_real(double x);
std::string format_real(const DoubleDouble& x);

template <Real T>
T epsilon_of() {
    return T(RealTraits<T>::epsilon());
}

// x^n by repeated multiplication; n is small (multiplicities) everywhere it is used.
template <Real T>
T ipow(const T& x, int n) {
    T r(1.0);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

template <Real T>
T real_abs(const T& x) {
    using std::abs;
    return abs(x);
}

template <Real T>
T real_sqrt(const T& x) {
    using std::sqrt;
    return sqrt(x);
}

template <Real T>
T real_log(const T& x) {
    using std::log;
    return log(x);
}

template <Real T>
T real_exp(const T& x) {
    using std::exp;
    return exp(x);
}

template <Real T>
T real_pow(const T& x, const T& y) {
    using std::pow;
    return pow(x, y);
}

template <Real T>
bool real_isfinite(const T& x) {
    using std::isfinite;
    return isfinite(x);
}

template <Real T>
T real_max(const T& a, const T& b) {
    return a < b ? b : a;
}

}  // namespace seclab
