#pragma once

#include <cstdint>
#include <string>

#include "seclab/error.hpp"
#include "seclab/real.hpp"

namespace seclab {

using uint128 = unsigned __int128;

/// Largest Fibonacci index whose value fits in 128 unsigned bits.
inline constexpr unsigned kMaxFibIndex = 186;

/// Golden ratio r0 = (1 + sqrt 5)/2 and its conjugate r1 = 1 - r0, built from
/// the backend square root so that r0^2 = r0 + 1 holds to backend precision.
template <Real T>
struct GoldenConstants {
    T sqrt5;
    T r0;
    T r1;

    static GoldenConstants compute() {
        const T s5 = real_sqrt(T(5.0));
        const T r0 = (T(1.0) + s5) / T(2.0);
        return {s5, r0, T(1.0) - r0};
    }
};

/// Exact F_n. Throws IndexOverflow for n > 186.
uint128 fib(unsigned n);

std::string to_string(uint128 v);

template <Real T>
T to_real(uint128 v) {
    if constexpr (std::same_as<T, double>) {
        return static_cast<double>(v);
    } else {
        const double hi = static_cast<double>(v);
        const auto hi_int = static_cast<uint128>(hi);
        const double lo = hi_int >= v ? -static_cast<double>(hi_int - v) : static_cast<double>(v - hi_int);
        return DoubleDouble::from_parts(hi, lo);
    }
}

namespace detail {
inline void check_fib_index(unsigned n, unsigned limit) {
    if (n > limit) {
        throw Error(ErrorCode::IndexOverflow,
                    "index " + std::to_string(n) + " exceeds " + std::to_string(limit));
    }
}
}  // namespace detail

/// Binet's closed form (r0^n - r1^n)/sqrt 5.
///
/// The binary64 result is evaluated with double-double intermediates and
/// rounded once; plain binary64 powers lose the integer part from n = 71 on.
template <Real T>
T binet(unsigned n) {
    detail::check_fib_index(n, kMaxFibIndex);
    if constexpr (std::same_as<T, double>) {
        return to_double(binet<DoubleDouble>(n));
    } else {
        const auto g = GoldenConstants<T>::compute();
        const int k = static_cast<int>(n);
        return (pow(g.r0, k) - pow(g.r1, k)) / g.sqrt5;
    }
}

/// |F_{n+1} - (r0 F_n + r1^n)|, which vanishes in exact arithmetic.
template <Real T>
T fib_shift_identity(unsigned n) {
    detail::check_fib_index(n, kMaxFibIndex - 1);
    const auto g = GoldenConstants<T>::compute();
    const T fn = to_real<T>(fib(n));
    const T fn1 = to_real<T>(fib(n + 1));
    T r1n(1.0);
    for (unsigned i = 0; i < n; ++i) r1n *= g.r1;
    return real_abs(fn1 - (g.r0 * fn + r1n));
}

}  // namespace seclab
