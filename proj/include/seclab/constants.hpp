#pragma once

#include <optional>
#include <vector>

#include "seclab/error.hpp"
#include "seclab/real.hpp"

namespace seclab {

// Characteristic polynomials and the ratio map of the secant method at an
// m-fold root. Real roots are located by bisection on brackets where the
// polynomial is strictly monotone, so each solve is guaranteed to converge.

/// p_m(k) = k^m + k^(m-1) - 1, evaluated as k^(m-1) (k + 1) - 1.
template <Real T>
T p_poly(int m, const T& k);

/// q_m(k) = p_m(k) - 1 for even m. Throws OddMultiplicity otherwise.
template <Real T>
T q_poly(int m, const T& k);

/// Unique root of p_m in (0, 1): the linear rate of the secant method at an m-fold root.
template <Real T>
T solve_c_m0(int m);

/// For even m, the root of p_m in (-2, -1); the repelling fixed point of h_m.
template <Real T>
T solve_c_2m1(int m);

/// For even m, the root of q_m in [-2, c_2m1); exactly -2 when m = 2.
template <Real T>
T solve_c_2m2(int m);

template <Real T>
struct CharConstants {
    int m = 2;
    T c_m0;
    std::optional<T> c_2m1;
    std::optional<T> c_2m2;

    static CharConstants compute(int m);

    /// max |polynomial residual| over the solved constants.
    T max_residual() const;
};

/// h_m(k) = (1 - k^(m-1)) / (1 - k^m), the exact one-step ratio map for x^m.
/// Uses the factored sum form within 1e-3 of k = 1; throws PoleAtUnitPower
/// when |1 - k^m| < 1e3 eps elsewhere.
template <Real T>
T h_map(int m, const T& k);

/// Closed-form derivative of h_m for even m.
template <Real T>
T h_prime(int m, const T& k);

/// Fixed points of h_m on [lo, hi] located by sign changes of h_m(k) - k on an
/// n-point grid (intervals straddling the pole at -1 are skipped), refined by
/// bisection.
template <Real T>
std::vector<T> find_fixed_points(int m, const T& lo, const T& hi, int n);

void require_multiplicity(int m);
void require_even(int m);
void require_odd(int m);

}  // namespace seclab
