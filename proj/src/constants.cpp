#include "seclab/constants.hpp"

#include <string>

namespace seclab {

void require_multiplicity(int m) {
    if (m < 2) throw Error(ErrorCode::BadFlags, "multiplicity must be >= 2, got " + std::to_string(m));
}

void require_even(int m) {
    require_multiplicity(m);
    if (m % 2 != 0) throw Error(ErrorCode::OddMultiplicity, "m = " + std::to_string(m) + " is odd");
}

void require_odd(int m) {
    require_multiplicity(m);
    if (m % 2 == 0) throw Error(ErrorCode::EvenMultiplicity, "m = " + std::to_string(m) + " is even");
}

namespace {

template <Real T>
int bisection_steps() {
    return RealTraits<T>::backend == Backend::Binary64 ? 50 : 110;
}

// Root of g on [lo, hi] given g(lo) and g(hi) of opposite sign.
template <Real T, class G>
T bisect(G&& g, T lo, T hi) {
    const bool lo_negative = g(lo) < T(0.0);
    for (int i = 0; i < bisection_steps<T>(); ++i) {
        const T mid = (lo + hi) * T(0.5);
        const T gm = g(mid);
        if (gm == T(0.0)) return mid;
        if ((gm < T(0.0)) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) * T(0.5);
}

template <Real T>
T pole_guard() {
    return T(1e3 * RealTraits<T>::epsilon());
}

}  // namespace

template <Real T>
T p_poly(int m, const T& k) {
    require_multiplicity(m);
    return ipow(k, m - 1) * (k + T(1.0)) - T(1.0);
}

template <Real T>
T q_poly(int m, const T& k) {
    require_even(m);
    return p_poly(m, k) - T(1.0);
}

template <Real T>
T solve_c_m0(int m) {
    require_multiplicity(m);
    return bisect<T>([m](const T& k) { return p_poly(m, k); }, T(0.0), T(1.0));
}

template <Real T>
T solve_c_2m1(int m) {
    require_even(m);
    // p_m is strictly decreasing on [-2, -1]: p_m(-2) = 2^(m-1) - 1 > 0 > -1 = p_m(-1).
    return bisect<T>([m](const T& k) { return p_poly(m, k); }, T(-2.0), T(-1.0));
}

template <Real T>
T solve_c_2m2(int m) {
    require_even(m);
    if (m == 2) return T(-2.0);
    const T c1 = solve_c_2m1<T>(m);
    return bisect<T>([m](const T& k) { return q_poly(m, k); }, T(-2.0), c1);
}

template <Real T>
CharConstants<T> CharConstants<T>::compute(int m) {
    CharConstants c;
    c.m = m;
    c.c_m0 = solve_c_m0<T>(m);
    if (m % 2 == 0) {
        c.c_2m1 = solve_c_2m1<T>(m);
        c.c_2m2 = solve_c_2m2<T>(m);
    }
    return c;
}

template <Real T>
T CharConstants<T>::max_residual() const {
    T r = real_abs(p_poly(m, c_m0));
    if (c_2m1) r = real_max(r, real_abs(p_poly(m, *c_2m1)));
    if (c_2m2) r = real_max(r, real_abs(q_poly(m, *c_2m2)));
    return r;
}

template <Real T>
T h_map(int m, const T& k) {
    require_multiplicity(m);
    if (real_abs(k - T(1.0)) < T(1e-3)) {
        // (1 - k^(m-1)) / (1 - k^m) = (sum_{j<m-1} k^j) / (sum_{j<m} k^j)
        T num(0.0);
        T den(0.0);
        T kj(1.0);
        for (int j = 0; j < m; ++j) {
            if (j < m - 1) num += kj;
            den += kj;
            kj *= k;
        }
        return num / den;
    }
    const T den = T(1.0) - ipow(k, m);
    if (real_abs(den) < pole_guard<T>()) {
        throw Error(ErrorCode::PoleAtUnitPower, "1 - k^m vanishes at k = " + format_real(k));
    }
    return (T(1.0) - ipow(k, m - 1)) / den;
}

template <Real T>
T h_prime(int m, const T& k) {
    require_even(m);
    if (real_abs(k - T(1.0)) < T(1e-3)) {
        T num(0.0), den(0.0), dnum(0.0), dden(0.0);
        T kj(1.0);
        T kj_minus(0.0);  // k^(j-1)
        for (int j = 0; j < m; ++j) {
            const T jj(static_cast<double>(j));
            if (j < m - 1) {
                num += kj;
                dnum += jj * kj_minus;
            }
            den += kj;
            dden += jj * kj_minus;
            kj_minus = kj;
            kj *= k;
        }
        return (dnum * den - num * dden) / (den * den);
    }
    const T den = T(1.0) - ipow(k, m);
    if (real_abs(den) < pole_guard<T>()) {
        throw Error(ErrorCode::PoleAtUnitPower, "1 - k^m vanishes at k = " + format_real(k));
    }
    const T mm(static_cast<double>(m));
    const T num = mm * ipow(k, m - 1) - (mm - T(1.0)) * ipow(k, m - 2) - ipow(k, 2 * m - 2);
    return num / (den * den);
}

template <Real T>
std::vector<T> find_fixed_points(int m, const T& lo, const T& hi, int n) {
    require_multiplicity(m);
    if (n < 2 || !(lo < hi)) throw Error(ErrorCode::BadFlags, "need n >= 2 and lo < hi");

    auto g = [m](const T& k) { return h_map(m, k) - k; };
    auto straddles_pole = [m](const T& a, const T& b) {
        return m % 2 == 0 && a <= T(-1.0) && T(-1.0) <= b;
    };

    std::vector<T> roots;
    const T step = (hi - lo) / T(static_cast<double>(n - 1));
    bool has_prev = false;
    T prev_k(0.0);
    T prev_g(0.0);
    for (int i = 0; i < n; ++i) {
        const T k = lo + step * T(static_cast<double>(i));
        T gk;
        try {
            gk = g(k);
        } catch (const Error&) {
            has_prev = false;
            continue;
        }
        if (gk == T(0.0)) {
            roots.push_back(k);
        } else if (has_prev && prev_g != T(0.0) && ((prev_g < T(0.0)) != (gk < T(0.0))) &&
                   !straddles_pole(prev_k, k)) {
            roots.push_back(bisect<T>(g, prev_k, k));
        }
        has_prev = true;
        prev_k = k;
        prev_g = gk;
    }
    return roots;
}

#define SECLAB_INSTANTIATE(T)                                                     \
    template T p_poly<T>(int, const T&);                                          \
    template T q_poly<T>(int, const T&);                                          \
    template T solve_c_m0<T>(int);                                                \
    template T solve_c_2m1<T>(int);                                               \
    template T solve_c_2m2<T>(int);                                               \
    template struct CharConstants<T>;                                             \
    template T h_map<T>(int, const T&);                                           \
    template T h_prime<T>(int, const T&);                                         \
    template std::vector<T> find_fixed_points<T>(int, const T&, const T&, int);

SECLAB_INSTANTIATE(double)
SECLAB_INSTANTIATE(DoubleDouble)

#undef SECLAB_INSTANTIATE

}  // namespace seclab
