#pragma once

#include <cmath>
#include <compare>
#include <string>
#include <string_view>

namespace seclab {

// Unevaluated sum hi + lo of two binary64 values with |lo| <= ulp(hi)/2.
// Gives roughly 106 bits (about 31 decimal digits) of significand.
class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit widening is exact

    static DoubleDouble from_parts(double hi, double lo) {
        const double s = hi + lo;
        return DoubleDouble(s, lo - (s - hi), Normalized{});
    }

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr explicit operator double() const { return hi_ + lo_; }

    // 2^-104, the usual unit for double-double error bounds.
    static constexpr double epsilon() { return 0x1p-104; }

    friend DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi_, -a.lo_, Normalized{}}; }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
        auto [s, e] = two_sum(a.hi_, b.hi_);
        auto [t, f] = two_sum(a.lo_, b.lo_);
        e += t;
        quick_two_sum_inplace(s, e);
        e += f;
        quick_two_sum_inplace(s, e);
        return {s, e, Normalized{}};
    }
    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
        auto [p, e] = two_prod(a.hi_, b.hi_);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        quick_two_sum_inplace(p, e);
        return {p, e, Normalized{}};
    }

    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
        const double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - b * DoubleDouble(q1);
        const double q2 = r.hi_ / b.hi_;
        r = r - b * DoubleDouble(q2);
        const double q3 = r.hi_ / b.hi_;
        double s = q1;
        double e = q2;
        quick_two_sum_inplace(s, e);
        return DoubleDouble(s, e, Normalized{}) + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
    DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
    DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
    DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    friend DoubleDouble abs(const DoubleDouble& a) {
        return (a.hi_ < 0.0 || (a.hi_ == 0.0 && a.lo_ < 0.0)) ? -a : a;
    }
    friend bool isfinite(const DoubleDouble& a) { return std::isfinite(a.hi_) && std::isfinite(a.lo_); }
    friend DoubleDouble ldexp(const DoubleDouble& a, int e) {
        return {std::ldexp(a.hi_, e), std::ldexp(a.lo_, e), Normalized{}};
    }
    friend DoubleDouble floor(const DoubleDouble& a) {
        const double fh = std::floor(a.hi_);
        if (fh != a.hi_) return DoubleDouble(fh);
        return from_parts(fh, std::floor(a.lo_));
    }

    friend DoubleDouble sqrt(const DoubleDouble& a);
    friend DoubleDouble exp(const DoubleDouble& a);
    friend DoubleDouble log(const DoubleDouble& a);

private:
    struct Normalized {};
    constexpr DoubleDouble(double hi, double lo, Normalized) : hi_(hi), lo_(lo) {}

    struct Pair {
        double s;
        double e;
    };
    static Pair two_sum(double a, double b) {
        const double s = a + b;
        const double bb = s - a;
        return {s, (a - (s - bb)) + (b - bb)};
    }
    static Pair two_prod(double a, double b) {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }
    static void quick_two_sum_inplace(double& s, double& e) {
        const double t = s + e;
        e = e - (t - s);
        s = t;
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

DoubleDouble pow(const DoubleDouble& base, const DoubleDouble& exponent);
DoubleDouble pow(const DoubleDouble& base, int n);
DoubleDouble log10(const DoubleDouble& a);

// Scientific notation with `digits` significant digits, e.g. "1.41421356...e+00".
std::string to_string(const DoubleDouble& a, int digits = 32);

// Decimal text ("1.4", "-2.5e-3") to the nearest double-double, up to rounding
// in the last bits. Throws std::invalid_argument on malformed input.
DoubleDouble parse_double_double(std::string_view text);

}  // namespace seclab
