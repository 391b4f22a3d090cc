#include "seclab/double_double.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace seclab {

namespace {

const DoubleDouble kLn2 = DoubleDouble::from_parts(6.931471805599452862e-01, 2.319046813846299558e-17);
const DoubleDouble kLn10 = DoubleDouble::from_parts(2.302585092994045901e+00, -2.170756223382249351e-16);

// exp(s) - 1 for |s| <= ~4e-4 by a truncated Taylor series in Horner form.
DoubleDouble expm1_small(const DoubleDouble& s) {
    DoubleDouble t(1.0);
    for (int i = 14; i >= 2; --i) {
        t = DoubleDouble(1.0) + s * t / DoubleDouble(static_cast<double>(i));
    }
    return s * t;
}

}  // namespace

DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi_ <= 0.0) {
        if (a.hi_ == 0.0) return DoubleDouble(0.0);
        return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
    }
    const double x = std::sqrt(a.hi_);
    auto [p, e] = DoubleDouble::two_prod(x, x);
    const DoubleDouble residual = a - DoubleDouble(p, e, DoubleDouble::Normalized{});
    const double correction = residual.hi_ * 0.5 / x;
    return DoubleDouble::from_parts(x, correction);
}

DoubleDouble exp(const DoubleDouble& a) {
    if (a.hi_ > 709.7) return DoubleDouble(std::numeric_limits<double>::infinity());
    if (a.hi_ < -745.0) return DoubleDouble(0.0);
    if (a.hi_ == 0.0 && a.lo_ == 0.0) return DoubleDouble(1.0);

    const double k = std::nearbyint(a.hi_ / kLn2.hi_);
    const DoubleDouble r = a - kLn2 * DoubleDouble(k);

    // exp(r) = (1 + u)^(2^10) with u = expm1(r / 2^10); squaring is done on u
    // as u <- 2u + u^2 so the leading 1 never swamps the small part.
    DoubleDouble u = expm1_small(ldexp(r, -10));
    for (int i = 0; i < 10; ++i) {
        u = ldexp(u, 1) + u * u;
    }
    return ldexp(DoubleDouble(1.0) + u, static_cast<int>(k));
}

DoubleDouble log(const DoubleDouble& a) {
    if (a.hi_ <= 0.0) {
        if (a.hi_ == 0.0) return DoubleDouble(-std::numeric_limits<double>::infinity());
        return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
    }
    if (!std::isfinite(a.hi_)) return a;
    // One Newton step on exp(y) = a doubles the ~16 correct digits of std::log.
    DoubleDouble y(std::log(a.hi_));
    y = y + a * exp(-y) - DoubleDouble(1.0);
    return y;
}

DoubleDouble log10(const DoubleDouble& a) { return log(a) / kLn10; }

DoubleDouble pow(const DoubleDouble& base, int n) {
    if (n == 0) return DoubleDouble(1.0);
    const bool invert = n < 0;
    unsigned long long m = invert ? -static_cast<long long>(n) : static_cast<long long>(n);
    DoubleDouble result(1.0);
    DoubleDouble b = base;
    while (m != 0) {
        if (m & 1ULL) result *= b;
        m >>= 1;
        if (m != 0) b *= b;
    }
    return invert ? DoubleDouble(1.0) / result : result;
}

DoubleDouble pow(const DoubleDouble& base, const DoubleDouble& exponent) {
    if (base.hi() == 0.0 && base.lo() == 0.0) {
        return exponent > DoubleDouble(0.0) ? DoubleDouble(0.0)
                                            : DoubleDouble(std::numeric_limits<double>::infinity());
    }
    return exp(exponent * log(base));
}

std::string to_string(const DoubleDouble& a, int digits) {
    if (digits < 1) digits = 1;
    if (std::isnan(a.hi())) return "nan";
    if (std::isinf(a.hi())) return a.hi() > 0 ? "inf" : "-inf";

    std::string out;
    if (a.hi() < 0.0) out.push_back('-');
    DoubleDouble x = abs(a);

    std::vector<int> d(static_cast<std::size_t>(digits) + 1, 0);
    int e10 = 0;
    if (x.hi() != 0.0) {
        e10 = static_cast<int>(std::floor(std::log10(x.hi())));
        DoubleDouble y = x / pow(DoubleDouble(10.0), e10);
        if (y >= DoubleDouble(10.0)) {
            y /= DoubleDouble(10.0);
            ++e10;
        } else if (y < DoubleDouble(1.0)) {
            y *= DoubleDouble(10.0);
            --e10;
        }
        for (auto& digit : d) {
            int v = static_cast<int>(std::floor(y.hi()));
            v = v < 0 ? 0 : (v > 9 ? 9 : v);
            digit = v;
            y = (y - DoubleDouble(static_cast<double>(v))) * DoubleDouble(10.0);
        }
        // round half up on the guard digit
        if (d.back() >= 5) {
            int i = digits - 1;
            while (i >= 0 && d[static_cast<std::size_t>(i)] == 9) {
                d[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i >= 0) {
                ++d[static_cast<std::size_t>(i)];
            } else {
                d[0] = 1;
                ++e10;
            }
        }
    }

    out.push_back(static_cast<char>('0' + d[0]));
    if (digits > 1) {
        out.push_back('.');
        for (int i = 1; i < digits; ++i) out.push_back(static_cast<char>('0' + d[static_cast<std::size_t>(i)]));
    }
    out.push_back('e');
    out.push_back(e10 < 0 ? '-' : '+');
    const int ae = e10 < 0 ? -e10 : e10;
    if (ae < 10) out.push_back('0');
    out += std::to_string(ae);
    return out;
}

}  // namespace seclab

namespace seclab {

DoubleDouble parse_double_double(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    DoubleDouble mant(0.0);
    int exp10 = 0;
    int digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            // Beyond ~34 digits the tail cannot change the double-double value.
            if (digits < 34) {
                mant = mant * DoubleDouble(10.0) + DoubleDouble(static_cast<double>(c - '0'));
                if (seen_point) --exp10;
                if (mant != DoubleDouble(0.0)) ++digits;
            } else if (!seen_point) {
                ++exp10;
            }
        } else {
            break;
        }
    }
    const bool any_digit = text.find_first_of("0123456789") < i;
    if (!any_digit) throw std::invalid_argument("not a number: " + std::string(text));
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw std::invalid_argument("not a number: " + std::string(text));
        ++i;
        int e = 0;
        const auto res = std::from_chars(text.data() + i + (i < text.size() && text[i] == '+'),
                                         text.data() + text.size(), e);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            throw std::invalid_argument("bad exponent: " + std::string(text));
        }
        exp10 += e;
    }
    DoubleDouble scale = pow(DoubleDouble(10.0), exp10 < 0 ? -exp10 : exp10);
    DoubleDouble v = exp10 < 0 ? mant / scale : mant * scale;
    return negative ? -v : v;
}

}  // namespace seclab
