#include "seclab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace seclab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::IndexOverflow: return "IndexOverflow";
        case ErrorCode::NotSimpleRoot: return "NotSimpleRoot";
        case ErrorCode::ZeroDerivative: return "ZeroDerivative";
        case ErrorCode::ZeroCurvature: return "ZeroCurvature";
        case ErrorCode::SecantBreakdown: return "SecantBreakdown";
        case ErrorCode::EqualIterates: return "EqualIterates";
        case ErrorCode::NewtonBreakdown: return "NewtonBreakdown";
        case ErrorCode::OddMultiplicity: return "OddMultiplicity";
        case ErrorCode::EvenMultiplicity: return "EvenMultiplicity";
        case ErrorCode::PoleAtUnitPower: return "PoleAtUnitPower";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::ExactRootTrace: return "ExactRootTrace";
        case ErrorCode::WrongProblem: return "WrongProblem";
        case ErrorCode::InvalidRegime: return "InvalidRegime";
        case ErrorCode::UnknownProblem: return "UnknownProblem";
        case ErrorCode::BadFlags: return "BadFlags";
    }
    return "Unknown";
}

std::string_view to_string(Backend b) noexcept {
    return b == Backend::Binary64 ? "binary64" : "dd";
}

Backend parse_backend(std::string_view name) {
    if (name == "binary64") return Backend::Binary64;
    if (name == "dd") return Backend::DoubleDouble;
    throw Error(ErrorCode::BadFlags, "unknown backend '" + std::string(name) + "'");
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    // %e is locale independent for the exponent but not the radix; the CLI never
    // calls setlocale, so the "C" locale is in effect.
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.16e", x);
    return buf.data();
}

std::string format_real(const DoubleDouble& x) { return to_string(x, RealTraits<DoubleDouble>::output_digits); }

namespace {

std::array<uint128, kMaxFibIndex + 1> make_fib_table() {
    std::array<uint128, kMaxFibIndex + 1> t{};
    t[0] = 0;
    t[1] = 1;
    for (std::size_t i = 2; i < t.size(); ++i) t[i] = t[i - 1] + t[i - 2];
    return t;
}

}  // namespace

uint128 fib(unsigned n) {
    static const auto table = make_fib_table();
    detail::check_fib_index(n, kMaxFibIndex);
    return table[n];
}

std::string to_string(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace seclab
