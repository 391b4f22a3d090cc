#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seclab {

enum class ErrorCode {
    IndexOverflow,
    NotSimpleRoot,
    ZeroDerivative,
    ZeroCurvature,
    SecantBreakdown,
    EqualIterates,
    NewtonBreakdown,
    OddMultiplicity,
    EvenMultiplicity,
    PoleAtUnitPower,
    InsufficientData,
    ExactRootTrace,
    WrongProblem,
    InvalidRegime,
    UnknownProblem,
    BadFlags,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above so callers
// (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace seclab
