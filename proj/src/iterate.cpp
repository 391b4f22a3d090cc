#include "seclab/iterate.hpp"

namespace seclab {

std::string_view to_string(Method m) noexcept {
    return m == Method::Secant ? "secant" : "newton";
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::MaxIter: return "MaxIter";
        case Termination::Residual: return "Residual";
        case Termination::StepSize: return "StepSize";
        case Termination::Diverged: return "Diverged";
        case Termination::ExactRoot: return "ExactRoot";
        case Termination::SecantBreakdown: return "SecantBreakdown";
        case Termination::NewtonBreakdown: return "NewtonBreakdown";
        case Termination::PrecisionFloor: return "PrecisionFloor";
    }
    return "Unknown";
}

}  // namespace seclab
