#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seclab/constants.hpp"
#include "seclab/functions.hpp"
#include "seclab/iterate.hpp"
#include "seclab/numerics.hpp"

namespace seclab {

struct OrderEstimate {
    double p_hat = 0.0;
    double c_hat = 0.0;
    std::size_t samples_used = 0;
    std::pair<std::size_t, std::size_t> window;  // indices n of the first and last p_n used
};

/// Computational order of convergence from an error sequence E_0, E_1, ...
///
/// p_n = ln(E_{n+1}/E_n) / ln(E_n/E_{n-1}). The first two samples are
/// dropped when enough remain. The estimate is the median of the window,
/// except when the last three samples alternate around their limit, where
/// the Aitken extrapolation of those three is used instead.
///
/// c_hat is formed from E_{n+1}/E_n^p at p = assumed_order when given,
/// otherwise at p = p_hat.
OrderEstimate estimate_q_order(std::span<const double> E, std::optional<double> assumed_order = std::nullopt);

/// Same on a trace: refuses ExactRoot traces and ignores rows below the
/// trace's precision floor.
template <Real T>
OrderEstimate estimate_q_order(const IterationTrace<T>& trace, std::optional<double> assumed_order = std::nullopt) {
    if (trace.termination == Termination::ExactRoot) {
        throw Error(ErrorCode::ExactRootTrace, "trace reached f(x) == 0; the order is undefined");
    }
    if (!trace.root_known()) throw Error(ErrorCode::InsufficientData, "trace has no error column");
    std::vector<double> E;
    for (const auto& s : trace.steps) {
        if (!s.E) break;
        if (trace.precision_floor && *s.E < *trace.precision_floor) break;
        E.push_back(to_double(*s.E));
    }
    return estimate_q_order(std::span<const double>(E), assumed_order);
}

/// m_alpha^(r0 - 1), the secant AEC at a simple root.
template <Real T>
T theoretical_aec_simple(const ProblemSpec<T>& p) {
    const T m_alpha = curvature_ratio(p).m_alpha;
    if (m_alpha == T(0.0)) throw Error(ErrorCode::ZeroCurvature, "f''(root) == 0 for '" + p.id + "'");
    return real_pow(m_alpha, GoldenConstants<T>::compute().r0 - T(1.0));
}

enum class DiagnosticKind { QLinear, Oscillating, Superlinear, Inconclusive };

std::string_view to_string(DiagnosticKind k) noexcept;

struct RatioDiagnostic {
    DiagnosticKind kind = DiagnosticKind::Inconclusive;
    double c = 0.0;   // QLinear: mean ratio over the last quartile
    double lo = 0.0;  // Oscillating: the two cluster centres
    double hi = 0.0;
};

/// Classifies the consecutive ratios E_{n+1}/E_n of a positive sequence
/// (at least 8 terms) as Q-linear, two-cluster oscillating, or superlinear.
RatioDiagnostic ratio_diagnostic(std::span<const double> E);

/// max_n |e_{n+1}(x_n + x_{n-1}) - e_n e_{n-1}| / (|e_n e_{n-1}| + (|x_n| + |x_{n-1}|) max(1, |root|))
/// for a secant trace on x^2 - a. For that f the secant error relation is an
/// exact identity, so the result only measures rounding.
template <Real T>
double check_error_relation_quadratic(const IterationTrace<T>& trace, const T& a) {
    if (trace.problem_id != "quadratic_sqrt2" || trace.method != Method::Secant) {
        throw Error(ErrorCode::WrongProblem, "error relation holds for secant traces on x^2 - a only");
    }
    if (!(a > T(0.0))) throw Error(ErrorCode::WrongProblem, "a must be positive");
    if (trace.steps.size() < 3 || !trace.root_known()) {
        throw Error(ErrorCode::InsufficientData, "need x_0, x_1, x_2 with known errors");
    }
    const T root = real_sqrt(a);
    const T scale = real_max(T(1.0), real_abs(root));
    double worst = 0.0;
    for (std::size_t n = 1; n + 1 < trace.steps.size(); ++n) {
        const auto& prev = trace.steps[n - 1];
        const auto& cur = trace.steps[n];
        const auto& next = trace.steps[n + 1];
        const T e_prev = prev.x - root;
        const T e_cur = cur.x - root;
        const T e_next = next.x - root;
        const T lhs = e_next * (cur.x + prev.x) - e_cur * e_prev;
        const T den = real_abs(e_cur * e_prev) + (real_abs(cur.x) + real_abs(prev.x)) * scale;
        worst = std::max(worst, to_double(real_abs(lhs) / den));
    }
    return worst;
}

struct EfficiencyReport {
    double T_N = 0.0;
    double T_S = 0.0;
    double K = 0.0;
    double s = 0.0;
    double m_cost = 0.0;
    double threshold = 0.0;
};

/// ln 2 / ln r0 - 1: the derivative-cost ratio above which the secant method
/// is cheaper than Newton's.
double efficiency_threshold();

/// Newton vs secant cost to shrink the error from E0 to eps_target, with the
/// ceilings on the iteration counts.
EfficiencyReport efficiency_report(double m_cost, double s, double m_alpha, double E0, double eps_target);

/// Ceiling-free variant at a given K: T_N = (1+s) m log2 K, T_S = m log_r0 K.
EfficiencyReport efficiency_continuous(double m_cost, double s, double K);

/// Estimated order next to the values the theory predicts for this problem
/// and method.
struct OrderReport {
    std::optional<double> p_hat;
    std::optional<double> c_hat;
    std::optional<double> theoretical_p;
    std::optional<double> theoretical_c;
    std::string verdict;  // consistent | inconsistent | no_theory | refused: <reason>
};

template <Real T>
OrderReport order_report(const IterationTrace<T>& trace, const ProblemSpec<T>& p);

}  // namespace seclab
