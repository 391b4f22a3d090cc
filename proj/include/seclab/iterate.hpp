#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seclab/error.hpp"
#include "seclab/functions.hpp"
#include "seclab/real.hpp"

namespace seclab {

enum class Method { Secant, Newton };

enum class Termination {
    MaxIter,
    Residual,
    StepSize,
    Diverged,
    ExactRoot,
    SecantBreakdown,
    NewtonBreakdown,
    PrecisionFloor,
};

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Termination t) noexcept;

inline bool is_breakdown(Termination t) {
    return t == Termination::SecantBreakdown || t == Termination::NewtonBreakdown;
}

template <Real T>
struct StoppingCriteria {
    int max_iter = 200;
    T residual_tol = T(0.0);  // 0 disables
    T step_tol = T(0.0);      // 0 disables
    // Unset means 1e3 * domain_halfwidth.
    std::optional<T> divergence_bound;
    // Unset means 1e6 * eps * max(1, |root|): the iterate keeps about six
    // significant digits of its error down to this level.
    std::optional<T> precision_floor;
    // f(x_prev) and f(x_curr) closer than this (relative) count as equal.
    T breakdown_rel_tol = T(8.0 * RealTraits<T>::epsilon());

    void validate() const {
        if (max_iter < 1) throw Error(ErrorCode::BadFlags, "max_iter must be >= 1");
        if (divergence_bound && !(*divergence_bound > T(0.0))) {
            throw Error(ErrorCode::BadFlags, "divergence_bound must be positive");
        }
        if (residual_tol < T(0.0) || step_tol < T(0.0) || breakdown_rel_tol < T(0.0)) {
            throw Error(ErrorCode::BadFlags, "tolerances must be nonnegative");
        }
    }

    T resolved_divergence_bound(const ProblemSpec<T>& p) const {
        return divergence_bound.value_or(T(1e3) * p.domain_halfwidth);
    }

    T resolved_precision_floor(const ProblemSpec<T>& p) const {
        if (precision_floor) return *precision_floor;
        const T scale = p.root ? real_max(T(1.0), real_abs(*p.root)) : T(1.0);
        return T(1e6 * RealTraits<T>::epsilon()) * scale;
    }
};

template <Real T>
struct IterationStep {
    std::size_t n = 0;
    T x;
    T fx;
    std::optional<T> e;  // x - root
    std::optional<T> E;  // |e|
    std::optional<T> k;  // e_{n+1} / e_n, filled once x_{n+1} exists
};

template <Real T>
struct IterationTrace {
    Method method = Method::Secant;
    std::string problem_id;
    std::vector<IterationStep<T>> steps;
    Termination termination = Termination::MaxIter;
    // Index of the iterate that could not be formed, for breakdown terminations.
    std::optional<std::size_t> breakdown_index;
    std::optional<T> precision_floor;

    bool root_known() const { return !steps.empty() && steps.front().e.has_value(); }
};

namespace detail {

// Exact zero, or a difference lost in the rounding of f itself. Non-finite
// values are left to the divergence check.
template <Real T>
bool denominator_vanishes(const T& df, const T& f_prev, const T& f_curr, const T& rel_tol) {
    if (df == T(0.0)) return true;
    return real_isfinite(df) && real_abs(df) <= rel_tol * real_max(real_abs(f_prev), real_abs(f_curr));
}

}  // namespace detail

/// One secant update, computed exactly in the form
/// x_curr - f(x_curr) (x_curr - x_prev) / (f(x_curr) - f(x_prev)).
template <Real T>
T secant_step(const ProblemSpec<T>& p, const T& x_prev, const T& x_curr,
              const T& breakdown_rel_tol = T(8.0 * RealTraits<T>::epsilon())) {
    if (x_prev == x_curr) throw Error(ErrorCode::EqualIterates, "x_prev == x_curr");
    const T f_prev = p.f(x_prev);
    const T f_curr = p.f(x_curr);
    const T df = f_curr - f_prev;
    if (detail::denominator_vanishes(df, f_prev, f_curr, breakdown_rel_tol)) {
        throw Error(ErrorCode::SecantBreakdown, "f(x_prev) == f(x_curr)");
    }
    return x_curr - f_curr * (x_curr - x_prev) / df;
}

template <Real T>
T newton_step(const ProblemSpec<T>& p, const T& x) {
    const T d = p.f1(x);
    if (d == T(0.0)) throw Error(ErrorCode::NewtonBreakdown, "f'(x) == 0");
    return x - p.f(x) / d;
}

namespace detail {

template <Real T>
class TraceBuilder {
public:
    TraceBuilder(const ProblemSpec<T>& p, const StoppingCriteria<T>& stop, Method method)
        : p_(p), stop_(stop), bound_(stop.resolved_divergence_bound(p)) {
        stop_.validate();
        trace_.method = method;
        trace_.problem_id = p.id;
        if (p.root) {
            floor_ = stop.resolved_precision_floor(p);
            trace_.precision_floor = floor_;
        }
    }

    const IterationStep<T>& last() const { return trace_.steps.back(); }

    void push(const T& x, const T& fx) {
        IterationStep<T> s;
        s.n = trace_.steps.size();
        s.x = x;
        s.fx = fx;
        if (p_.root) {
            s.e = x - *p_.root;
            s.E = real_abs(*s.e);
            if (!trace_.steps.empty()) {
                auto& prev = trace_.steps.back();
                if (prev.e && *prev.e != T(0.0)) prev.k = *s.e / *prev.e;
            }
        }
        trace_.steps.push_back(std::move(s));
    }

    // Conditions that depend only on the newest iterate, in priority order
    // after the method-specific breakdown check.
    std::optional<Termination> state_checks(const IterationStep<T>& s) const {
        const T dist = s.e ? *s.E : real_abs(s.x);
        if (!real_isfinite(s.x) || !real_isfinite(s.fx) || dist > bound_) return Termination::Diverged;
        if (floor_ && s.E && *s.E < *floor_) return Termination::PrecisionFloor;
        if (stop_.residual_tol > T(0.0) && real_abs(s.fx) <= stop_.residual_tol) return Termination::Residual;
        if (stop_.step_tol > T(0.0) && trace_.steps.size() >= 2) {
            const auto& prev = trace_.steps[trace_.steps.size() - 2];
            if (real_abs(s.x - prev.x) <= stop_.step_tol) return Termination::StepSize;
        }
        return std::nullopt;
    }

    IterationTrace<T> finish(Termination t, std::optional<std::size_t> breakdown_at = std::nullopt) {
        trace_.termination = t;
        trace_.breakdown_index = breakdown_at;
        return std::move(trace_);
    }

    const StoppingCriteria<T>& stop() const { return stop_; }
    std::size_t size() const { return trace_.steps.size(); }

private:
    const ProblemSpec<T>& p_;
    StoppingCriteria<T> stop_;
    T bound_;
    std::optional<T> floor_;
    IterationTrace<T> trace_;
};

}  // namespace detail

/// Secant iteration from (x0, x1) until the first stopping condition, checked
/// in the order ExactRoot, SecantBreakdown, Diverged, PrecisionFloor,
/// Residual, StepSize, MaxIter. max_iter counts newly computed iterates.
template <Real T>
IterationTrace<T> run_secant(const ProblemSpec<T>& p, const T& x0, const T& x1,
                             const StoppingCriteria<T>& stop = {}) {
    if (x0 == x1) throw Error(ErrorCode::EqualIterates, "x0 == x1");
    detail::TraceBuilder<T> b(p, stop, Method::Secant);

    T x_prev = x0;
    T f_prev = p.f(x0);
    b.push(x_prev, f_prev);
    if (f_prev == T(0.0)) return b.finish(Termination::ExactRoot);
    if (auto t = b.state_checks(b.last())) return b.finish(*t);

    T x_curr = x1;
    T f_curr = p.f(x1);
    b.push(x_curr, f_curr);

    for (int computed = 0;; ++computed) {
        if (f_curr == T(0.0)) return b.finish(Termination::ExactRoot);
        const T df = f_curr - f_prev;
        if (x_curr == x_prev || detail::denominator_vanishes(df, f_prev, f_curr, b.stop().breakdown_rel_tol)) {
            return b.finish(Termination::SecantBreakdown, b.size());
        }
        if (auto t = b.state_checks(b.last())) return b.finish(*t);
        if (computed >= b.stop().max_iter) return b.finish(Termination::MaxIter);

        const T x_next = x_curr - f_curr * (x_curr - x_prev) / df;
        x_prev = x_curr;
        f_prev = f_curr;
        x_curr = x_next;
        f_curr = p.f(x_next);
        b.push(x_curr, f_curr);
    }
}

/// Newton iteration from x0; same stopping rules with NewtonBreakdown
/// (f'(x_n) == 0) in place of the secant breakdown.
template <Real T>
IterationTrace<T> run_newton(const ProblemSpec<T>& p, const T& x0, const StoppingCriteria<T>& stop = {}) {
    detail::TraceBuilder<T> b(p, stop, Method::Newton);
    T x = x0;
    T fx = p.f(x0);
    b.push(x, fx);

    for (int computed = 0;; ++computed) {
        if (fx == T(0.0)) return b.finish(Termination::ExactRoot);
        const T d = p.f1(x);
        if (d == T(0.0)) return b.finish(Termination::NewtonBreakdown, b.size());
        if (auto t = b.state_checks(b.last())) return b.finish(*t);
        if (computed >= b.stop().max_iter) return b.finish(Termination::MaxIter);

        x = x - fx / d;
        fx = p.f(x);
        b.push(x, fx);
    }
}

}  // namespace seclab
