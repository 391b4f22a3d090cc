#include "seclab/dynamics.hpp"

#include <cmath>
#include <string>

#include "seclab/functions.hpp"
#include "seclab/iterate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seclab {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::ConvergesLinearly: return "ConvergesLinearly";
        case Verdict::Diverges: return "Diverges";
        case Verdict::Breakdown: return "Breakdown";
        case Verdict::ExcludedByHypothesis: return "ExcludedByHypothesis";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

bool in_band(const CharConstants<double>& c, double k) {
    if (!c.c_2m1) return false;
    const double c1 = *c.c_2m1;
    const double c2 = *c.c_2m2;
    return (c2 < k && k < c1) || (c1 < k && k < -1.0);
}

namespace {

bool near(double a, double b, double eps) { return std::abs(a - b) < eps; }

std::size_t escape_bound(const CharConstants<double>& c, double k0) {
    if (!in_band(c, k0)) return 0;
    const double k1 = h_map(c.m, k0);
    const double gap = std::abs(k1 - k0);
    const double growth = 1.0 + 1.0 / std::pow(std::pow(2.0, c.m) - 1.0, 2);
    const double span = -1.0 - *c.c_2m2;
    if (gap == 0.0) return kMaxRatioSteps;
    const double steps = std::ceil(std::log(span / gap) / std::log(growth));
    if (!(steps < static_cast<double>(kMaxRatioSteps))) return kMaxRatioSteps;
    return static_cast<std::size_t>(std::max(0.0, steps)) + 2;
}

RatioTrace iterate_ratio_with(const CharConstants<double>& c, double k0, std::size_t max_steps, double eps) {
    RatioTrace t;
    t.m = c.m;
    const bool even = c.c_2m1.has_value();
    double k = k0;
    t.k_values.push_back(k);
    for (std::size_t n = 0;; ++n) {
        if (even) {
            if (near(k, *c.c_2m1, eps)) {
                t.pinned_at_fixed_point = true;
                break;
            }
            if (!in_band(c, k)) {
                t.exit_index = n;
                t.exit_value = k;
                break;
            }
        }
        if (n >= max_steps) break;
        try {
            k = h_map(c.m, k);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::PoleAtUnitPower) throw;
            t.pole_index = n + 1;
            break;
        }
        t.k_values.push_back(k);
    }
    return t;
}

Classification make(Verdict v) {
    Classification c;
    c.verdict = v;
    return c;
}

Classification breakdown_at(std::size_t step) {
    Classification c = make(Verdict::Breakdown);
    c.breakdown_step = step;
    return c;
}

Classification converges(double aec) {
    Classification c = make(Verdict::ConvergesLinearly);
    c.predicted_aec = aec;
    return c;
}

// Shared e0 screening; returns a verdict when e0 alone decides the outcome.
std::optional<Classification> screen_e0(double e0, const ClassifierOptions& opts) {
    if (e0 == 0.0) return make(Verdict::ExcludedByHypothesis);
    if (!std::isfinite(e0) || std::abs(e0) > opts.e0_budget * opts.domain_halfwidth) {
        return make(Verdict::Undetermined);
    }
    return std::nullopt;
}

Classification classify_even_with(const CharConstants<double>& c, double k0, double e0,
                                  const ClassifierOptions& opts) {
    if (!std::isfinite(k0)) throw Error(ErrorCode::BadFlags, "k0 must be finite");
    if (auto v = screen_e0(e0, opts)) return *v;

    const std::size_t steps =
        opts.max_steps.value_or(std::min(kMaxRatioSteps, escape_bound(c, k0) + 16));
    RatioTrace trace = iterate_ratio_with(c, k0, std::min(steps, kMaxRatioSteps), opts.eps);

    Classification out;
    if (trace.pinned_at_fixed_point) {
        // |c_2m1| > 1, so |e_n| = |c_2m1|^n |e_0| grows without bound.
        out = make(Verdict::Diverges);
    } else if (!trace.exit_index) {
        out = trace.pole_index ? breakdown_at(*trace.pole_index + 1) : make(Verdict::Undetermined);
    } else {
        const std::size_t l = *trace.exit_index;
        const double v = *trace.exit_value;
        if (near(v, 0.0, opts.eps)) {
            out = make(Verdict::ExcludedByHypothesis);  // x_{l+1} is the root
        } else if (near(v, 1.0, opts.eps)) {
            out = breakdown_at(l + 1);  // x_{l+1} == x_l
        } else if (near(v, -1.0, opts.eps)) {
            out = breakdown_at(l + 2);  // e_{l+1} = -e_l, so f(x_{l+1}) == f(x_l)
        } else if (near(v, *c.c_2m2, opts.eps)) {
            out = breakdown_at(l + 3);  // next ratio is exactly -1
        } else if (near(v, *c.c_2m1, opts.eps)) {
            out = make(Verdict::Diverges);
        } else {
            out = converges(c.c_m0);
        }
    }
    out.witness = std::move(trace);
    return out;
}

Classification classify_odd_with(const CharConstants<double>& c, double k0, double e0,
                                 const ClassifierOptions& opts) {
    if (!std::isfinite(k0)) throw Error(ErrorCode::BadFlags, "k0 must be finite");
    if (auto v = screen_e0(e0, opts)) return *v;
    if (near(k0, 0.0, opts.eps)) return make(Verdict::ExcludedByHypothesis);
    if (near(k0, 1.0, opts.eps)) return breakdown_at(1);
    if (near(k0, -1.0, opts.eps)) return breakdown_at(2);
    return converges(c.c_m0);
}

Classification classify_with(const CharConstants<double>& c, double k0, double e0, const ClassifierOptions& opts) {
    return c.m % 2 == 0 ? classify_even_with(c, k0, e0, opts) : classify_odd_with(c, k0, e0, opts);
}

template <Real T>
Classification simulate(int m, double k0, double e0, double c_m0) {
    const ProblemSpec<T> p = find_problem<T>("pure_power_" + std::to_string(m));
    const T x0(e0);
    const T x1 = T(k0) * T(e0);
    if (x0 == x1) return breakdown_at(1);

    const IterationTrace<T> trace = run_secant(p, x0, x1);
    switch (trace.termination) {
        case Termination::ExactRoot: return make(Verdict::ExcludedByHypothesis);
        case Termination::SecantBreakdown: return breakdown_at(trace.breakdown_index.value_or(0));
        case Termination::Diverged: return make(Verdict::Diverges);
        default: break;
    }
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        if (it->k) {
            const double tail = to_double(*it->k);
            if (std::abs(tail - c_m0) <= 1e-6) return converges(tail);
            break;
        }
    }
    return make(Verdict::Undetermined);
}

bool near_forbidden(const CharConstants<double>& c, double k, double radius) {
    if (near(k, -1.0, radius) || near(k, 0.0, radius) || near(k, 1.0, radius)) return true;
    return c.c_2m1 && (near(k, *c.c_2m1, radius) || near(k, *c.c_2m2, radius));
}

AgreementPoint agreement_point(const CharConstants<double>& c, double k0, double e0, Backend backend,
                               double exclusion) {
    AgreementPoint pt;
    pt.k0 = k0;
    pt.check.predicted = classify_with(c, k0, e0, {});
    pt.check.observed = backend == Backend::Binary64 ? simulate<double>(c.m, k0, e0, to_double(c.c_m0))
                                                      : simulate<DoubleDouble>(c.m, k0, e0, to_double(c.c_m0));
    pt.check.agree = pt.check.predicted.same_outcome(pt.check.observed);
    const auto& w = pt.check.predicted.witness;
    pt.excluded = near_forbidden(c, k0, exclusion) ||
                  (w && w->exit_value && w->exit_index.value_or(0) > 0 && near_forbidden(c, *w->exit_value, exclusion));
    return pt;
}

}  // namespace

std::size_t band_escape_bound(int m, double k0) {
    require_even(m);
    return escape_bound(CharConstants<double>::compute(m), k0);
}

RatioTrace iterate_ratio(int m, double k0, std::size_t max_steps) {
    require_multiplicity(m);
    if (!std::isfinite(k0)) throw Error(ErrorCode::BadFlags, "k0 must be finite");
    if (max_steps > kMaxRatioSteps) throw Error(ErrorCode::BadFlags, "max_steps exceeds 1e6");
    return iterate_ratio_with(CharConstants<double>::compute(m), k0, max_steps, ClassifierOptions{}.eps);
}

Classification classify_odd(int m, double k0, double e0, const ClassifierOptions& opts) {
    require_odd(m);
    return classify_odd_with(CharConstants<double>::compute(m), k0, e0, opts);
}

Classification classify_even(int m, double k0, double e0, const ClassifierOptions& opts) {
    require_even(m);
    return classify_even_with(CharConstants<double>::compute(m), k0, e0, opts);
}

Classification classify(int m, double k0, double e0, const ClassifierOptions& opts) {
    return m % 2 == 0 ? classify_even(m, k0, e0, opts) : classify_odd(m, k0, e0, opts);
}

std::vector<BasinPoint> basin_sweep_serial(int m, std::span<const double> k_grid, double e0,
                                           const ClassifierOptions& opts) {
    require_multiplicity(m);
    const auto c = CharConstants<double>::compute(m);
    std::vector<BasinPoint> out(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        out[i].k0 = k_grid[i];
        out[i].classification = classify_with(c, k_grid[i], e0, opts);
    }
    return out;
}

std::vector<BasinPoint> basin_sweep(int m, std::span<const double> k_grid, double e0,
                                    const ClassifierOptions& opts) {
    require_multiplicity(m);
    for (double k : k_grid) {
        if (!std::isfinite(k)) throw Error(ErrorCode::BadFlags, "grid values must be finite");
    }
    const auto c = CharConstants<double>::compute(m);
    std::vector<BasinPoint> out(k_grid.size());
    const auto n = static_cast<std::ptrdiff_t>(k_grid.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx].k0 = k_grid[idx];
        out[idx].classification = classify_with(c, k_grid[idx], e0, opts);
    }
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    if (n == 0 || !(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorCode::BadFlags, "grid needs n >= 1 and finite lo <= hi");
    }
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    g[n - 1] = hi;
    return g;
}

SimulationCheck verify_against_simulation(int m, double k0, double e0, Backend backend,
                                          const ClassifierOptions& opts) {
    require_multiplicity(m);
    const auto c = CharConstants<double>::compute(m);
    SimulationCheck out;
    out.predicted = classify_with(c, k0, e0, opts);
    out.observed = backend == Backend::Binary64 ? simulate<double>(m, k0, e0, c.c_m0)
                                                : simulate<DoubleDouble>(m, k0, e0, c.c_m0);
    out.agree = out.predicted.same_outcome(out.observed);
    return out;
}

std::vector<AgreementPoint> agreement_sweep_serial(int m, std::span<const double> k_grid, double e0,
                                                   Backend backend, double exclusion) {
    require_multiplicity(m);
    const auto c = CharConstants<double>::compute(m);
    std::vector<AgreementPoint> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) out.push_back(agreement_point(c, k, e0, backend, exclusion));
    return out;
}

std::vector<AgreementPoint> agreement_sweep(int m, std::span<const double> k_grid, double e0, Backend backend,
                                            double exclusion) {
    require_multiplicity(m);
    const auto c = CharConstants<double>::compute(m);
    std::vector<AgreementPoint> out(k_grid.size());
    const auto n = static_cast<std::ptrdiff_t>(k_grid.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx] = agreement_point(c, k_grid[idx], e0, backend, exclusion);
    }
    return out;
}

}  // namespace seclab
