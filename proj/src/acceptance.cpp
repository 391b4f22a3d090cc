#include "seclab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "seclab/analysis.hpp"
#include "seclab/constants.hpp"
#include "seclab/dynamics.hpp"
#include "seclab/functions.hpp"
#include "seclab/iterate.hpp"
#include "seclab/numerics.hpp"

namespace seclab {

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Double-double traces stop on the last iterate the backend resolves; one
// more step rounds onto the root and f evaluates to exactly 0.
IterationTrace<DoubleDouble> secant_dd_trace() {
    StoppingCriteria<DoubleDouble> stop;
    stop.max_iter = 5;
    return run_secant(find_problem<DoubleDouble>("quadratic_sqrt2"), DoubleDouble(1.4), DoubleDouble(1.5), stop);
}

IterationTrace<DoubleDouble> newton_dd_trace() {
    StoppingCriteria<DoubleDouble> stop;
    stop.max_iter = 4;
    return run_newton(find_problem<DoubleDouble>("quadratic_sqrt2"), DoubleDouble(1.5), stop);
}

Outcome c1_secant_order() {
    const auto est = estimate_q_order(secant_dd_trace());
    return {est.p_hat >= 1.568 && est.p_hat <= 1.668, fmt("p_hat=%.6f", est.p_hat)};
}

Outcome c2_secant_aec() {
    const auto p = find_problem<DoubleDouble>("quadratic_sqrt2");
    const double theory = to_double(theoretical_aec_simple(p));
    const auto est = estimate_q_order(secant_dd_trace(), std::numbers::phi);
    const bool ok = std::abs(est.c_hat - theory) <= 0.1 * theory;
    return {ok, fmt("c_hat=%.6f theory=%.6f", est.c_hat, theory)};
}

Outcome c3_newton() {
    const auto est = estimate_q_order(newton_dd_trace(), 2.0);
    const double c = 1.0 / (2.0 * std::numbers::sqrt2);
    const bool ok = est.p_hat >= 1.9 && est.p_hat <= 2.1 && std::abs(est.c_hat - c) <= 0.1 * c;
    return {ok, fmt("p_hat=%.6f c_hat=%.6f", est.p_hat, est.c_hat)};
}

std::optional<double> tail_ratio(const IterationTrace<double>& t) {
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
        if (it->k) return *it->k;
    }
    return std::nullopt;
}

Outcome c4_multiple_root() {
    const double expected[] = {0.6180339887, 0.7548776662, 0.8191725134};
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 4; ++m) {
        const auto p = find_problem<double>("pure_power_" + std::to_string(m));
        const auto t = run_secant(p, 1e-3, 0.5e-3);
        const auto k = tail_ratio(t);
        const bool good = k && std::abs(*k - expected[m - 2]) <= 1e-6;
        ok = ok && good;
        detail += fmt("m=%d k=%.10f ", m, k.value_or(NAN));
    }
    return {ok, detail};
}

Outcome c5_mixed() {
    const auto p = find_problem<double>("shifted_power_2_mixed");
    const auto t = run_secant(p, 1.0 + 1e-4, 1.0 + 0.5e-4);
    const auto k = tail_ratio(t);
    const double c = solve_c_m0<double>(2);
    return {k && std::abs(*k - c) <= 1e-4, fmt("k=%.8f", k.value_or(NAN))};
}

Outcome c6_divergence() {
    const auto p = find_problem<double>("pure_power_2");
    const double e0 = 1e-3;
    const auto t = run_secant(p, e0, -std::numbers::phi * e0);
    bool growth = t.steps.size() > 20;
    double worst = 0.0;
    for (std::size_t n = 0; growth && n < 20; ++n) {
        const double g = *t.steps[n + 1].E / *t.steps[n].E;
        worst = std::max(worst, std::abs(g - std::numbers::phi));
    }
    growth = growth && worst <= 1e-3;
    return {t.termination == Termination::Diverged && growth,
            fmt("termination=%s max|growth-1.618|=%.2e", std::string(to_string(t.termination)).c_str(), worst)};
}

Outcome c7_breakdown() {
    const auto p = find_problem<double>("pure_power_2");
    const auto a = run_secant(p, 1e-3, -1e-3);
    const auto b = run_secant(p, 1e-3, -2e-3);
    const bool ok = a.termination == Termination::SecantBreakdown && a.breakdown_index == 2u &&
                    b.termination == Termination::SecantBreakdown && b.breakdown_index == 3u;
    return {ok, fmt("k0=-1 -> %zu, k0=-2 -> %zu", a.breakdown_index.value_or(0), b.breakdown_index.value_or(0))};
}

Outcome c8_constants() {
    double worst = 0.0;
    for (int m = 2; m <= 8; ++m) worst = std::max(worst, CharConstants<double>::compute(m).max_residual());
    const bool exact = solve_c_2m2<double>(2) == -2.0;
    bool fixed_ok = true;
    for (int m : {2, 4}) {
        const auto c = CharConstants<double>::compute(m);
        const auto fp = find_fixed_points<double>(m, -3.0, 3.0, 10000);
        fixed_ok = fixed_ok && fp.size() == 2 && std::abs(fp[0] - *c.c_2m1) <= 1e-10 &&
                   std::abs(fp[1] - c.c_m0) <= 1e-10;
    }
    return {worst <= 1e-13 && exact && fixed_ok,
            fmt("max residual=%.2e c22==-2:%d fixed points ok:%d", worst, exact, fixed_ok)};
}

Outcome c9_agreement() {
    const auto grid = uniform_grid(-3.0, 3.0, 401);
    bool ok = true;
    std::string detail;
    for (int m : {2, 4}) {
        const auto pts = agreement_sweep(m, grid, 1e-4, Backend::Binary64);
        std::size_t used = 0;
        std::size_t agree = 0;
        for (const auto& p : pts) {
            if (p.excluded) continue;
            ++used;
            agree += p.check.agree ? 1 : 0;
        }
        const double rate = used ? static_cast<double>(agree) / static_cast<double>(used) : 0.0;
        ok = ok && rate >= 0.99;
        detail += fmt("m=%d %zu/%zu ", m, agree, used);
    }
    return {ok, detail};
}

Outcome c10_fibonacci() {
    bool binet_ok = true;
    for (unsigned n = 0; n <= 78; ++n) {
        binet_ok = binet_ok && static_cast<uint128>(std::llround(binet<double>(n))) == fib(n);
    }
    bool shift_ok = true;
    const double eps = RealTraits<DoubleDouble>::epsilon();
    for (unsigned n = 0; n <= 100; ++n) {
        const double bound = 10.0 * eps * to_double(to_real<DoubleDouble>(fib(n + 1)));
        shift_ok = shift_ok && to_double(fib_shift_identity<DoubleDouble>(n)) <= bound;
    }
    return {binet_ok && shift_ok, fmt("binet n<=78:%d shift n<=100:%d", binet_ok, shift_ok)};
}

Outcome c11_efficiency() {
    const double thr = efficiency_threshold();
    bool ok = std::abs(thr - 0.44042) <= 1e-4;
    for (int i = 0; i < 100; ++i) {
        const double s = (i + 0.5) / 100.0;
        const auto r = efficiency_continuous(1.0, s, 8.577);
        ok = ok && ((r.T_S < r.T_N) == (s > thr));
    }
    return {ok, fmt("threshold=%.6f", thr)};
}

Outcome c12_error_identity() {
    StoppingCriteria<double> stop;
    stop.max_iter = 8;
    stop.precision_floor = 0.0;
    const auto t = run_secant(find_problem<double>("quadratic_sqrt2"), 1.0, 2.0, stop);
    const double r = check_error_relation_quadratic(t, 2.0);
    return {r <= 1e-12, fmt("steps=%zu residual=%.2e", t.steps.size(), r)};
}

Outcome c13_diagnostic() {
    std::vector<double> z;
    std::vector<double> y;
    for (int n = 1; n <= 20; ++n) {
        z.push_back(std::pow(0.5, n - 1));
        y.push_back(std::pow(0.5, n + (n % 2 == 0 ? 1 : -1)));
    }
    const auto dz = ratio_diagnostic(z);
    const auto dy = ratio_diagnostic(y);
    const bool ok = dz.kind == DiagnosticKind::QLinear && std::abs(dz.c - 0.5) <= 1e-6 &&
                    dy.kind == DiagnosticKind::Oscillating;
    return {ok, fmt("z:%s(%.6f) y:%s(%.4g,%.4g)", std::string(to_string(dz.kind)).c_str(), dz.c,
                    std::string(to_string(dy.kind)).c_str(), dy.lo, dy.hi)};
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    bool double_double;
    Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "secant Q-order", 0.1, true, c1_secant_order},
    {2, "secant AEC", 0.1, true, c2_secant_aec},
    {3, "Newton Q-order and AEC", 0.1, true, c3_newton},
    {4, "multiple-root linear rate", 0.5, false, c4_multiple_root},
    {5, "non-monomial multiple root", 0.1, false, c5_mixed},
    {6, "divergence at the repelling fixed point", 0.1, false, c6_divergence},
    {7, "breakdown examples", 0.1, false, c7_breakdown},
    {8, "characteristic constants", 1.0, false, c8_constants},
    {9, "classifier vs simulation", 10.0, false, c9_agreement},
    {10, "Fibonacci identities", 0.1, true, c10_fibonacci},
    {11, "efficiency threshold", 0.1, false, c11_efficiency},
    {12, "quadratic error identity", 0.1, false, c12_error_identity},
    {13, "R-linear vs Q-linear diagnostic", 0.1, false, c13_diagnostic},
};

}  // namespace

Suite parse_suite(std::string_view name) {
    if (name == "fast") return Suite::Fast;
    if (name == "full") return Suite::Full;
    throw Error(ErrorCode::BadFlags, "unknown suite '" + std::string(name) + "' (fast|full)");
}

std::vector<CriterionResult> run_acceptance(Suite suite) {
    std::vector<CriterionResult> out;
    for (const auto& c : kCriteria) {
        if (suite == Suite::Fast && c.double_double) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.limit_seconds = c.limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.limit_seconds) {
            r.pass = false;
            r.detail += fmt(" (over time limit %.1fs)", r.limit_seconds);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    std::string detail = r.detail;
    while (!detail.empty() && detail.back() == ' ') detail.pop_back();
    return fmt("%s  %2d  %-40s %8.4fs  %s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
               detail.c_str());
}

}  // namespace seclab
