#include "seclab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seclab {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// The secant order samples overshoot and undershoot r0 in turn; for three
// alternating values the Aitken delta-squared limit is a better summary than
// any of them. The correction never exceeds the last step.
std::optional<double> aitken_if_alternating(std::span<const double> v) {
    if (v.size() < 3) return std::nullopt;
    const double a = v[v.size() - 3];
    const double b = v[v.size() - 2];
    const double c = v[v.size() - 1];
    const double d1 = b - a;
    const double d2 = c - b;
    if (!(d1 * d2 < 0.0)) return std::nullopt;
    double corr = d2 * d2 / (d2 - d1);
    corr = std::clamp(corr, -std::abs(d2), std::abs(d2));
    return c - corr;
}

double summarize(std::span<const double> v) {
    if (auto x = aitken_if_alternating(v)) return *x;
    return median({v.begin(), v.end()});
}

}  // namespace

OrderEstimate estimate_q_order(std::span<const double> E, std::optional<double> assumed_order) {
    if (E.size() < 5) throw Error(ErrorCode::InsufficientData, "need at least 5 error values");
    std::vector<double> lnE(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (!(E[i] > 0.0) || !std::isfinite(E[i])) {
            throw Error(ErrorCode::InsufficientData, "error values must be positive and finite");
        }
        lnE[i] = std::log(E[i]);
    }

    std::vector<std::size_t> idx;
    std::vector<double> p;
    for (std::size_t n = 1; n + 1 < E.size(); ++n) {
        const double den = lnE[n] - lnE[n - 1];
        if (den == 0.0) continue;
        const double pn = (lnE[n + 1] - lnE[n]) / den;
        if (!std::isfinite(pn)) continue;
        idx.push_back(n);
        p.push_back(pn);
    }
    if (p.size() < 3) throw Error(ErrorCode::InsufficientData, "fewer than 3 usable order samples");

    const std::size_t drop = std::min<std::size_t>(2, p.size() - 3);
    const std::span<const double> win(p.begin() + static_cast<std::ptrdiff_t>(drop), p.end());

    OrderEstimate out;
    out.p_hat = summarize(win);
    out.samples_used = win.size();
    out.window = {idx[drop], idx.back()};

    const double q = assumed_order.value_or(out.p_hat);
    std::vector<double> log_c;
    for (std::size_t i = drop; i < idx.size(); ++i) {
        const std::size_t n = idx[i];
        log_c.push_back(lnE[n + 1] - q * lnE[n]);
    }
    out.c_hat = std::exp(assumed_order ? summarize(log_c) : median(log_c));
    return out;
}

std::string_view to_string(DiagnosticKind k) noexcept {
    switch (k) {
        case DiagnosticKind::QLinear: return "QLinear";
        case DiagnosticKind::Oscillating: return "Oscillating";
        case DiagnosticKind::Superlinear: return "Superlinear";
        case DiagnosticKind::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

RatioDiagnostic ratio_diagnostic(std::span<const double> E) {
    if (E.size() < 8) throw Error(ErrorCode::InsufficientData, "need at least 8 terms");
    for (double x : E) {
        if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InsufficientData, "terms must be positive");
    }
    std::vector<double> r;
    for (std::size_t i = 0; i + 1 < E.size(); ++i) r.push_back(E[i + 1] / E[i]);

    RatioDiagnostic out;

    const std::size_t quart = std::max<std::size_t>(2, r.size() / 4);
    const auto [qmin, qmax] = std::minmax_element(r.end() - static_cast<std::ptrdiff_t>(quart), r.end());
    double qmean = 0.0;
    for (auto it = r.end() - static_cast<std::ptrdiff_t>(quart); it != r.end(); ++it) qmean += *it;
    qmean /= static_cast<double>(quart);
    if (qmean > 0.0 && qmean < 1.0 && (*qmax - *qmin) / qmean < 1e-2) {
        out.kind = DiagnosticKind::QLinear;
        out.c = qmean;
        return out;
    }

    const std::size_t half = std::max<std::size_t>(4, r.size() / 2);
    const std::span<const double> tail(r.end() - static_cast<std::ptrdiff_t>(half), r.end());

    bool alternates = true;
    for (std::size_t i = 2; i < tail.size(); ++i) {
        if (!((tail[i] - tail[i - 1]) * (tail[i - 1] - tail[i - 2]) < 0.0)) alternates = false;
    }
    if (alternates) {
        double lo[2] = {tail[0], tail[1]};
        double hi[2] = {tail[0], tail[1]};
        double sum[2] = {0.0, 0.0};
        std::size_t cnt[2] = {0, 0};
        for (std::size_t i = 0; i < tail.size(); ++i) {
            lo[i % 2] = std::min(lo[i % 2], tail[i]);
            hi[i % 2] = std::max(hi[i % 2], tail[i]);
            sum[i % 2] += tail[i];
            ++cnt[i % 2];
        }
        const double m0 = sum[0] / static_cast<double>(cnt[0]);
        const double m1 = sum[1] / static_cast<double>(cnt[1]);
        const double width = std::max(hi[0] - lo[0], hi[1] - lo[1]);
        const double sep = std::abs(m0 - m1);
        if (sep > 10.0 * width && sep > 1e-2 * std::max(m0, m1)) {
            out.kind = DiagnosticKind::Oscillating;
            out.lo = std::min(m0, m1);
            out.hi = std::max(m0, m1);
            return out;
        }
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        if (!(tail[i] < tail[i - 1])) decreasing = false;
    }
    if (decreasing && tail.back() < 0.1 * tail.front()) out.kind = DiagnosticKind::Superlinear;
    return out;
}

double efficiency_threshold() {
    return std::numbers::ln2 / std::log(std::numbers::phi) - 1.0;
}

EfficiencyReport efficiency_report(double m_cost, double s, double m_alpha, double E0, double eps_target) {
    if (!(m_cost > 0.0) || !(s >= 0.0) || !(m_alpha > 0.0) || !(E0 > 0.0) || !(eps_target > 0.0)) {
        throw Error(ErrorCode::InvalidRegime, "m_cost, m_alpha, E0, eps_target must be positive and s >= 0");
    }
    if (!(m_alpha * E0 < 1.0) || !(m_alpha * eps_target < 1.0) || !(eps_target < E0)) {
        throw Error(ErrorCode::InvalidRegime, "need m_alpha*E0 < 1, m_alpha*eps < 1 and eps < E0");
    }
    EfficiencyReport r;
    r.K = std::log(m_alpha * eps_target) / std::log(m_alpha * E0);
    r.s = s;
    r.m_cost = m_cost;
    r.threshold = efficiency_threshold();
    r.T_N = (1.0 + s) * m_cost * std::ceil(std::log2(r.K));
    r.T_S = m_cost * std::ceil(std::log(r.K) / std::log(std::numbers::phi));
    return r;
}

EfficiencyReport efficiency_continuous(double m_cost, double s, double K) {
    if (!(m_cost > 0.0) || !(s >= 0.0) || !(K > 1.0)) {
        throw Error(ErrorCode::InvalidRegime, "need m_cost > 0, s >= 0 and K > 1");
    }
    EfficiencyReport r;
    r.K = K;
    r.s = s;
    r.m_cost = m_cost;
    r.threshold = efficiency_threshold();
    r.T_N = (1.0 + s) * m_cost * std::log2(K);
    r.T_S = m_cost * std::log(K) / std::log(std::numbers::phi);
    return r;
}

template <Real T>
OrderReport order_report(const IterationTrace<T>& trace, const ProblemSpec<T>& p) {
    OrderReport r;
    if (p.root) {
        if (p.multiplicity >= 2) {
            r.theoretical_p = 1.0;
            r.theoretical_c = trace.method == Method::Secant
                                  ? solve_c_m0<double>(p.multiplicity)
                                  : static_cast<double>(p.multiplicity - 1) / p.multiplicity;
        } else {
            try {
                const double m_alpha = to_double(curvature_ratio(p).m_alpha);
                if (m_alpha > 0.0) {
                    r.theoretical_p = trace.method == Method::Secant ? std::numbers::phi : 2.0;
                    r.theoretical_c = trace.method == Method::Secant
                                          ? to_double(theoretical_aec_simple(p))
                                          : m_alpha;
                }
            } catch (const Error&) {
            }
        }
    }
    try {
        const OrderEstimate est = estimate_q_order(trace, r.theoretical_p);
        r.p_hat = est.p_hat;
        r.c_hat = est.c_hat;
    } catch (const Error& e) {
        r.verdict = "refused: " + std::string(to_string(e.code()));
        return r;
    }
    if (!r.theoretical_p) {
        r.verdict = "no_theory";
    } else {
        const bool p_ok = std::abs(*r.p_hat - *r.theoretical_p) <= 0.05 * *r.theoretical_p;
        const bool c_ok = std::abs(*r.c_hat - *r.theoretical_c) <= 0.1 * *r.theoretical_c;
        r.verdict = p_ok && c_ok ? "consistent" : "inconsistent";
    }
    return r;
}

template OrderReport order_report<double>(const IterationTrace<double>&, const ProblemSpec<double>&);
template OrderReport order_report<DoubleDouble>(const IterationTrace<DoubleDouble>&,
                                                const ProblemSpec<DoubleDouble>&);

}  // namespace seclab
