#include "seclab/functions.hpp"

#include <algorithm>

namespace seclab {

namespace {

template <Real T>
ProblemSpec<T> pure_power(int m) {
    ProblemSpec<T> p;
    p.id = "pure_power_" + std::to_string(m);
    p.formula = "x^" + std::to_string(m);
    p.f = [m](const T& x) { return ipow(x, m); };
    p.f1 = [m](const T& x) { return T(static_cast<double>(m)) * ipow(x, m - 1); };
    p.f2 = [m](const T& x) {
        return m < 2 ? T(0.0) : T(static_cast<double>(m * (m - 1))) * ipow(x, m - 2);
    };
    p.root = T(0.0);
    p.multiplicity = m;
    p.domain_halfwidth = T(1.0);
    return p;
}

// (x-1)^m (x+2): an m-fold root at 1 that is not a monomial.
template <Real T>
ProblemSpec<T> shifted_power(int m) {
    ProblemSpec<T> p;
    p.id = "shifted_power_" + std::to_string(m) + "_mixed";
    p.formula = "(x-1)^" + std::to_string(m) + "*(x+2)";
    const T one(1.0);
    const T two(2.0);
    const T mm(static_cast<double>(m));
    p.f = [=](const T& x) { return ipow(x - one, m) * (x + two); };
    p.f1 = [=](const T& x) {
        const T u = x - one;
        return mm * ipow(u, m - 1) * (x + two) + ipow(u, m);
    };
    p.f2 = [=](const T& x) {
        const T u = x - one;
        const T a = m >= 2 ? T(static_cast<double>(m * (m - 1))) * ipow(u, m - 2) * (x + two) : T(0.0);
        return a + T(2.0) * mm * ipow(u, m - 1);
    };
    p.root = one;
    p.multiplicity = m;
    p.domain_halfwidth = T(1.0);
    return p;
}

}  // namespace

template <Real T>
std::vector<ProblemSpec<T>> builtin_corpus() {
    std::vector<ProblemSpec<T>> corpus;

    {
        ProblemSpec<T> p;
        p.id = "quadratic_sqrt2";
        p.formula = "x^2-2";
        p.f = [](const T& x) { return x * x - T(2.0); };
        p.f1 = [](const T& x) { return T(2.0) * x; };
        p.f2 = [](const T&) { return T(2.0); };
        p.root = real_sqrt(T(2.0));
        p.multiplicity = 1;
        p.domain_halfwidth = T(0.5);
        corpus.push_back(std::move(p));
    }
    {
        ProblemSpec<T> p;
        p.id = "cubic_simple";
        p.formula = "(x-1)*(x^2+1)";
        p.f = [](const T& x) { return (x - T(1.0)) * (x * x + T(1.0)); };
        p.f1 = [](const T& x) { return T(3.0) * x * x - T(2.0) * x + T(1.0); };
        p.f2 = [](const T& x) { return T(6.0) * x - T(2.0); };
        p.root = T(1.0);
        p.multiplicity = 1;
        p.domain_halfwidth = T(0.5);
        corpus.push_back(std::move(p));
    }
    {
        ProblemSpec<T> p;
        p.id = "linear";
        p.formula = "x";
        p.f = [](const T& x) { return x; };
        p.f1 = [](const T&) { return T(1.0); };
        p.f2 = [](const T&) { return T(0.0); };
        p.root = T(0.0);
        p.multiplicity = 1;
        p.domain_halfwidth = T(1.0);
        corpus.push_back(std::move(p));
    }
    for (int m = 2; m <= 6; ++m) corpus.push_back(pure_power<T>(m));
    for (int m = 2; m <= 4; ++m) corpus.push_back(shifted_power<T>(m));
    return corpus;
}

std::vector<std::string> corpus_ids() {
    std::vector<std::string> ids;
    for (const auto& p : builtin_corpus<double>()) ids.push_back(p.id);
    return ids;
}

template <Real T>
ProblemSpec<T> find_problem(std::string_view id) {
    for (auto& p : builtin_corpus<T>()) {
        if (p.id == id) return p;
    }
    throw Error(ErrorCode::UnknownProblem, "no problem with id '" + std::string(id) + "'");
}

template <Real T>
CurvatureRatio<T> curvature_ratio(const ProblemSpec<T>& p) {
    if (p.multiplicity != 1) {
        throw Error(ErrorCode::NotSimpleRoot, p.id + " has multiplicity " + std::to_string(p.multiplicity));
    }
    const T& a = p.require_root();
    const T d1 = p.f1(a);
    if (d1 == T(0.0)) throw Error(ErrorCode::ZeroDerivative, p.id + ": f'(root) = 0");
    return {real_abs(p.f2(a) / (T(2.0) * d1))};
}

template <Real T>
T central_difference(const std::function<T(const T&)>& f, const T& x, const T& h, int order) {
    // sum_i (-1)^i C(order, i) f(x + (order/2 - i) h) / h^order
    T acc(0.0);
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
        const T offset = T(0.5 * order - i) * h;
        const T term = T(binom) * f(x + offset);
        acc += (i % 2 == 0) ? term : -term;
        binom = binom * (order - i) / (i + 1);
    }
    return acc / ipow(h, order);
}

template <Real T>
bool check_multiplicity(const ProblemSpec<T>& p, int claimed_m, std::optional<T> h) {
    if (claimed_m < 1 || !p.root) return false;
    const T step = h.value_or(T(1e-3) * p.domain_halfwidth);
    const T a = *p.root;

    std::vector<T> d;
    for (int j = 1; j <= claimed_m + 1; ++j) d.push_back(real_abs(central_difference<T>(p.f, a, step, j)));
    const T dm = d[static_cast<std::size_t>(claimed_m - 1)];
    const T d_next = d[static_cast<std::size_t>(claimed_m)];

    // Below order m the differences shrink like h^(m-j) against the m-th one.
    for (int j = 1; j < claimed_m; ++j) {
        const T tol = T(10.0) * ipow(step, claimed_m - j) * dm;
        if (d[static_cast<std::size_t>(j - 1)] > tol) return false;
    }
    return dm > T(0.0) && dm > T(10.0) * step * d_next;
}

template <Real T>
bool check_multiplicity(const ProblemSpec<T>& p, std::optional<T> h) {
    return check_multiplicity(p, p.multiplicity, h);
}

#define SECLAB_INSTANTIATE(T)                                                                   \
    template std::vector<ProblemSpec<T>> builtin_corpus<T>();                                   \
    template ProblemSpec<T> find_problem<T>(std::string_view);                                  \
    template CurvatureRatio<T> curvature_ratio<T>(const ProblemSpec<T>&);                        \
    template bool check_multiplicity<T>(const ProblemSpec<T>&, std::optional<T>);               \
    template bool check_multiplicity<T>(const ProblemSpec<T>&, int, std::optional<T>);          \
    template T central_difference<T>(const std::function<T(const T&)>&, const T&, const T&, int);

SECLAB_INSTANTIATE(double)
SECLAB_INSTANTIATE(DoubleDouble)

#undef SECLAB_INSTANTIATE

}  // namespace seclab
