#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seclab/error.hpp"
#include "seclab/real.hpp"

namespace seclab {

/// A scalar test problem with closed-form first and second derivatives.
///
/// `root` is empty for problems whose root is unknown; the iteration engines
/// then record only x and f(x).
template <Real T>
struct ProblemSpec {
    std::string id;
    std::string formula;
    std::function<T(const T&)> f;
    std::function<T(const T&)> f1;
    std::function<T(const T&)> f2;
    std::optional<T> root;
    int multiplicity = 1;
    T domain_halfwidth = T(1.0);

    const T& require_root() const {
        if (!root) throw Error(ErrorCode::WrongProblem, "problem '" + id + "' has no known root");
        return *root;
    }
};

template <Real T>
struct CurvatureRatio {
    T m_alpha;
};

/// The built-in corpus: simple roots (quadratic_sqrt2, cubic_simple, linear),
/// pure powers x^m for m = 2..6 and shifted powers (x-1)^m (x+2) for m = 2..4.
template <Real T>
std::vector<ProblemSpec<T>> builtin_corpus();

std::vector<std::string> corpus_ids();

/// Throws UnknownProblem when `id` is not in the corpus.
template <Real T>
ProblemSpec<T> find_problem(std::string_view id);

/// |f''(a) / (2 f'(a))| at the root a. Requires a simple root with f'(a) != 0.
template <Real T>
CurvatureRatio<T> curvature_ratio(const ProblemSpec<T>& p);

/// Numerical multiplicity check from central differences of orders 1..m+1
/// at the root with step h (default 1e-3 of the domain half-width).
template <Real T>
bool check_multiplicity(const ProblemSpec<T>& p, std::optional<T> h = std::nullopt);

/// Same check with an explicitly claimed multiplicity instead of p.multiplicity.
template <Real T>
bool check_multiplicity(const ProblemSpec<T>& p, int claimed_m, std::optional<T> h = std::nullopt);

/// Central difference approximation of f^(order) at x with step h.
template <Real T>
T central_difference(const std::function<T(const T&)>& f, const T& x, const T& h, int order);

}  // namespace seclab
