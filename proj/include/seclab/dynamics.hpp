#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seclab/constants.hpp"
#include "seclab/real.hpp"

namespace seclab {

/// The sequence k0, h_m(k0), h_m(h_m(k0)), ... For even m it stops at the
/// first term outside the band B = (c_2m2, c_2m1) U (c_2m1, -1).
struct RatioTrace {
    int m = 2;
    std::vector<double> k_values;
    std::optional<std::size_t> exit_index;
    std::optional<double> exit_value;
    // A term landed within eps of the repelling fixed point c_2m1; the exact
    // sequence is constant from there on, so iteration stops.
    bool pinned_at_fixed_point = false;
    // Index of the term h_m could not produce (pole of the map).
    std::optional<std::size_t> pole_index;
};

enum class Verdict { ConvergesLinearly, Diverges, Breakdown, ExcludedByHypothesis, Undetermined };

std::string_view to_string(Verdict v) noexcept;

struct Classification {
    Verdict verdict = Verdict::Undetermined;
    std::optional<std::size_t> breakdown_step;  // set iff verdict == Breakdown
    std::optional<double> predicted_aec;        // set iff verdict == ConvergesLinearly
    std::optional<RatioTrace> witness;

    bool same_outcome(const Classification& other) const {
        return verdict == other.verdict && breakdown_step == other.breakdown_step;
    }
};

struct ClassifierOptions {
    double eps = 1e-12;              // neighbourhood radius for the forbidden values
    double domain_halfwidth = 1.0;   // e0 must satisfy |e0| <= e0_budget * domain_halfwidth
    double e0_budget = 1e-3;
    std::optional<std::size_t> max_steps;  // default: band-escape bound + margin, capped at 1e6
};

inline constexpr std::size_t kMaxRatioSteps = 1'000'000;

bool in_band(const CharConstants<double>& c, double k);

/// Upper bound on the steps the exact ratio sequence spends in the band,
/// from the expansion factor C = 1 + 1/(2^m - 1)^2 of successive differences.
std::size_t band_escape_bound(int m, double k0);

RatioTrace iterate_ratio(int m, double k0, std::size_t max_steps);

/// Odd multiplicity: every k0 outside {-1, 0, 1} converges linearly for small e0.
Classification classify_odd(int m, double k0, double e0, const ClassifierOptions& opts = {});

/// Even multiplicity: decided by the first term of the ratio sequence that
/// leaves the band.
Classification classify_even(int m, double k0, double e0, const ClassifierOptions& opts = {});

Classification classify(int m, double k0, double e0, const ClassifierOptions& opts = {});

struct BasinPoint {
    double k0 = 0.0;
    Classification classification;
};

/// Classification per grid point, computed in parallel. Output order follows
/// the grid and is independent of the thread count.
std::vector<BasinPoint> basin_sweep(int m, std::span<const double> k_grid, double e0,
                                    const ClassifierOptions& opts = {});

/// Single-threaded reference for basin_sweep.
std::vector<BasinPoint> basin_sweep_serial(int m, std::span<const double> k_grid, double e0,
                                           const ClassifierOptions& opts = {});

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

struct SimulationCheck {
    Classification predicted;
    Classification observed;
    bool agree = false;
};

/// Runs the secant method on x^m from x0 = e0, x1 = k0 e0 and compares the
/// observed fate with the classifier's prediction.
SimulationCheck verify_against_simulation(int m, double k0, double e0, Backend backend,
                                          const ClassifierOptions& opts = {});

struct AgreementPoint {
    double k0 = 0.0;
    bool excluded = false;  // too close to a forbidden value to be meaningful
    SimulationCheck check;
};

/// verify_against_simulation over a grid, in parallel. Points within
/// `exclusion` of {-1, 0, 1, c_2m1, c_2m2}, or whose band exit lands that
/// close to them, are flagged as excluded.
std::vector<AgreementPoint> agreement_sweep(int m, std::span<const double> k_grid, double e0,
                                            Backend backend, double exclusion = 1e-3);

std::vector<AgreementPoint> agreement_sweep_serial(int m, std::span<const double> k_grid, double e0,
                                                   Backend backend, double exclusion = 1e-3);

}  // namespace seclab
