#pragma once

#include <cstdint>

#include "lindiff/boundary.hpp"

namespace lindiff {

struct SimConfig {
    double step_h = 0.0;             // natural-scale lattice step (0 = auto)
    long max_steps = 50'000'000;     // censoring cap per path
    std::uint64_t seed = 0;
};

enum class Terminal { HitLeft, HitRight, Killed, Censored };

const char* to_string(Terminal t);

struct PathResult {
    Terminal terminal = Terminal::Censored;
    double lifetime = 0.0;  // model time units
    long steps = 0;
};

/// One path of the natural-scale walk: +-h coin flips on the s-image lattice,
/// time and killing clocks fed by the tent kernel against m and k, killing by
/// the exponential-threshold construction. Deterministic given cfg.seed.
PathResult simulate_path(const DiffusionSpec& spec, double x0, double a, double b,
                         const SimConfig& cfg);

struct HittingEstimate {
    double p_hat = 0.0;
    double ci_halfwidth = 0.0;  // 99% binomial (normal approximation)
    double formula_p = 0.0;     // (s(x)-s(a)) / (s(b)-s(a))
    double slack = 0.0;         // grid alignment + certification allowance
    long n_used = 0;
    long censored = 0;
    bool pass = false;  // |p_hat - formula_p| <= ci + slack
    bool too_many_censored = false;
};

HittingEstimate estimate_hitting(const DiffusionSpec& spec, double a, double x, double b,
                                 long n_paths, const SimConfig& cfg);

struct ExitTimeEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n_used = 0;
    long censored = 0;
};

/// Sample mean lifetime of exits from (a,b); compare with mean_exit_time
/// (bias is O(h) for non-flat speed measures).
ExitTimeEstimate estimate_exit_time(const DiffusionSpec& spec, double a, double x, double b,
                                    long n_paths, const SimConfig& cfg);

struct SurvivalEstimate {
    double fraction = 0.0;  // alive (not killed, not absorbed) at the horizon
    long n_paths = 0;
    long indeterminate = 0;  // censored by max_steps before the horizon
};

SurvivalEstimate estimate_survival(const DiffusionSpec& spec, double x, double horizon,
                                   long n_paths, const SimConfig& cfg);

}  // namespace lindiff
