#pragma once

#include "splitdde/operators.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace splitdde {

/// Marching parameters: n steps of h = (end - start)/n on a history grid of
/// spacing h/grid_refine.
struct SplitConfig {
    double start_time = 0.0;
    double end_time = 1.0;
    int steps = 1;
    int grid_refine = 1;
    /// Record every k-th step (k >= 1); 0 records the final state only.
    int record_every = 1;

    [[nodiscard]] double step() const noexcept { return (end_time - start_time) / steps; }
    [[nodiscard]] double grid_step() const noexcept { return step() / grid_refine; }

    /// Throws ConfigError/AlignmentError on bad values, h > 1, or a history
    /// grid step that does not divide 1.
    void validate() const;
};

/// Conditions under which the first-order guarantee does not apply.
struct RunFlags {
    bool resampled_history = false;
    bool incompatible_initial_data = false;
    bool outside_theory = false;

    [[nodiscard]] std::string describe() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> heads;
    DelayState final_state;
    RunFlags flags;
};

/// One step T^(r)(h) S^(r)(h) u: delay kick first, then the frozen flow.
[[nodiscard]] DelayState split_step(const DelayState& u, double r, double h, const ProblemSpec& spec);

/// The product formula truncated at n factors with frozen times
/// r_p = start + p h. Throws NumericalError if the state stops being finite.
[[nodiscard]] Trajectory run(const ProblemSpec& spec, const SplitConfig& cfg);

/// Same marching loop from an explicit state at cfg.start_time; the state's
/// grid must already match cfg.grid_step().
[[nodiscard]] Trajectory run_from(const ProblemSpec& spec, const DelayState& initial, const SplitConfig& cfg);

struct StabilityReport {
    int trials = 0;
    double max_ratio = 0.0;
    double omega = 0.0;
    double bound = 0.0;           ///< exp(omega (t - s))
    double discrete_bound = 0.0;  ///< (1 + h ||Phi||)^n (1 + h)^n
    double tolerance = 0.0;
    double declared_phi_bound = 0.0;
    double observed_phi_norm = 0.0;
    bool phi_bound_ok = true;
    bool generator_contractive = true;
    bool outside_theory = false;
    bool strict = false;
    bool pass = false;

    [[nodiscard]] std::string describe() const;
};

/// Marches `trials` random unit-norm classical states (f(0) = x) and compares
/// the worst growth ratio against exp(omega (t - s)), omega = 1 + Phi.bound.
/// Also samples ||Phi(r)|| against the declared bound and checks that the
/// generator is contractive at every frozen time. `strict` turns a
/// non-contractive generator into a failure.
[[nodiscard]] StabilityReport stability_witness(const ProblemSpec& spec, const SplitConfig& cfg, int trials,
                                                std::uint64_t seed = 20240607, double tolerance = 1e-3,
                                                bool strict = false);

}  // namespace splitdde
