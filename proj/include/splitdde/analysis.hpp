#pragma once

#include "splitdde/oracle.hpp"

#include <string>
#include <vector>

namespace splitdde {

struct StateError {
    double head = 0.0;
    double product = 0.0;
};

/// Error of `approx` against the reference at time t, on approx's history
/// grid: ||x - u(t)|| and ||x - u(t)|| + ||f - u_t||_1 (trapezoid on nodes).
[[nodiscard]] StateError state_error(const DelayState& approx, double t, const ReferenceSolution& ref,
                                     VectorNorm kind = VectorNorm::Euclidean);

/// Max over recorded samples of ||head - u(t)||.
[[nodiscard]] double max_pointwise_deviation(const Trajectory& traj, const ReferenceSolution& ref);

/// Least-squares slope of log(error) against log(h) over the last ceil(n/2)
/// points. Returns NaN when fewer than two usable (positive) errors remain.
[[nodiscard]] double fit_order(const std::vector<double>& h_values, const std::vector<double>& errors);

/// log2(e_i / e_{i+1}) for successive pairs.
[[nodiscard]] std::vector<double> pairwise_orders(const std::vector<double>& h_values,
                                                  const std::vector<double>& errors);

struct ConvergenceReport {
    std::vector<int> steps;
    std::vector<double> h_values;
    std::vector<double> head_errors;
    std::vector<double> product_errors;
    std::vector<double> head_pair_orders;
    std::vector<double> product_pair_orders;
    double head_order = 0.0;
    double product_order = 0.0;
    /// All product errors <= 1e-12: the splitting is exact for this problem.
    bool exact = false;
    RunFlags flags;

    [[nodiscard]] bool errors_strictly_decrease() const;
    [[nodiscard]] std::string summary() const;
};

/// Error at t_end against one shared reference solve for each n in `n_values`
/// (strictly increasing, at least three). Runs are executed concurrently.
[[nodiscard]] ConvergenceReport convergence_study(const ProblemSpec& spec, double t_end,
                                                  const std::vector<int>& n_values, int grid_refine = 1,
                                                  const OracleConfig& oracle = {});

struct LocalErrorReport {
    std::vector<double> h_values;
    std::vector<double> head_errors;
    std::vector<double> product_errors;
    /// e(h_i) / e(h_{i+1}) in the product norm.
    std::vector<double> ratios;
};

/// Error of a single splitting step from s to s + h.
[[nodiscard]] LocalErrorReport local_error_study(const ProblemSpec& spec, const std::vector<double>& h_values,
                                                 int grid_refine = 1, const OracleConfig& oracle = {});

struct ScalingReport {
    std::vector<double> alphas;
    std::vector<double> errors;
    /// |e(alpha) - alpha e(1)| / (alpha e(1)), zero for alpha = 0 when e(0) = 0.
    std::vector<double> deviations;
    double tolerance = 1e-10;
    bool pass = false;
};

/// Local error at step h for initial data scaled by each alpha; linearity
/// forces e(alpha) = |alpha| e(1).
[[nodiscard]] ScalingReport error_constant_scaling(const ProblemSpec& spec, double h,
                                                   const std::vector<double>& alphas = {0.0, 1.0, 2.0, 4.0},
                                                   int grid_refine = 1, const OracleConfig& oracle = {});

struct LongTimeSummary {
    Trajectory trajectory;
    double min_head = 0.0;
    double max_head = 0.0;
    /// Strict sign changes of the discrete derivative of the tracked component.
    int sign_changes = 0;
    bool monotone_decreasing = false;
};

/// Counts strict sign changes of successive differences (zero differences
/// are skipped).
[[nodiscard]] int derivative_sign_changes(const std::vector<double>& samples);

[[nodiscard]] LongTimeSummary long_time_run(const ProblemSpec& spec, double t_end, int steps, int grid_refine = 1,
                                            int component = 0);

/// sup_k |a_k - b_k| for trajectories recorded at the same times.
[[nodiscard]] double sup_difference(const Trajectory& a, const Trajectory& b, int component = 0);

}  // namespace splitdde
