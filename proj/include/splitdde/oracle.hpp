#pragma once

#include "splitdde/splitting.hpp"

#include <string>
#include <vector>

namespace splitdde {

enum class OracleScheme {
    Euler,
    RK4,
};

struct OracleConfig {
    /// Fine step h_ref; 1/h_ref must be an integer so breaking points s + k
    /// land on the grid.
    double fine_step = 1e-4;
    OracleScheme scheme = OracleScheme::RK4;
    /// Gauss panels per unit length for the delay integral.
    int panels_per_unit = 32;
};

/// Fine-grid solution on [s, t_end] with C^1 cubic Hermite dense output,
/// extended by the initial history on [s - 1, s).
class ReferenceSolution {
public:
    [[nodiscard]] double start_time() const noexcept { return times_.front(); }
    [[nodiscard]] double end_time() const noexcept { return times_.back(); }
    [[nodiscard]] double fine_step() const noexcept { return fine_step_; }
    [[nodiscard]] int dim() const noexcept { return dim_; }

    [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
    [[nodiscard]] const std::vector<Vector>& values() const noexcept { return values_; }

    /// u(t) for t in [s - 1, t_end].
    [[nodiscard]] Vector value(double t) const;

    /// The segment u_t sampled on a grid of spacing `grid_step`.
    [[nodiscard]] HistorySegment history_at(double t, double grid_step) const;

    /// (u(t), u_t) on the given history grid.
    [[nodiscard]] DelayState state_at(double t, double grid_step) const;

    /// Fine-grid samples every `stride` steps (the last sample is always kept).
    [[nodiscard]] Trajectory trajectory(int stride, double grid_step) const;

private:
    friend ReferenceSolution solve_reference(const ProblemSpec&, double, const OracleConfig&);

    ReferenceSolution(int dim, double fine_step, HistoryFunction initial)
        : dim_(dim), fine_step_(fine_step), initial_(std::move(initial)) {}

    int dim_;
    double fine_step_;
    HistoryFunction initial_;
    std::vector<double> times_;
    std::vector<Vector> values_;
    std::vector<Vector> slopes_;
};

/// Method of steps on a fixed fine grid. The delay integral is evaluated with
/// Gauss-Legendre panels split at the breaking points s + k and, on the most
/// recent cell, against the quadratic through (u_k, u'_k, stage value).
[[nodiscard]] ReferenceSolution solve_reference(const ProblemSpec& spec, double t_end,
                                                const OracleConfig& cfg = {});

struct OracleCheck {
    double fine_step = 0.0;
    double coarse_value = 0.0;  ///< ||u_{h_ref}(t_end)||
    double estimated_error = 0.0;
    double threshold = 0.0;
    bool pass = false;

    [[nodiscard]] std::string describe() const;
};

/// Solves with h_ref and h_ref/2 and reports the Richardson estimate
/// ||u_h - u_{h/2}|| / (2^p - 1) of the error at t_end.
[[nodiscard]] OracleCheck oracle_self_check(const ProblemSpec& spec, double t_end, double threshold = 1e-8,
                                            const OracleConfig& cfg = {});

}  // namespace splitdde
