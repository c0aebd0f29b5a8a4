#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace splitdde {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Norm used on the finite-dimensional state space X = R^d.
enum class VectorNorm {
    Euclidean,
    Max,
};

[[nodiscard]] double norm(const Vector& v, VectorNorm kind = VectorNorm::Euclidean);

/// Operator norm induced by `kind` (spectral norm or max row sum).
[[nodiscard]] double matrix_norm(const Matrix& m, VectorNorm kind = VectorNorm::Euclidean);

/// Logarithmic norm induced by `kind`. exp(tA) is a contraction for all
/// t >= 0 exactly when this is <= 0.
[[nodiscard]] double log_norm(const Matrix& m, VectorNorm kind = VectorNorm::Euclidean);

/// Bad input: grid that does not tile [-1,0], mismatched dimensions,
/// malformed config.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A shift or embedding length that is not a whole number of history cells.
class AlignmentError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Non-finite or overflowing state encountered while marching.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, long step, double state_norm)
        : std::runtime_error(what), step_(step), state_norm_(state_norm) {}

    [[nodiscard]] long step() const noexcept { return step_; }
    [[nodiscard]] double state_norm() const noexcept { return state_norm_; }

private:
    long step_;
    double state_norm_;
};

/// Number of cells of width `grid_step` in [-1,0]; throws ConfigError unless
/// 1/grid_step is a positive integer (relative tolerance 1e-9).
[[nodiscard]] int cells_per_unit(double grid_step);

/// Number of cells of width `grid_step` covered by a shift of length `t`;
/// throws AlignmentError unless t is a non-negative whole multiple.
[[nodiscard]] int aligned_cells(double t, double grid_step);

}  // namespace splitdde
