#pragma once

#include "splitdde/types.hpp"

#include <functional>

namespace splitdde {

/// A history function f: [-1,0] -> R^d sampled on a uniform grid.
///
/// Node i sits at sigma_i = -1 + i * grid_step, i = 0 .. cells, so the first
/// node is f(-1) and the last is f(0). Between nodes the segment is read as
/// piecewise linear. Instances are immutable.
class HistorySegment {
public:
    /// `nodes` is dim x (cells + 1), one column per grid node.
    HistorySegment(double grid_step, Matrix nodes);

    [[nodiscard]] static HistorySegment zero(int dim, double grid_step);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(nodes_.rows()); }
    [[nodiscard]] double grid_step() const noexcept { return grid_step_; }
    [[nodiscard]] int cells() const noexcept { return cells_; }
    [[nodiscard]] int node_count() const noexcept { return cells_ + 1; }
    [[nodiscard]] double sigma(int i) const noexcept { return -1.0 + static_cast<double>(i) / cells_; }

    [[nodiscard]] const Matrix& nodes() const noexcept { return nodes_; }
    [[nodiscard]] Vector node(int i) const { return nodes_.col(i); }
    [[nodiscard]] Vector front() const { return nodes_.col(0); }
    [[nodiscard]] Vector back() const { return nodes_.col(cells_); }

    /// Piecewise-linear readout at sigma in [-1,0].
    [[nodiscard]] Vector at(double sigma) const;

    [[nodiscard]] bool all_finite() const { return nodes_.allFinite(); }

private:
    double grid_step_;
    int cells_;
    Matrix nodes_;
};

/// Element (x, f) of the product space X x L^1([-1,0]; X).
class DelayState {
public:
    DelayState(Vector head, HistorySegment history);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(head_.size()); }
    [[nodiscard]] const Vector& head() const noexcept { return head_; }
    [[nodiscard]] const HistorySegment& history() const noexcept { return history_; }

    /// f(0) == x within `tol` (max-norm), the domain condition for classical data.
    [[nodiscard]] bool compatible(double tol = 1e-12) const;

    [[nodiscard]] bool all_finite() const { return head_.allFinite() && history_.all_finite(); }

private:
    Vector head_;
    HistorySegment history_;
};

using HistoryFunction = std::function<Vector(double)>;

/// Samples g at every node of the grid with spacing `grid_step`.
[[nodiscard]] HistorySegment history_from_function(const HistoryFunction& g, int dim, double grid_step);

/// Composite trapezoid of ||f(sigma)|| over the nodes.
[[nodiscard]] double l1_norm(const HistorySegment& f, VectorNorm kind = VectorNorm::Euclidean);

/// ||x|| + ||f||_1.
[[nodiscard]] double product_norm(const DelayState& u, VectorNorm kind = VectorNorm::Euclidean);

/// Sum of ||f(sigma_{i+1}) - f(sigma_i)||: the exact ||f'||_1 of the
/// piecewise-linear representative.
[[nodiscard]] double total_variation(const HistorySegment& f, VectorNorm kind = VectorNorm::Euclidean);

/// Linear interpolation of `f` onto a grid with spacing `grid_step`.
[[nodiscard]] HistorySegment resample(const HistorySegment& f, double grid_step);

// Vector-space operations on states; grids must match.
[[nodiscard]] HistorySegment operator+(const HistorySegment& a, const HistorySegment& b);
[[nodiscard]] HistorySegment operator-(const HistorySegment& a, const HistorySegment& b);
[[nodiscard]] HistorySegment operator*(double alpha, const HistorySegment& f);
[[nodiscard]] DelayState operator+(const DelayState& a, const DelayState& b);
[[nodiscard]] DelayState operator-(const DelayState& a, const DelayState& b);
[[nodiscard]] DelayState operator*(double alpha, const DelayState& u);

}  // namespace splitdde
