#include "splitdde/history.hpp"

#include <algorithm>
#include <cmath>

namespace splitdde {

namespace {

void require_same_grid(const HistorySegment& a, const HistorySegment& b) {
    if (a.dim() != b.dim() || a.cells() != b.cells()) {
        throw ConfigError("history segments live on different grids");
    }
}

}  // namespace

HistorySegment::HistorySegment(double grid_step, Matrix nodes)
    : grid_step_(0.0), cells_(cells_per_unit(grid_step)), nodes_(std::move(nodes)) {
    grid_step_ = 1.0 / cells_;
    if (nodes_.rows() < 1) throw ConfigError("history dimension must be positive");
    if (nodes_.cols() != cells_ + 1) {
        throw ConfigError("history needs exactly 1/grid_step + 1 nodes");
    }
}

HistorySegment HistorySegment::zero(int dim, double grid_step) {
    if (dim < 1) throw ConfigError("history dimension must be positive");
    const int cells = cells_per_unit(grid_step);
    return HistorySegment(grid_step, Matrix::Zero(dim, cells + 1));
}

Vector HistorySegment::at(double sigma) const {
    const double pos = std::clamp((sigma + 1.0) * cells_, 0.0, static_cast<double>(cells_));
    const int left = std::min(static_cast<int>(pos), cells_ - 1);
    const double w = pos - left;
    return (1.0 - w) * nodes_.col(left) + w * nodes_.col(left + 1);
}

DelayState::DelayState(Vector head, HistorySegment history)
    : head_(std::move(head)), history_(std::move(history)) {
    if (head_.size() != history_.dim()) {
        throw ConfigError("head and history dimensions differ");
    }
}

bool DelayState::compatible(double tol) const {
    return (history_.back() - head_).lpNorm<Eigen::Infinity>() <= tol;
}

HistorySegment history_from_function(const HistoryFunction& g, int dim, double grid_step) {
    if (dim < 1) throw ConfigError("history dimension must be positive");
    const int cells = cells_per_unit(grid_step);
    Matrix nodes(dim, cells + 1);
    for (int i = 0; i <= cells; ++i) {
        const double sigma = -1.0 + static_cast<double>(i) / cells;
        Vector v = g(sigma);
        if (v.size() != dim) throw ConfigError("history function returned a vector of the wrong dimension");
        nodes.col(i) = v;
    }
    return HistorySegment(grid_step, std::move(nodes));
}

double l1_norm(const HistorySegment& f, VectorNorm kind) {
    const int n = f.cells();
    double sum = 0.5 * (norm(f.node(0), kind) + norm(f.node(n), kind));
    for (int i = 1; i < n; ++i) sum += norm(f.node(i), kind);
    return sum * f.grid_step();
}

double product_norm(const DelayState& u, VectorNorm kind) {
    return norm(u.head(), kind) + l1_norm(u.history(), kind);
}

double total_variation(const HistorySegment& f, VectorNorm kind) {
    double tv = 0.0;
    for (int i = 0; i < f.cells(); ++i) tv += norm(f.node(i + 1) - f.node(i), kind);
    return tv;
}

HistorySegment resample(const HistorySegment& f, double grid_step) {
    const int cells = cells_per_unit(grid_step);
    if (cells == f.cells()) return f;
    Matrix nodes(f.dim(), cells + 1);
    for (int i = 0; i <= cells; ++i) nodes.col(i) = f.at(-1.0 + static_cast<double>(i) / cells);
    return HistorySegment(grid_step, std::move(nodes));
}

HistorySegment operator+(const HistorySegment& a, const HistorySegment& b) {
    require_same_grid(a, b);
    return HistorySegment(a.grid_step(), a.nodes() + b.nodes());
}

HistorySegment operator-(const HistorySegment& a, const HistorySegment& b) {
    require_same_grid(a, b);
    return HistorySegment(a.grid_step(), a.nodes() - b.nodes());
}

HistorySegment operator*(double alpha, const HistorySegment& f) {
    return HistorySegment(f.grid_step(), alpha * f.nodes());
}

DelayState operator+(const DelayState& a, const DelayState& b) {
    return DelayState(a.head() + b.head(), a.history() + b.history());
}

DelayState operator-(const DelayState& a, const DelayState& b) {
    return DelayState(a.head() - b.head(), a.history() - b.history());
}

DelayState operator*(double alpha, const DelayState& u) {
    return DelayState(alpha * u.head(), alpha * u.history());
}

}  // namespace splitdde
