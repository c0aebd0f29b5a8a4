#include "splitdde/operators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace splitdde {

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw ConfigError("matrix exponential needs a square matrix");
    if (a.rows() == 1) return Matrix::Constant(1, 1, std::exp(a(0, 0)));
    return a.exp();
}

SemigroupAction semigroup_action(const GeneratorFamily& family, double source_time, double duration) {
    if (!(duration >= 0.0)) throw ConfigError("semigroup duration must be non-negative");
    if (duration == 0.0) return {source_time, duration, Matrix::Identity(family.dim(), family.dim())};
    return {source_time, duration, expm(duration * family(source_time))};
}

HistorySegment left_shift(const HistorySegment& f, double t) {
    const int k = aligned_cells(t, f.grid_step());
    if (k == 0) return f;
    const int cells = f.cells();
    Matrix nodes = Matrix::Zero(f.dim(), cells + 1);
    // Node i < cells - k lies in [-1,-t) and reads f at sigma_i + t.
    for (int i = 0; i + k < cells; ++i) nodes.col(i) = f.nodes().col(i + k);
    return HistorySegment(f.grid_step(), std::move(nodes));
}

namespace {

// Writes exp((t + sigma_i) A) x into nodes i = cells - k .. cells.
void write_orbit(Matrix& nodes, const Vector& x, const Matrix& a, int k, double grid_step) {
    const int cells = static_cast<int>(nodes.cols()) - 1;
    const int first = std::max(cells - k, 0);
    for (int i = first; i <= cells; ++i) {
        const double elapsed = (i - (cells - k)) * grid_step;
        if (a.rows() == 1) {
            nodes(0, i) = std::exp(elapsed * a(0, 0)) * x(0);
        } else {
            nodes.col(i) = expm(elapsed * a) * x;
        }
    }
}

}  // namespace

HistorySegment embed_head(const Vector& x, double r, double t, const GeneratorFamily& family, double grid_step) {
    const int cells = cells_per_unit(grid_step);
    const int k = aligned_cells(t, grid_step);
    if (x.size() != family.dim()) throw ConfigError("head dimension does not match the generator");
    Matrix nodes = Matrix::Zero(family.dim(), cells + 1);
    if (k > cells) {
        // Window longer than the history: only sigma in [-1,0] is kept, at
        // elapsed time t + sigma.
        const Matrix a = family(r);
        for (int i = 0; i <= cells; ++i) {
            const double elapsed = t - 1.0 + i * (1.0 / cells);
            nodes.col(i) = expm(elapsed * a) * x;
        }
    } else {
        write_orbit(nodes, x, family(r), k, 1.0 / cells);
    }
    return HistorySegment(grid_step, std::move(nodes));
}

DelayState apply_T(const DelayState& u, double r, double h, const GeneratorFamily& family) {
    const HistorySegment& f = u.history();
    const int k = aligned_cells(h, f.grid_step());
    if (k == 0) return u;
    if (k > f.cells()) {
        return DelayState(semigroup_action(family, r, h).matrix * u.head(),
                          embed_head(u.head(), r, h, family, f.grid_step()));
    }
    const Matrix a = family(r);
    Matrix nodes(f.dim(), f.cells() + 1);
    for (int i = 0; i + k < f.cells(); ++i) nodes.col(i) = f.nodes().col(i + k);
    write_orbit(nodes, u.head(), a, k, f.grid_step());
    Vector head = nodes.col(f.cells());
    return DelayState(std::move(head), HistorySegment(f.grid_step(), std::move(nodes)));
}

Vector apply_Phi(double t, const HistorySegment& f, const DelayOperatorFamily& phi) {
    if (f.dim() != phi.dim()) throw ConfigError("history dimension does not match the delay operator");
    if (const auto* p = std::get_if<PointWeight>(&phi.variant())) return p->weight(t) * f.front();
    const auto& kernel = std::get<DistributedKernel>(phi.variant()).kernel;
    const int cells = f.cells();
    Vector acc = Vector::Zero(f.dim());
    for (int i = 0; i <= cells; ++i) {
        const double w = (i == 0 || i == cells) ? 0.5 : 1.0;
        acc.noalias() += w * (kernel(t, f.sigma(i)) * f.nodes().col(i));
    }
    return f.grid_step() * acc;
}

DelayState apply_S(const DelayState& u, double r, double h, const DelayOperatorFamily& phi) {
    if (!(h >= 0.0)) throw ConfigError("step must be non-negative");
    if (h == 0.0) return u;
    return DelayState(u.head() + h * apply_Phi(r, u.history(), phi), u.history());
}

}  // namespace splitdde
