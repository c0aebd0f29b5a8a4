#include "splitdde/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace splitdde {

namespace {

constexpr double kAlignTolerance = 1e-9;

bool near_integer(double value, long& rounded) {
    rounded = std::lround(value);
    return std::abs(value - static_cast<double>(rounded)) <= kAlignTolerance * std::max(1.0, std::abs(value));
}

}  // namespace

double norm(const Vector& v, VectorNorm kind) {
    if (v.size() == 0) return 0.0;
    switch (kind) {
        case VectorNorm::Euclidean: return v.norm();
        case VectorNorm::Max: return v.lpNorm<Eigen::Infinity>();
    }
    return v.norm();
}

double matrix_norm(const Matrix& m, VectorNorm kind) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    switch (kind) {
        case VectorNorm::Euclidean: {
            Eigen::JacobiSVD<Matrix> svd(m);
            return svd.singularValues()(0);
        }
        case VectorNorm::Max: return m.cwiseAbs().rowwise().sum().maxCoeff();
    }
    return 0.0;
}

double log_norm(const Matrix& m, VectorNorm kind) {
    if (m.rows() == 1 && m.cols() == 1) return m(0, 0);
    switch (kind) {
        case VectorNorm::Euclidean: {
            const Matrix sym = 0.5 * (m + m.transpose());
            Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
            return eig.eigenvalues().maxCoeff();
        }
        case VectorNorm::Max: {
            double worst = -std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                double row = m(i, i);
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    if (j != i) row += std::abs(m(i, j));
                }
                worst = std::max(worst, row);
            }
            return worst;
        }
    }
    return 0.0;
}

int cells_per_unit(double grid_step) {
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
        throw ConfigError("grid step must be a positive finite number");
    }
    long cells = 0;
    if (!near_integer(1.0 / grid_step, cells) || cells < 1) {
        std::ostringstream msg;
        msg << "grid step " << grid_step << " does not divide [-1,0] into a whole number of cells";
        throw ConfigError(msg.str());
    }
    return static_cast<int>(cells);
}

int aligned_cells(double t, double grid_step) {
    if (!(t >= 0.0)) throw AlignmentError("shift length must be non-negative");
    long cells = 0;
    if (!near_integer(t / grid_step, cells)) {
        std::ostringstream msg;
        msg << "length " << t << " is not a multiple of the history grid step " << grid_step;
        throw AlignmentError(msg.str());
    }
    return static_cast<int>(cells);
}

}  // namespace splitdde
