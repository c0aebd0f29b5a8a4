#include "splitdde/problem.hpp"

#include <cmath>

namespace splitdde {

GeneratorFamily::GeneratorFamily(int dim, Eval eval, double bound, bool autonomous)
    : dim_(dim), eval_(std::move(eval)), bound_(bound), autonomous_(autonomous) {
    if (dim_ < 1) throw ConfigError("generator dimension must be positive");
    if (!eval_) throw ConfigError("generator family needs an evaluation function");
    if (!(bound_ >= 0.0)) throw ConfigError("generator bound must be non-negative");
}

GeneratorFamily GeneratorFamily::constant(const Matrix& a) {
    if (a.rows() != a.cols()) throw ConfigError("generator matrix must be square");
    return GeneratorFamily(static_cast<int>(a.rows()), [a](double) { return a; }, matrix_norm(a), true);
}

Matrix GeneratorFamily::operator()(double t) const {
    Matrix a = eval_(t);
    if (a.rows() != dim_ || a.cols() != dim_) throw ConfigError("generator returned a matrix of the wrong shape");
    if (!a.allFinite()) throw NumericalError("generator has non-finite entries at t = " + std::to_string(t), -1, NAN);
    return a;
}

bool GeneratorFamily::contractive_at(double t, VectorNorm kind, double tol) const {
    return log_norm((*this)(t), kind) <= tol;
}

DelayOperatorFamily::DelayOperatorFamily(int dim, Variant variant, double bound)
    : dim_(dim), variant_(std::move(variant)), bound_(bound) {
    if (dim_ < 1) throw ConfigError("delay operator dimension must be positive");
    if (!(bound_ >= 0.0)) throw ConfigError("delay operator bound must be non-negative");
    const bool callable = std::visit([](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, DistributedKernel>) {
            return static_cast<bool>(v.kernel);
        } else {
            return static_cast<bool>(v.weight);
        }
    }, variant_);
    if (!callable) throw ConfigError("delay operator needs a kernel or weight function");
}

DelayOperatorFamily DelayOperatorFamily::zero(int dim) {
    return distributed(dim, [dim](double, double) { return Matrix::Zero(dim, dim); }, 0.0);
}

DelayOperatorFamily DelayOperatorFamily::distributed(int dim, std::function<Matrix(double, double)> kernel,
                                                     double bound) {
    return DelayOperatorFamily(dim, DistributedKernel{std::move(kernel)}, bound);
}

DelayOperatorFamily DelayOperatorFamily::point(int dim, std::function<Matrix(double)> weight, double bound) {
    return DelayOperatorFamily(dim, PointWeight{std::move(weight)}, bound);
}

DelayOperatorFamily DelayOperatorFamily::with_bound(double bound) const {
    return DelayOperatorFamily(dim_, variant_, bound);
}

double DelayOperatorFamily::sampled_norm(double t, double grid_step, VectorNorm kind) const {
    if (const auto* p = std::get_if<PointWeight>(&variant_)) return matrix_norm(p->weight(t), kind);
    const auto& k = std::get<DistributedKernel>(variant_);
    const int cells = cells_per_unit(grid_step);
    double worst = 0.0;
    for (int i = 0; i <= cells; ++i) {
        worst = std::max(worst, matrix_norm(k.kernel(t, -1.0 + static_cast<double>(i) / cells), kind));
    }
    return worst;
}

ProblemSpec::ProblemSpec(GeneratorFamily generator, DelayOperatorFamily delay_op, double initial_time,
                         Vector initial_head, HistorySegment initial_history,
                         std::optional<HistoryFunction> initial_function, bool classical)
    : generator_(std::move(generator)),
      delay_op_(std::move(delay_op)),
      initial_time_(initial_time),
      initial_head_(std::move(initial_head)),
      initial_history_(std::move(initial_history)),
      initial_function_(std::move(initial_function)) {
    const int d = generator_.dim();
    if (delay_op_.dim() != d || initial_head_.size() != d || initial_history_.dim() != d) {
        throw ConfigError("problem dimensions disagree");
    }
    if (!std::isfinite(initial_time_)) throw ConfigError("initial time must be finite");
    if (classical && !compatible(1e-12)) {
        throw ConfigError("classical initial data requires f(0) = x");
    }
}

bool ProblemSpec::compatible(double tol) const {
    return (history_value(0.0) - initial_head_).lpNorm<Eigen::Infinity>() <= tol;
}

Vector ProblemSpec::history_value(double sigma) const {
    if (initial_function_) return (*initial_function_)(sigma);
    return initial_history_.at(sigma);
}

HistorySegment ProblemSpec::history_on(double grid_step, bool* resampled) const {
    if (resampled) *resampled = false;
    if (initial_function_) return history_from_function(*initial_function_, dim(), grid_step);
    const int cells = cells_per_unit(grid_step);
    if (cells == initial_history_.cells()) return initial_history_;
    if (resampled) *resampled = true;
    return resample(initial_history_, grid_step);
}

DelayState ProblemSpec::initial_state(double grid_step, bool* resampled) const {
    return DelayState(initial_head_, history_on(grid_step, resampled));
}

ProblemSpec ProblemSpec::with_generator(GeneratorFamily generator) const {
    return ProblemSpec(std::move(generator), delay_op_, initial_time_, initial_head_, initial_history_,
                       initial_function_);
}

ProblemSpec ProblemSpec::with_delay(DelayOperatorFamily delay_op) const {
    return ProblemSpec(generator_, std::move(delay_op), initial_time_, initial_head_, initial_history_,
                       initial_function_);
}

ProblemSpec ProblemSpec::scaled(double alpha) const {
    std::optional<HistoryFunction> fn;
    if (initial_function_) {
        fn = [g = *initial_function_, alpha](double sigma) -> Vector { return alpha * g(sigma); };
    }
    return ProblemSpec(generator_, delay_op_, initial_time_, alpha * initial_head_, alpha * initial_history_,
                       std::move(fn));
}

}  // namespace splitdde
