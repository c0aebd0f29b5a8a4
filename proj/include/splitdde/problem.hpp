#pragma once

#include "splitdde/history.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace splitdde {

/// Time-dependent generator t -> A(t) of the undelayed part.
class GeneratorFamily {
public:
    using Eval = std::function<Matrix(double)>;

    /// `bound` is the user-declared sup-norm of A, used only in reports.
    /// `autonomous` marks families whose value does not depend on t.
    GeneratorFamily(int dim, Eval eval, double bound, bool autonomous = false);

    [[nodiscard]] static GeneratorFamily constant(const Matrix& a);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double bound() const noexcept { return bound_; }
    [[nodiscard]] bool autonomous() const noexcept { return autonomous_; }

    /// A(t); throws NumericalError on non-finite entries.
    [[nodiscard]] Matrix operator()(double t) const;

    /// Logarithmic norm of A(t) is <= tol, i.e. exp(hA(t)) is a contraction.
    [[nodiscard]] bool contractive_at(double t, VectorNorm kind = VectorNorm::Euclidean, double tol = 1e-12) const;

private:
    int dim_;
    Eval eval_;
    double bound_;
    bool autonomous_;
};

/// Delay functional Phi(t) g = int_{-1}^0 mu(t, sigma) g(sigma) dsigma.
struct DistributedKernel {
    std::function<Matrix(double, double)> kernel;
};

/// Delay functional Phi(t) g = mu(t) g(-1). Not bounded on L^1, so it lies
/// outside the convergence theory; supported for experiments.
struct PointWeight {
    std::function<Matrix(double)> weight;
};

class DelayOperatorFamily {
public:
    using Variant = std::variant<DistributedKernel, PointWeight>;

    DelayOperatorFamily(int dim, Variant variant, double bound);

    [[nodiscard]] static DelayOperatorFamily zero(int dim);
    [[nodiscard]] static DelayOperatorFamily distributed(int dim, std::function<Matrix(double, double)> kernel,
                                                         double bound);
    [[nodiscard]] static DelayOperatorFamily point(int dim, std::function<Matrix(double)> weight, double bound);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double bound() const noexcept { return bound_; }
    [[nodiscard]] const Variant& variant() const noexcept { return variant_; }
    [[nodiscard]] bool is_point() const noexcept { return std::holds_alternative<PointWeight>(variant_); }
    [[nodiscard]] bool outside_theory() const noexcept { return is_point(); }

    /// Copy of this family with a different declared bound.
    [[nodiscard]] DelayOperatorFamily with_bound(double bound) const;

    /// Sampled operator norm of Phi(t): max over the grid nodes of
    /// ||mu(t, sigma)|| (distributed) or ||mu(t)|| (point).
    [[nodiscard]] double sampled_norm(double t, double grid_step, VectorNorm kind = VectorNorm::Euclidean) const;

private:
    int dim_;
    Variant variant_;
    double bound_;
};

/// Initial value problem u' = A(t)u + Phi(t)u_t, u(s) = x, u_s = f.
class ProblemSpec {
public:
    ProblemSpec(GeneratorFamily generator, DelayOperatorFamily delay_op, double initial_time, Vector initial_head,
                HistorySegment initial_history, std::optional<HistoryFunction> initial_function = std::nullopt,
                bool classical = false);

    [[nodiscard]] const GeneratorFamily& generator() const noexcept { return generator_; }
    [[nodiscard]] const DelayOperatorFamily& delay_op() const noexcept { return delay_op_; }
    [[nodiscard]] double initial_time() const noexcept { return initial_time_; }
    [[nodiscard]] const Vector& initial_head() const noexcept { return initial_head_; }
    [[nodiscard]] const HistorySegment& initial_history() const noexcept { return initial_history_; }
    [[nodiscard]] const std::optional<HistoryFunction>& initial_function() const noexcept { return initial_function_; }
    [[nodiscard]] int dim() const noexcept { return generator_.dim(); }

    /// f(0) == x; the order-one estimates need this together with f in W^{1,1}.
    [[nodiscard]] bool compatible(double tol = 1e-12) const;

    /// f evaluated at sigma in [-1,0], exact when an initial function is set.
    [[nodiscard]] Vector history_value(double sigma) const;

    /// Initial history on a grid with the given spacing. Samples the initial
    /// function when available, otherwise interpolates linearly and sets
    /// `*resampled` when the grid had to change.
    [[nodiscard]] HistorySegment history_on(double grid_step, bool* resampled = nullptr) const;

    [[nodiscard]] DelayState initial_state(double grid_step, bool* resampled = nullptr) const;

    // Variants used by sweeps and checks.
    [[nodiscard]] ProblemSpec with_generator(GeneratorFamily generator) const;
    [[nodiscard]] ProblemSpec with_delay(DelayOperatorFamily delay_op) const;
    /// Initial data multiplied by alpha.
    [[nodiscard]] ProblemSpec scaled(double alpha) const;

private:
    GeneratorFamily generator_;
    DelayOperatorFamily delay_op_;
    double initial_time_;
    Vector initial_head_;
    HistorySegment initial_history_;
    std::optional<HistoryFunction> initial_function_;
};

}  // namespace splitdde
