#pragma once

// The two exactly solvable factors of one splitting step.
//
// T^(r)(t) acts on (x, f) as
//     x  -> exp(tA(r)) x
//     f  -> V_t x + T0(t) f
// where T0 is the nilpotent left shift and V_t writes the orbit
// sigma -> exp((t + sigma)A(r)) x into the vacated window [-t, 0].
//
// S^(r)(t) = I + tB(r) acts as x -> x + t Phi(r) f and leaves f alone.

#include "splitdde/problem.hpp"

namespace splitdde {

/// exp(duration * A(source_time)).
struct SemigroupAction {
    double source_time;
    double duration;
    Matrix matrix;
};

/// Matrix exponential; scalar exp for 1x1.
[[nodiscard]] Matrix expm(const Matrix& a);

[[nodiscard]] SemigroupAction semigroup_action(const GeneratorFamily& family, double source_time, double duration);

/// (T0(t)f)(sigma) = f(t + sigma) on [-1,-t), 0 on [-t,0]. `t` must be a whole
/// number of grid cells.
[[nodiscard]] HistorySegment left_shift(const HistorySegment& f, double t);

/// (V_t x)(sigma) = exp((t + sigma)A(r)) x on [-t,0], 0 on [-1,-t).
[[nodiscard]] HistorySegment embed_head(const Vector& x, double r, double t, const GeneratorFamily& family,
                                        double grid_step);

[[nodiscard]] DelayState apply_T(const DelayState& u, double r, double h, const GeneratorFamily& family);

/// Phi(t) f: trapezoid on the history grid for distributed kernels, the
/// sigma = -1 node for point delays.
[[nodiscard]] Vector apply_Phi(double t, const HistorySegment& f, const DelayOperatorFamily& phi);

[[nodiscard]] DelayState apply_S(const DelayState& u, double r, double h, const DelayOperatorFamily& phi);

}  // namespace splitdde
