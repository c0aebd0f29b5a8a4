#pragma once

// Plain-text problem description.
//
//   # comment
//   dim = 1
//   start_time = 0
//   head = 1
//   history.0 = 1 -1              # f_0(sigma) = 1 - sigma (polynomial coefficients)
//   generator.poly = -1           # A(t) = c(t) M
//   generator.sin = 0.5 2 0       # c(t) += 0.5 sin(2 t + 0), repeatable
//   generator.matrix = 1          # M, row-major d*d (default identity)
//   generator.bound = 1
//   delay.kind = distributed      # distributed | point | none
//   delay.time.poly = 1           # mu(t, sigma) = c(t) p(sigma) M
//   delay.time.sin = -1 1 0
//   delay.sigma.poly = 1          # p(sigma), distributed only
//   delay.matrix = 1
//   delay.bound = 2
//
// Numbers are written back with 17 significant digits, so dump/parse is
// lossless.

#include "splitdde/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace splitdde {

struct SineTerm {
    double amplitude = 0.0;
    double frequency = 1.0;
    double phase = 0.0;

    bool operator==(const SineTerm&) const = default;
};

/// c(t) = sum_i poly[i] t^i + sum_j a_j sin(w_j t + phi_j).
struct ScalarCoefficient {
    std::vector<double> poly;
    std::vector<SineTerm> sines;

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool is_zero() const;

    bool operator==(const ScalarCoefficient&) const = default;
};

enum class DelayKind {
    None,
    Distributed,
    Point,
};

struct ProblemConfig {
    int dim = 1;
    double start_time = 0.0;
    std::vector<double> head;
    std::vector<std::vector<double>> history;  ///< one polynomial in sigma per component
    ScalarCoefficient generator_coeff;
    std::vector<double> generator_matrix;  ///< empty means identity
    double generator_bound = 0.0;
    DelayKind delay_kind = DelayKind::None;
    ScalarCoefficient delay_time;
    std::vector<double> delay_sigma_poly;
    std::vector<double> delay_matrix;  ///< empty means identity
    double delay_bound = 0.0;

    bool operator==(const ProblemConfig&) const = default;
};

/// Throws ConfigError with the offending line on malformed input.
[[nodiscard]] ProblemConfig parse_config(std::string_view text);
[[nodiscard]] std::string dump_config(const ProblemConfig& cfg);

/// Builds the problem; the initial history is stored on a grid of spacing
/// `history_step` and also kept as an exact function for resampling.
[[nodiscard]] ProblemSpec build_problem(const ProblemConfig& cfg, double history_step = 1.0 / 64);

/// Same configuration with the delay term removed.
[[nodiscard]] ProblemConfig without_delay(ProblemConfig cfg);

/// Registered scalar examples: x = 1, f(sigma) = 1 - sigma, b = -1, with
/// mu = 1 or mu = 1 - sin t, as a distributed or a point delay.
[[nodiscard]] const std::vector<std::string>& example_ids();
[[nodiscard]] bool is_example(std::string_view id);
[[nodiscard]] ProblemConfig example_config(std::string_view id);

/// "%.17g"-style formatting shared by config dumps and CSV output.
[[nodiscard]] std::string format_double(double v);

}  // namespace splitdde
