#include "splitdde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

namespace splitdde {

StateError state_error(const DelayState& approx, double t, const ReferenceSolution& ref, VectorNorm kind) {
    const DelayState exact = ref.state_at(t, approx.history().grid_step());
    const DelayState diff = approx - exact;
    StateError err;
    err.head = norm(diff.head(), kind);
    err.product = product_norm(diff, kind);
    return err;
}

double max_pointwise_deviation(const Trajectory& traj, const ReferenceSolution& ref) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        worst = std::max(worst, (traj.heads[i] - ref.value(traj.times[i])).norm());
    }
    return worst;
}

double fit_order(const std::vector<double>& h_values, const std::vector<double>& errors) {
    const std::size_t n = std::min(h_values.size(), errors.size());
    const std::size_t first = n - (n + 1) / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = first; i < n; ++i) {
        if (!(errors[i] > 0.0) || !(h_values[i] > 0.0)) continue;
        const double x = std::log(h_values[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / denom;
}

std::vector<double> pairwise_orders(const std::vector<double>& h_values, const std::vector<double>& errors) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(h_values[i] / h_values[i + 1]));
    }
    return out;
}

bool ConvergenceReport::errors_strictly_decrease() const {
    for (std::size_t i = 0; i + 1 < product_errors.size(); ++i) {
        if (!(product_errors[i + 1] < product_errors[i])) return false;
    }
    return true;
}

std::string ConvergenceReport::summary() const {
    std::ostringstream out;
    if (exact) {
        out << "exact: all errors <= 1e-12";
        return out.str();
    }
    out.precision(4);
    out << std::fixed << "fitted order (product norm) " << product_order << ", (head) " << head_order;
    const std::string notes = flags.describe();
    if (!notes.empty()) out << " [" << notes << "]";
    return out.str();
}

ConvergenceReport convergence_study(const ProblemSpec& spec, double t_end, const std::vector<int>& n_values,
                                    int grid_refine, const OracleConfig& oracle) {
    if (n_values.size() < 3) throw ConfigError("need >= 3 points for a convergence study");
    for (std::size_t i = 0; i + 1 < n_values.size(); ++i) {
        if (n_values[i + 1] <= n_values[i]) throw ConfigError("step counts must be strictly increasing");
    }
    const double span = t_end - spec.initial_time();
    if (!(span > 0.0)) throw ConfigError("convergence study needs t_end > s");

    std::vector<SplitConfig> configs;
    for (int n : n_values) {
        SplitConfig cfg{spec.initial_time(), t_end, n, grid_refine, 0};
        cfg.validate();
        if (oracle.fine_step > cfg.step() / 50.0 * (1.0 + 1e-9)) {
            throw ConfigError("reference step must be at most h/50 for every refereed step");
        }
        configs.push_back(cfg);
    }

    const ReferenceSolution ref = solve_reference(spec, t_end, oracle);

    std::vector<std::future<std::pair<StateError, RunFlags>>> jobs;
    for (const SplitConfig& cfg : configs) {
        jobs.push_back(std::async(std::launch::async, [&spec, &ref, cfg, t_end] {
            const Trajectory traj = run(spec, cfg);
            return std::make_pair(state_error(traj.final_state, t_end, ref), traj.flags);
        }));
    }

    ConvergenceReport rep;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        auto [err, flags] = jobs[i].get();
        rep.steps.push_back(n_values[i]);
        rep.h_values.push_back(configs[i].step());
        rep.head_errors.push_back(err.head);
        rep.product_errors.push_back(err.product);
        rep.flags = flags;
    }
    rep.exact = std::all_of(rep.product_errors.begin(), rep.product_errors.end(),
                            [](double e) { return e <= 1e-12; });
    if (!rep.exact) {
        rep.head_order = fit_order(rep.h_values, rep.head_errors);
        rep.product_order = fit_order(rep.h_values, rep.product_errors);
        rep.head_pair_orders = pairwise_orders(rep.h_values, rep.head_errors);
        rep.product_pair_orders = pairwise_orders(rep.h_values, rep.product_errors);
    }
    return rep;
}

LocalErrorReport local_error_study(const ProblemSpec& spec, const std::vector<double>& h_values, int grid_refine,
                                   const OracleConfig& oracle) {
    if (h_values.empty()) throw ConfigError("local error study needs at least one step size");
    const double s = spec.initial_time();
    const double h_max = *std::max_element(h_values.begin(), h_values.end());
    const ReferenceSolution ref = solve_reference(spec, s + h_max, oracle);

    LocalErrorReport rep;
    for (double h : h_values) {
        const SplitConfig cfg{s, s + h, 1, grid_refine, 0};
        const Trajectory traj = run(spec, cfg);
        const StateError err = state_error(traj.final_state, s + h, ref);
        rep.h_values.push_back(h);
        rep.head_errors.push_back(err.head);
        rep.product_errors.push_back(err.product);
    }
    for (std::size_t i = 0; i + 1 < rep.product_errors.size(); ++i) {
        rep.ratios.push_back(rep.product_errors[i] / rep.product_errors[i + 1]);
    }
    return rep;
}

ScalingReport error_constant_scaling(const ProblemSpec& spec, double h, const std::vector<double>& alphas,
                                     int grid_refine, const OracleConfig& oracle) {
    ScalingReport rep;
    rep.alphas = alphas;
    const double base = local_error_study(spec, {h}, grid_refine, oracle).product_errors.front();
    for (double alpha : alphas) {
        const double e = local_error_study(spec.scaled(alpha), {h}, grid_refine, oracle).product_errors.front();
        rep.errors.push_back(e);
        const double expected = std::abs(alpha) * base;
        rep.deviations.push_back(expected > 0.0 ? std::abs(e - expected) / expected : (base > 0.0 ? e / base : e));
    }
    rep.pass = std::all_of(rep.deviations.begin(), rep.deviations.end(),
                           [&](double dev) { return dev <= rep.tolerance; });
    return rep;
}

int derivative_sign_changes(const std::vector<double>& samples) {
    int changes = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double d = samples[i + 1] - samples[i];
        const int sign = (d > 0.0) - (d < 0.0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

LongTimeSummary long_time_run(const ProblemSpec& spec, double t_end, int steps, int grid_refine, int component) {
    if (component < 0 || component >= spec.dim()) throw ConfigError("tracked component out of range");
    const SplitConfig cfg{spec.initial_time(), t_end, steps, grid_refine, 1};
    LongTimeSummary out{run(spec, cfg)};
    std::vector<double> samples;
    samples.reserve(out.trajectory.heads.size());
    for (const Vector& v : out.trajectory.heads) samples.push_back(v(component));
    out.min_head = *std::min_element(samples.begin(), samples.end());
    out.max_head = *std::max_element(samples.begin(), samples.end());
    out.sign_changes = derivative_sign_changes(samples);
    out.monotone_decreasing = std::adjacent_find(samples.begin(), samples.end(), std::less<>()) == samples.end();
    return out;
}

double sup_difference(const Trajectory& a, const Trajectory& b, int component) {
    if (a.times.size() != b.times.size()) throw ConfigError("trajectories are sampled differently");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.heads.size(); ++i) {
        worst = std::max(worst, std::abs(a.heads[i](component) - b.heads[i](component)));
    }
    return worst;
}

}  // namespace splitdde
