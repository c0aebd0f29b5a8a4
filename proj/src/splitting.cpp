#include "splitdde/splitting.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace splitdde {

namespace {

constexpr double kOverflowNorm = 1e300;

void check_finite(const DelayState& u, long step) {
    if (u.all_finite()) {
        const double n = product_norm(u);
        if (n < kOverflowNorm) return;
        std::ostringstream msg;
        msg << "state norm overflowed at step " << step << " (norm " << n << ")";
        throw NumericalError(msg.str(), step, n);
    }
    std::ostringstream msg;
    msg << "non-finite state at step " << step;
    throw NumericalError(msg.str(), step, NAN);
}

}  // namespace

void SplitConfig::validate() const {
    if (!std::isfinite(start_time) || !std::isfinite(end_time)) throw ConfigError("times must be finite");
    if (end_time < start_time) throw ConfigError("end time precedes start time");
    if (steps < 1) throw ConfigError("step count must be positive");
    if (grid_refine < 1) throw ConfigError("grid refinement must be positive");
    if (record_every < 0) throw ConfigError("record stride must be non-negative");
    if (end_time == start_time) return;
    if (step() > 1.0 + 1e-12) throw ConfigError("time step exceeds 1; increase the step count");
    (void)cells_per_unit(grid_step());
}

std::string RunFlags::describe() const {
    std::string out;
    auto add = [&](const char* s) {
        if (!out.empty()) out += "; ";
        out += s;
    };
    if (resampled_history) add("initial history resampled by linear interpolation");
    if (incompatible_initial_data) add("f(0) != x: first-order guarantee does not apply");
    if (outside_theory) add("point delay: outside the convergence theory");
    return out;
}

DelayState split_step(const DelayState& u, double r, double h, const ProblemSpec& spec) {
    return apply_T(apply_S(u, r, h, spec.delay_op()), r, h, spec.generator());
}

Trajectory run_from(const ProblemSpec& spec, const DelayState& initial, const SplitConfig& cfg) {
    cfg.validate();
    if (initial.dim() != spec.dim()) throw ConfigError("state dimension does not match the problem");

    Trajectory traj{{}, {}, initial, {}};
    traj.flags.outside_theory = spec.delay_op().outside_theory();
    traj.flags.incompatible_initial_data = !initial.compatible(1e-12);

    if (cfg.end_time == cfg.start_time) {
        traj.times.push_back(cfg.start_time);
        traj.heads.push_back(initial.head());
        return traj;
    }
    if (cells_per_unit(cfg.grid_step()) != initial.history().cells()) {
        throw AlignmentError("initial history grid does not match the configured grid step");
    }

    const double h = cfg.step();
    if (cfg.record_every > 0) {
        traj.times.push_back(cfg.start_time);
        traj.heads.push_back(initial.head());
    }
    DelayState u = initial;
    for (int p = 0; p < cfg.steps; ++p) {
        const double r = cfg.start_time + p * h;
        u = split_step(u, r, h, spec);
        check_finite(u, p + 1);
        const bool last = p + 1 == cfg.steps;
        if ((cfg.record_every > 0 && (p + 1) % cfg.record_every == 0) || last) {
            traj.times.push_back(last ? cfg.end_time : cfg.start_time + (p + 1) * h);
            traj.heads.push_back(u.head());
        }
    }
    traj.final_state = std::move(u);
    return traj;
}

Trajectory run(const ProblemSpec& spec, const SplitConfig& cfg) {
    cfg.validate();
    if (cfg.end_time == cfg.start_time) {
        return run_from(spec, DelayState(spec.initial_head(), spec.initial_history()), cfg);
    }
    bool resampled = false;
    const DelayState initial = spec.initial_state(cfg.grid_step(), &resampled);
    Trajectory traj = run_from(spec, initial, cfg);
    traj.flags.resampled_history = resampled;
    traj.flags.incompatible_initial_data = !spec.compatible(1e-12);
    return traj;
}

std::string StabilityReport::describe() const {
    std::ostringstream out;
    out.precision(6);
    out << (pass ? "PASS" : "FAIL") << " stability: max growth " << max_ratio << " over " << trials
        << " trials, bound exp(omega t) = " << bound << " (omega = " << omega << ")";
    if (!phi_bound_ok) {
        out << "; declared Phi bound " << declared_phi_bound << " is below the sampled norm " << observed_phi_norm;
    }
    if (!generator_contractive) {
        out << "; generator is not contractive (logarithmic norm > 0)" << (strict ? "" : " [not enforced]");
    }
    if (outside_theory) out << "; point delay: outside the theory";
    return out.str();
}

StabilityReport stability_witness(const ProblemSpec& spec, const SplitConfig& cfg, int trials, std::uint64_t seed,
                                  double tolerance, bool strict) {
    cfg.validate();
    if (trials < 1) throw ConfigError("stability witness needs at least one trial");

    StabilityReport rep;
    rep.trials = trials;
    rep.tolerance = tolerance;
    rep.strict = strict;
    rep.outside_theory = spec.delay_op().outside_theory();
    rep.declared_phi_bound = spec.delay_op().bound();
    rep.omega = 1.0 + rep.declared_phi_bound;
    const double span = cfg.end_time - cfg.start_time;
    rep.bound = std::exp(rep.omega * span);
    const double h = cfg.step();
    rep.discrete_bound = std::pow(1.0 + h * rep.declared_phi_bound, cfg.steps) * std::pow(1.0 + h, cfg.steps);

    if (span > 0.0) {
        for (int p = 0; p < cfg.steps; ++p) {
            const double r = cfg.start_time + p * h;
            rep.observed_phi_norm = std::max(rep.observed_phi_norm, spec.delay_op().sampled_norm(r, cfg.grid_step()));
            rep.generator_contractive = rep.generator_contractive && spec.generator().contractive_at(r);
        }
    }
    rep.phi_bound_ok = rep.observed_phi_norm <= rep.declared_phi_bound * (1.0 + 1e-12) + 1e-15;

    const double grid = span > 0.0 ? cfg.grid_step() : spec.initial_history().grid_step();
    const int cells = cells_per_unit(grid);
    const int d = spec.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SplitConfig quiet = cfg;
    quiet.record_every = 0;

    for (int trial = 0; trial < trials; ++trial) {
        Matrix nodes(d, cells + 1);
        for (Eigen::Index j = 0; j < nodes.cols(); ++j) {
            for (Eigen::Index i = 0; i < d; ++i) nodes(i, j) = unif(rng);
        }
        Vector head = nodes.col(cells);
        DelayState u(head, HistorySegment(grid, nodes));
        const double n0 = product_norm(u);
        if (n0 == 0.0) continue;
        u = (1.0 / n0) * u;
        const Trajectory traj = run_from(spec, u, quiet);
        rep.max_ratio = std::max(rep.max_ratio, product_norm(traj.final_state) / product_norm(u));
    }

    rep.pass = rep.max_ratio <= rep.bound * (1.0 + tolerance) && rep.phi_bound_ok &&
               (!strict || rep.generator_contractive);
    return rep;
}

}  // namespace splitdde
