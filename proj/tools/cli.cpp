#include "cli.hpp"

#include "splitdde/splitdde.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace splitdde::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ProblemSource {
    std::string example;
    std::string config_path;
    bool zero_delay = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("example", example, "Registered example: dist-auto, dist-nonauto, point-auto, point-nonauto");
        cmd->add_option("--config", config_path, "Problem config file instead of a registered example");
        cmd->add_flag("--zero-delay", zero_delay, "Drop the delay term (Phi = 0)");
    }

    [[nodiscard]] ProblemConfig load() const {
        if (example.empty() == config_path.empty()) {
            throw ConfigError("give either an example name or --config FILE");
        }
        ProblemConfig cfg;
        if (!example.empty()) {
            cfg = example_config(example);
        } else {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
            std::stringstream text;
            text << in.rdbuf();
            cfg = parse_config(text.str());
        }
        return zero_delay ? without_delay(std::move(cfg)) : cfg;
    }
};

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

// Runs `emit` against the --out file, or `fallback` when no path was given.
template <typename Emit>
void with_output(const std::string& path, std::ostream& fallback, Emit&& emit) {
    if (path.empty()) {
        emit(fallback);
        return;
    }
    const std::filesystem::path target = resolve_output(path);
    std::ofstream file(target, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + target.string() + "'");
    emit(file);
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad step count '" + item + "' in --n-list");
        }
    }
    return out;
}

struct RunOptions {
    ProblemSource source;
    double t_end = 1.0;
    int steps = 64;
    int refine = 1;
    int record_every = 1;
    bool reference = false;
    double oracle_step = 1e-4;
    std::string out;
};

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    const ProblemSpec spec = build_problem(o.source.load());
    const SplitConfig cfg{spec.initial_time(), o.t_end, o.steps, o.refine, o.record_every};
    const Trajectory traj = run(spec, cfg);
    const int d = spec.dim();

    std::vector<std::string> header{"time"};
    for (int i = 0; i < d; ++i) header.push_back("head_" + std::to_string(i));
    std::optional<ReferenceSolution> ref;
    if (o.reference) {
        OracleConfig oc;
        oc.fine_step = o.oracle_step;
        ref.emplace(solve_reference(spec, o.t_end, oc));
        for (int i = 0; i < d; ++i) header.push_back("ref_" + std::to_string(i));
        header.emplace_back("error");
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<double> row{traj.times[k]};
        for (int i = 0; i < d; ++i) row.push_back(traj.heads[k](i));
        if (ref) {
            const Vector exact = ref->value(traj.times[k]);
            for (int i = 0; i < d; ++i) row.push_back(exact(i));
            row.push_back((traj.heads[k] - exact).norm());
        }
        rows.push_back(std::move(row));
    }
    with_output(o.out, out, [&](std::ostream& s) { write_csv(s, header, rows); });
    if (const std::string notes = traj.flags.describe(); !notes.empty()) err << "note: " << notes << '\n';
    return kExitOk;
}

struct ConvergenceOptions {
    ProblemSource source;
    std::string n_list = "8,16,32,64,128";
    double t_end = 1.0;
    int refine = 1;
    double oracle_step = 1e-4;
    std::string out;
};

int cmd_convergence(const ConvergenceOptions& o, std::ostream& out) {
    const ProblemSpec spec = build_problem(o.source.load());
    OracleConfig oc;
    oc.fine_step = o.oracle_step;
    const ConvergenceReport rep = convergence_study(spec, o.t_end, parse_n_list(o.n_list), o.refine, oc);

    const std::vector<std::string> header{"n", "h", "error_head", "error_product", "order_head", "order_product"};
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        const bool has_order = i > 0 && !rep.product_pair_orders.empty();
        rows.push_back({static_cast<double>(rep.steps[i]), rep.h_values[i], rep.head_errors[i],
                        rep.product_errors[i], has_order ? rep.head_pair_orders[i - 1] : kNaN,
                        has_order ? rep.product_pair_orders[i - 1] : kNaN});
    }
    with_output(o.out, out, [&](std::ostream& s) { write_csv(s, header, rows); });
    out << (o.out.empty() ? "# " : "") << rep.summary() << '\n';
    return kExitOk;
}

struct LongTimeOptions {
    ProblemSource source;
    double t_end = 50.0;
    int steps = 6400;
    int refine = 1;
    int component = 0;
    std::string out;
};

int cmd_longtime(const LongTimeOptions& o, std::ostream& out) {
    const ProblemSpec spec = build_problem(o.source.load());
    const LongTimeSummary sum = long_time_run(spec, o.t_end, o.steps, o.refine, o.component);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < sum.trajectory.times.size(); ++k) {
        rows.push_back({sum.trajectory.times[k], sum.trajectory.heads[k](o.component)});
    }
    if (!o.out.empty()) {
        with_output(o.out, out, [&](std::ostream& s) { write_csv(s, {"time", "head"}, rows); });
    }
    std::ostringstream line;
    line << "min " << format_double(sum.min_head) << " max " << format_double(sum.max_head)
         << " derivative_sign_changes " << sum.sign_changes
         << (sum.monotone_decreasing ? " monotone_decreasing" : "");
    out << line.str() << '\n';
    return kExitOk;
}

int cmd_selftest(const SelftestOptions& o, std::ostream& out) {
    const SelftestResult res = run_selftest(o);
    for (const SelftestCheck& c : res.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    out << (res.all_pass() ? "selftest passed" : "selftest FAILED") << '\n';
    return res.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sequential operator splitting for linear delay differential equations"};
    app.name("splitdde");
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "March the splitting scheme and write the trajectory as CSV");
    run_opts.source.attach(run_cmd);
    run_cmd->add_option("--t-end", run_opts.t_end, "Final time");
    run_cmd->add_option("--steps", run_opts.steps, "Number of splitting steps n");
    run_cmd->add_option("--refine", run_opts.refine, "History grid refinement q (grid step h/q)");
    run_cmd->add_option("--record-every", run_opts.record_every, "Record every k-th step (0: final only)");
    run_cmd->add_flag("--reference", run_opts.reference, "Add reference-solution and pointwise-error columns");
    run_cmd->add_option("--oracle-step", run_opts.oracle_step, "Fine step of the reference solver");
    run_cmd->add_option("--out", run_opts.out, "CSV output path (default: stdout)");

    ConvergenceOptions conv_opts;
    auto* conv_cmd = app.add_subcommand("convergence", "Error against the reference over a sweep of step counts");
    conv_opts.source.attach(conv_cmd);
    conv_cmd->add_option("--n-list", conv_opts.n_list, "Comma-separated, increasing step counts");
    conv_cmd->add_option("--t-end", conv_opts.t_end, "Final time");
    conv_cmd->add_option("--refine", conv_opts.refine, "History grid refinement q");
    conv_cmd->add_option("--oracle-step", conv_opts.oracle_step, "Fine step of the reference solver");
    conv_cmd->add_option("--out", conv_opts.out, "CSV output path (default: stdout)");

    LongTimeOptions long_opts;
    auto* long_cmd = app.add_subcommand("longtime", "Long run with an oscillation summary");
    long_opts.source.attach(long_cmd);
    long_cmd->add_option("--t-end", long_opts.t_end, "Final time");
    long_cmd->add_option("--steps", long_opts.steps, "Number of splitting steps n");
    long_cmd->add_option("--refine", long_opts.refine, "History grid refinement q");
    long_cmd->add_option("--component", long_opts.component, "Tracked head component");
    long_cmd->add_option("--out", long_opts.out, "CSV output path for the trajectory");

    SelftestOptions self_opts;
    auto* self_cmd = app.add_subcommand("selftest", "Oracle, stability, nilpotency and linearity checks");
    self_cmd->add_option("--trials", self_opts.trials, "Random states per property check");
    self_cmd->add_option("--seed", self_opts.seed, "Random seed");
    self_cmd->add_flag("--inject-noncontractive", self_opts.inject_noncontractive,
                       "Use a non-contractive generator for dist-auto");
    self_cmd->add_flag("--strict", self_opts.strict, "Fail when the generator is not contractive");
    self_cmd->add_flag("--misdeclare-phi-bound", self_opts.misdeclare_phi_bound,
                       "Declare a delay bound below the true one for dist-nonauto");

    std::string dump_example;
    std::string dump_out;
    auto* dump_cmd = app.add_subcommand("dump", "Print the config of a registered example");
    dump_cmd->add_option("example", dump_example, "Registered example")->required();
    dump_cmd->add_option("--out", dump_out, "Output path (default: stdout)");

    auto* list_cmd = app.add_subcommand("list", "List registered examples");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run_cmd) return cmd_run(run_opts, out, err);
        if (*conv_cmd) return cmd_convergence(conv_opts, out);
        if (*long_cmd) return cmd_longtime(long_opts, out);
        if (*self_cmd) return cmd_selftest(self_opts, out);
        if (*dump_cmd) {
            const std::string text = dump_config(example_config(dump_example));
            with_output(dump_out, out, [&](std::ostream& s) { s << text; });
            return kExitOk;
        }
        if (*list_cmd) {
            for (const std::string& id : example_ids()) out << id << '\n';
            return kExitOk;
        }
    } catch (const NumericalError& e) {
        err << "numerical abort: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace splitdde::cli
