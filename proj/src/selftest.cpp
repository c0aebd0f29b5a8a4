#include "splitdde/selftest.hpp"

#include "splitdde/config.hpp"
#include "splitdde/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace splitdde {

namespace {

constexpr double kGrid = 1.0 / 16;

HistorySegment random_history(std::mt19937_64& rng, int dim, double grid_step) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int cells = cells_per_unit(grid_step);
    Matrix nodes(dim, cells + 1);
    for (Eigen::Index j = 0; j < nodes.cols(); ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) nodes(i, j) = unif(rng);
    }
    return HistorySegment(grid_step, std::move(nodes));
}

DelayState random_state(std::mt19937_64& rng, int dim, double grid_step) {
    HistorySegment f = random_history(rng, dim, grid_step);
    Vector head = f.back();
    return DelayState(std::move(head), std::move(f));
}

double state_distance(const DelayState& a, const DelayState& b) {
    return (a.head() - b.head()).lpNorm<Eigen::Infinity>() +
           (a.history().nodes() - b.history().nodes()).lpNorm<Eigen::Infinity>();
}

SelftestCheck nilpotency_check(std::mt19937_64& rng, int trials) {
    SelftestCheck check{"shift nilpotency", true, ""};
    std::uniform_int_distribution<int> cells(0, 16);
    for (int t = 0; t < trials && check.pass; ++t) {
        const HistorySegment f = random_history(rng, 2, kGrid);
        const double a = cells(rng) * kGrid;
        const double b = cells(rng) * kGrid;
        const HistorySegment twice = left_shift(left_shift(f, a), b);
        const HistorySegment once = left_shift(f, a + b);
        const bool composes = twice.nodes() == once.nodes();
        if (!composes || !left_shift(f, 1.0).nodes().isZero(0.0)) {
            check.pass = false;
            check.detail = "composition or T0(1) = 0 violated";
        }
    }
    if (check.pass) check.detail = "T0(a)T0(b) = T0(a+b) and T0(1) = 0 on " + std::to_string(trials) + " segments";
    return check;
}

SelftestCheck linearity_check(std::mt19937_64& rng, int trials) {
    const ProblemSpec spec = build_problem(example_config("dist-nonauto"));
    const Matrix rot = (Matrix(2, 2) << -1.0, 0.5, -0.5, -2.0).finished();
    const GeneratorFamily gen2 = GeneratorFamily::constant(rot);
    const DelayOperatorFamily phi2 = DelayOperatorFamily::distributed(
        2, [](double t, double sigma) { return Matrix::Identity(2, 2) * ((1.0 - std::sin(t)) * (1.0 + sigma)); }, 2.0);

    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double alpha = coef(rng);
        const double beta = coef(rng);
        const double r = coef(rng);
        const double h = 2 * kGrid;
        for (int dim : {1, 2}) {
            const DelayState u = random_state(rng, dim, kGrid);
            const DelayState v = random_state(rng, dim, kGrid);
            const DelayState mix = alpha * u + beta * v;
            const auto& gen = dim == 1 ? spec.generator() : gen2;
            const auto& phi = dim == 1 ? spec.delay_op() : phi2;
            const DelayState t_lin = alpha * apply_T(u, r, h, gen) + beta * apply_T(v, r, h, gen);
            const DelayState s_lin = alpha * apply_S(u, r, h, phi) + beta * apply_S(v, r, h, phi);
            worst = std::max(worst, state_distance(apply_T(mix, r, h, gen), t_lin));
            worst = std::max(worst, state_distance(apply_S(mix, r, h, phi), s_lin));
        }
    }
    std::ostringstream detail;
    detail << "max deviation " << worst << " over " << trials << " random pairs";
    return {"factor linearity", worst <= 1e-12, detail.str()};
}

}  // namespace

bool SelftestResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.pass; });
}

SelftestResult run_selftest(const SelftestOptions& opts) {
    SelftestResult result;

    for (const std::string& id : example_ids()) {
        const OracleCheck oc = oracle_self_check(build_problem(example_config(id)), 1.0);
        result.checks.push_back({"oracle " + id, oc.pass, oc.describe()});
    }

    const SplitConfig cfg{0.0, 1.0, 64, 1, 0};
    for (const char* id : {"dist-auto", "dist-nonauto"}) {
        ProblemSpec spec = build_problem(example_config(id));
        const std::string name = std::string("stability ") + id;
        if (opts.inject_noncontractive && name == "stability dist-auto") {
            spec = spec.with_generator(GeneratorFamily::constant(Matrix::Constant(1, 1, 0.5)));
        }
        if (opts.misdeclare_phi_bound && name == "stability dist-nonauto") {
            spec = spec.with_delay(spec.delay_op().with_bound(0.5));
        }
        const StabilityReport rep = stability_witness(spec, cfg, opts.trials, opts.seed, 1e-3, opts.strict);
        result.checks.push_back({name, rep.pass, rep.describe()});
    }

    std::mt19937_64 rng(opts.seed);
    result.checks.push_back(nilpotency_check(rng, opts.trials));
    result.checks.push_back(linearity_check(rng, opts.trials));
    return result;
}

}  // namespace splitdde
