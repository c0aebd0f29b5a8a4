#include "splitdde/splitdde.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace splitdde;

namespace {

/// A problem together with the config it was built from.
struct Problem {
    ProblemConfig config;
    ProblemSpec spec;

    explicit Problem(ProblemConfig cfg) : config(std::move(cfg)), spec(build_problem(config)) {}
};

Problem make_problem(ProblemConfig cfg, bool zero_delay) {
    return Problem(zero_delay ? without_delay(std::move(cfg)) : std::move(cfg));
}

Matrix stack_heads(const std::vector<Vector>& heads, int dim) {
    Matrix out(static_cast<Eigen::Index>(heads.size()), dim);
    for (std::size_t k = 0; k < heads.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = heads[k].transpose();
    return out;
}

py::dict flags_dict(const RunFlags& f) {
    py::dict d;
    d["resampled_history"] = f.resampled_history;
    d["incompatible_initial_data"] = f.incompatible_initial_data;
    d["outside_theory"] = f.outside_theory;
    return d;
}

py::dict trajectory_dict(const Trajectory& traj, int dim) {
    py::dict d;
    d["times"] = traj.times;
    d["heads"] = stack_heads(traj.heads, dim);
    d["final_head"] = traj.final_state.head();
    d["final_history"] = traj.final_state.history().nodes();
    d["grid_step"] = traj.final_state.history().grid_step();
    d["flags"] = flags_dict(traj.flags);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sequential operator splitting for linear delay differential equations";

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<AlignmentError>(m, "AlignmentError", config_error.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<Problem>(m, "Problem")
        .def_static(
            "example", [](const std::string& id, bool zero_delay) { return make_problem(example_config(id), zero_delay); },
            py::arg("id"), py::arg("zero_delay") = false, "Registered example by name")
        .def_static(
            "from_config",
            [](const std::string& text, bool zero_delay) { return make_problem(parse_config(text), zero_delay); },
            py::arg("text"), py::arg("zero_delay") = false, "Problem from config text")
        .def_property_readonly("dim", [](const Problem& p) { return p.spec.dim(); })
        .def_property_readonly("initial_time", [](const Problem& p) { return p.spec.initial_time(); })
        .def_property_readonly("config_text", [](const Problem& p) { return dump_config(p.config); })
        .def("compatible", [](const Problem& p) { return p.spec.compatible(); })
        .def("scaled", [](const Problem& p, double alpha) {
            Problem q = p;
            q.spec = p.spec.scaled(alpha);
            return q;
        });

    m.def("example_ids", &example_ids);

    m.def(
        "run",
        [](const Problem& p, double t_end, int steps, int refine, int record_every) {
            const SplitConfig cfg{p.spec.initial_time(), t_end, steps, refine, record_every};
            return trajectory_dict(run(p.spec, cfg), p.spec.dim());
        },
        py::arg("problem"), py::arg("t_end") = 1.0, py::arg("steps") = 64, py::arg("refine") = 1,
        py::arg("record_every") = 1, "March the splitting scheme");

    py::class_<ReferenceSolution>(m, "ReferenceSolution")
        .def("value", &ReferenceSolution::value, py::arg("t"))
        .def_property_readonly("times", &ReferenceSolution::times)
        .def_property_readonly("values",
                               [](const ReferenceSolution& r) { return stack_heads(r.values(), r.dim()); })
        .def_property_readonly("fine_step", &ReferenceSolution::fine_step);

    m.def(
        "reference",
        [](const Problem& p, double t_end, double fine_step) {
            OracleConfig oc;
            oc.fine_step = fine_step;
            return solve_reference(p.spec, t_end, oc);
        },
        py::arg("problem"), py::arg("t_end") = 1.0, py::arg("fine_step") = 1e-4, "Fine-grid reference solution");

    m.def(
        "oracle_self_check",
        [](const Problem& p, double t_end, double threshold) {
            const OracleCheck c = oracle_self_check(p.spec, t_end, threshold);
            py::dict d;
            d["estimated_error"] = c.estimated_error;
            d["threshold"] = c.threshold;
            d["pass"] = c.pass;
            d["describe"] = c.describe();
            return d;
        },
        py::arg("problem"), py::arg("t_end") = 1.0, py::arg("threshold") = 1e-8);

    m.def(
        "convergence",
        [](const Problem& p, double t_end, const std::vector<int>& n_values, int refine, double fine_step) {
            OracleConfig oc;
            oc.fine_step = fine_step;
            const ConvergenceReport rep = [&] {
                py::gil_scoped_release release;
                return convergence_study(p.spec, t_end, n_values, refine, oc);
            }();
            py::dict d;
            d["steps"] = rep.steps;
            d["h"] = rep.h_values;
            d["head_errors"] = rep.head_errors;
            d["product_errors"] = rep.product_errors;
            d["head_order"] = rep.head_order;
            d["product_order"] = rep.product_order;
            d["exact"] = rep.exact;
            d["strictly_decreasing"] = rep.errors_strictly_decrease();
            d["summary"] = rep.summary();
            return d;
        },
        py::arg("problem"), py::arg("t_end") = 1.0, py::arg("n_values") = std::vector<int>{8, 16, 32, 64, 128},
        py::arg("refine") = 1, py::arg("fine_step") = 1e-4);

    m.def(
        "stability",
        [](const Problem& p, double t_end, int steps, int trials, std::uint64_t seed, bool strict) {
            const SplitConfig cfg{p.spec.initial_time(), t_end, steps, 1, 0};
            const StabilityReport rep = stability_witness(p.spec, cfg, trials, seed, 1e-3, strict);
            py::dict d;
            d["max_ratio"] = rep.max_ratio;
            d["bound"] = rep.bound;
            d["pass"] = rep.pass;
            d["phi_bound_ok"] = rep.phi_bound_ok;
            d["generator_contractive"] = rep.generator_contractive;
            d["describe"] = rep.describe();
            return d;
        },
        py::arg("problem"), py::arg("t_end") = 1.0, py::arg("steps") = 64, py::arg("trials") = 100,
        py::arg("seed") = std::uint64_t{20240607}, py::arg("strict") = false);

    m.def(
        "long_time",
        [](const Problem& p, double t_end, int steps, int refine, int component) {
            const LongTimeSummary s = long_time_run(p.spec, t_end, steps, refine, component);
            py::dict d = trajectory_dict(s.trajectory, p.spec.dim());
            d["min"] = s.min_head;
            d["max"] = s.max_head;
            d["sign_changes"] = s.sign_changes;
            d["monotone_decreasing"] = s.monotone_decreasing;
            return d;
        },
        py::arg("problem"), py::arg("t_end") = 50.0, py::arg("steps") = 6400, py::arg("refine") = 1,
        py::arg("component") = 0);

    m.def(
        "selftest",
        [](int trials, std::uint64_t seed, bool inject_noncontractive, bool strict, bool misdeclare_phi_bound) {
            const SelftestResult res =
                run_selftest(SelftestOptions{trials, seed, inject_noncontractive, strict, misdeclare_phi_bound});
            py::list checks;
            for (const SelftestCheck& c : res.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
            return py::make_tuple(res.all_pass(), checks);
        },
        py::arg("trials") = 100, py::arg("seed") = std::uint64_t{20240607}, py::arg("inject_noncontractive") = false,
        py::arg("strict") = false, py::arg("misdeclare_phi_bound") = false);

    // History-segment operations on dim x (cells + 1) node arrays.
    m.def(
        "left_shift",
        [](const Matrix& nodes, double grid_step, double t) {
            return left_shift(HistorySegment(grid_step, nodes), t).nodes();
        },
        py::arg("nodes"), py::arg("grid_step"), py::arg("t"));
    m.def(
        "l1_norm", [](const Matrix& nodes, double grid_step) { return l1_norm(HistorySegment(grid_step, nodes)); },
        py::arg("nodes"), py::arg("grid_step"));
    m.def(
        "product_norm",
        [](const Vector& head, const Matrix& nodes, double grid_step) {
            return product_norm(DelayState(head, HistorySegment(grid_step, nodes)));
        },
        py::arg("head"), py::arg("nodes"), py::arg("grid_step"));
}
