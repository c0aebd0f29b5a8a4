#include "splitdde/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace splitdde {

namespace {

// Gauss-Legendre rules on [-1, 1].
constexpr std::array<double, 6> kGl6Nodes = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                             0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> kGl6Weights = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                               0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
constexpr std::array<double, 4> kGl4Nodes = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                             0.8611363115940526};
constexpr std::array<double, 4> kGl4Weights = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                               0.3478548451374538};

Vector hermite(double t0, double t1, const Vector& u0, const Vector& d0, const Vector& u1, const Vector& d1,
               double r) {
    const double w = t1 - t0;
    const double th = (r - t0) / w;
    const double th2 = th * th;
    const double th3 = th2 * th;
    return (2 * th3 - 3 * th2 + 1) * u0 + (th3 - 2 * th2 + th) * w * d0 + (-2 * th3 + 3 * th2) * u1 +
           (th3 - th2) * w * d1;
}

// Quadratic through u0 with slope d0 at t0 and value u1 at t0 + w.
Vector quadratic(double t0, double w, const Vector& u0, const Vector& d0, const Vector& u1, double r) {
    const double th = r - t0;
    return u0 + th * d0 + (th * th / (w * w)) * (u1 - u0 - w * d0);
}

class Marcher {
public:
    Marcher(const ProblemSpec& spec, const OracleConfig& cfg, std::vector<double>& times, std::vector<Vector>& values,
            std::vector<Vector>& slopes)
        : spec_(spec), cfg_(cfg), s_(spec.initial_time()), times_(times), values_(values), slopes_(slopes) {
        if (!spec.initial_function()) {
            const HistorySegment& f = spec.initial_history();
            for (int i = 1; i < f.cells(); ++i) history_kinks_.push_back(s_ + f.sigma(i));
        }
    }

    // u(r) using everything known once u_k is available: Hermite cells up
    // to t_{k-1}, the quadratic (u_{k-1}, u'_{k-1}, u_k) on the last cell.
    [[nodiscard]] Vector known_value(double r, int k) const {
        if (r < s_) return spec_.history_value(std::max(r - s_, -1.0));
        if (k == 0) return values_[0];
        const double pos = (r - s_) / cfg_.fine_step;
        int j = std::clamp(static_cast<int>(std::floor(pos)), 0, k - 1);
        if (j == k - 1) {
            return quadratic(times_[j], times_[k] - times_[j], values_[j], slopes_[j], values_[k], r);
        }
        return hermite(times_[j], times_[j + 1], values_[j], slopes_[j], values_[j + 1], slopes_[j + 1], r);
    }

    // int_{tau-1}^{t_k} mu(tau, r - tau) u(r) dr.
    [[nodiscard]] Vector known_integral(double tau, int k, const std::function<Matrix(double, double)>& kernel) const {
        const double a = tau - 1.0;
        const double b = times_[k];
        std::vector<double> cuts = {a, b};
        for (double j = std::ceil(a - s_); s_ + j < b; j += 1.0) {
            if (s_ + j > a) cuts.push_back(s_ + j);
        }
        if (k >= 1 && times_[k - 1] > a) cuts.push_back(times_[k - 1]);
        for (double kink : history_kinks_) {
            if (kink > a && kink < std::min(b, s_)) cuts.push_back(kink);
        }
        std::sort(cuts.begin(), cuts.end());

        Vector acc = Vector::Zero(spec_.dim());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double lo = cuts[c];
            const double hi = cuts[c + 1];
            if (hi - lo <= 1e-15) continue;
            const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * cfg_.panels_per_unit - 1e-9)));
            const double width = (hi - lo) / panels;
            for (int p = 0; p < panels; ++p) {
                const double mid = lo + (p + 0.5) * width;
                const double half = 0.5 * width;
                for (std::size_t g = 0; g < kGl6Nodes.size(); ++g) {
                    const double r = mid + half * kGl6Nodes[g];
                    acc.noalias() += (kGl6Weights[g] * half) * (kernel(tau, r - tau) * known_value(r, k));
                }
            }
        }
        return acc;
    }

    // Phi(tau) u_tau with the stage value y standing in for u(tau).
    [[nodiscard]] Vector delay_term(double tau, const Vector& y, int k, const Vector& known_part) const {
        const auto& variant = spec_.delay_op().variant();
        if (const auto* p = std::get_if<PointWeight>(&variant)) return p->weight(tau) * known_value(tau - 1.0, k);
        const auto& kernel = std::get<DistributedKernel>(variant).kernel;
        Vector acc = known_part;
        const double w = tau - times_[k];
        if (w > 0.0) {
            const double half = 0.5 * w;
            const double mid = times_[k] + half;
            for (std::size_t g = 0; g < kGl4Nodes.size(); ++g) {
                const double r = mid + half * kGl4Nodes[g];
                acc.noalias() += (kGl4Weights[g] * half) *
                                 (kernel(tau, r - tau) * quadratic(times_[k], w, values_[k], slopes_[k], y, r));
            }
        }
        return acc;
    }

    [[nodiscard]] Vector known_part(double tau, int k) const {
        const auto& variant = spec_.delay_op().variant();
        if (const auto* d = std::get_if<DistributedKernel>(&variant)) return known_integral(tau, k, d->kernel);
        return Vector::Zero(spec_.dim());
    }

    [[nodiscard]] Vector rhs(double tau, const Vector& y, int k, const Vector& known) const {
        return spec_.generator()(tau) * y + delay_term(tau, y, k, known);
    }

    // Derivative at t_k from data up to u_k.
    [[nodiscard]] Vector slope_at(int k) const {
        return rhs(times_[k], values_[k], k, known_part(times_[k], k));
    }

    void march(double t_end) {
        const double span = t_end - s_;
        const long n = std::max(0L, static_cast<long>(std::ceil(span / cfg_.fine_step - 1e-9)));
        times_.reserve(n + 1);
        values_.reserve(n + 1);
        slopes_.reserve(n + 1);
        times_.push_back(s_);
        values_.push_back(spec_.initial_head());

        for (long step = 0; step < n; ++step) {
            const int k = static_cast<int>(step);
            const double t_next = (step + 1 == n) ? t_end : s_ + (step + 1) * cfg_.fine_step;
            const double w = t_next - times_[k];
            const Vector& u = values_[k];
            slopes_.push_back(slope_at(k));
            const Vector& k1 = slopes_[k];

            Vector next;
            if (cfg_.scheme == OracleScheme::Euler) {
                next = u + w * k1;
            } else {
                const double tm = times_[k] + 0.5 * w;
                const Vector known_mid = known_part(tm, k);
                const Vector k2 = rhs(tm, u + 0.5 * w * k1, k, known_mid);
                const Vector k3 = rhs(tm, u + 0.5 * w * k2, k, known_mid);
                const Vector k4 = rhs(t_next, u + w * k3, k, known_part(t_next, k));
                next = u + (w / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            if (!next.allFinite() || next.norm() > 1e300) {
                std::ostringstream msg;
                msg << "reference solver diverged at fine step " << step + 1 << " (t = " << t_next << ")";
                throw NumericalError(msg.str(), step + 1, next.norm());
            }
            times_.push_back(t_next);
            values_.push_back(std::move(next));
        }
        slopes_.push_back(slope_at(static_cast<int>(n)));
    }

private:
    const ProblemSpec& spec_;
    const OracleConfig& cfg_;
    double s_;
    std::vector<double>& times_;
    std::vector<Vector>& values_;
    std::vector<Vector>& slopes_;
    std::vector<double> history_kinks_;
};

}  // namespace

Vector ReferenceSolution::value(double t) const {
    const double s = start_time();
    if (t < s - 1.0 - 1e-12 || t > end_time() + 1e-12) {
        std::ostringstream msg;
        msg << "reference solution queried at t = " << t << " outside [" << s - 1.0 << ", " << end_time() << "]";
        throw ConfigError(msg.str());
    }
    if (t < s) return initial_(std::max(t - s, -1.0));
    const int last = static_cast<int>(times_.size()) - 1;
    if (last == 0) return values_[0];
    const int j = std::clamp(static_cast<int>(std::floor((t - s) / fine_step_)), 0, last - 1);
    return hermite(times_[j], times_[j + 1], values_[j], slopes_[j], values_[j + 1], slopes_[j + 1],
                   std::min(t, end_time()));
}

HistorySegment ReferenceSolution::history_at(double t, double grid_step) const {
    return history_from_function([this, t](double sigma) { return value(t + sigma); }, dim_, grid_step);
}

DelayState ReferenceSolution::state_at(double t, double grid_step) const {
    return DelayState(value(t), history_at(t, grid_step));
}

Trajectory ReferenceSolution::trajectory(int stride, double grid_step) const {
    if (stride < 1) throw ConfigError("trajectory stride must be positive");
    Trajectory traj{{}, {}, state_at(end_time(), grid_step), {}};
    const std::size_t last = times_.size() - 1;
    for (std::size_t i = 0; i <= last; i += static_cast<std::size_t>(stride)) {
        traj.times.push_back(times_[i]);
        traj.heads.push_back(values_[i]);
    }
    if (last % static_cast<std::size_t>(stride) != 0) {
        traj.times.push_back(times_[last]);
        traj.heads.push_back(values_[last]);
    }
    return traj;
}

ReferenceSolution solve_reference(const ProblemSpec& spec, double t_end, const OracleConfig& cfg) {
    (void)cells_per_unit(cfg.fine_step);
    if (cfg.panels_per_unit < 1) throw ConfigError("panels per unit must be positive");
    if (!(t_end >= spec.initial_time())) throw ConfigError("reference end time precedes the initial time");

    HistoryFunction initial = [spec](double sigma) { return spec.history_value(sigma); };
    ReferenceSolution sol(spec.dim(), cfg.fine_step, std::move(initial));
    Marcher marcher(spec, cfg, sol.times_, sol.values_, sol.slopes_);
    marcher.march(t_end);
    return sol;
}

std::string OracleCheck::describe() const {
    std::ostringstream out;
    out.precision(3);
    out << (pass ? "PASS" : "FAIL") << " oracle self-check: Richardson error estimate " << std::scientific
        << estimated_error << " (threshold " << threshold << ", h_ref " << fine_step << ")";
    return out.str();
}

OracleCheck oracle_self_check(const ProblemSpec& spec, double t_end, double threshold, const OracleConfig& cfg) {
    OracleConfig fine = cfg;
    fine.fine_step = cfg.fine_step / 2.0;
    const ReferenceSolution coarse_sol = solve_reference(spec, t_end, cfg);
    const ReferenceSolution fine_sol = solve_reference(spec, t_end, fine);
    const double order = cfg.scheme == OracleScheme::RK4 ? 4.0 : 1.0;

    OracleCheck check;
    check.fine_step = cfg.fine_step;
    check.threshold = threshold;
    check.coarse_value = coarse_sol.values().back().norm();
    check.estimated_error =
        (coarse_sol.values().back() - fine_sol.values().back()).norm() / (std::pow(2.0, order) - 1.0);
    check.pass = check.estimated_error < threshold;
    return check;
}

}  // namespace splitdde
