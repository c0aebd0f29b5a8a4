#include "splitdde/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace splitdde {

namespace {

double eval_poly(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream msg;
    msg << "config line " << line << ": " << what;
    throw ConfigError(msg.str());
}

std::vector<double> parse_numbers(std::string_view text, int line) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
        double v = 0.0;
        const auto token = text.substr(pos, end - pos);
        const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v)) {
            fail(line, "expected a number, got '" + std::string(token) + "'");
        }
        out.push_back(v);
        pos = end;
    }
    return out;
}

double parse_single(std::string_view text, int line) {
    const auto v = parse_numbers(text, line);
    if (v.size() != 1) fail(line, "expected exactly one number");
    return v.front();
}

SineTerm parse_sine(std::string_view text, int line) {
    const auto v = parse_numbers(text, line);
    if (v.size() != 3) fail(line, "sine term needs amplitude, frequency and phase");
    return {v[0], v[1], v[2]};
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

void dump_coeff(std::ostringstream& out, const std::string& prefix, const ScalarCoefficient& c) {
    if (!c.poly.empty()) out << prefix << ".poly = " << join(c.poly) << '\n';
    for (const SineTerm& s : c.sines) {
        out << prefix << ".sin = " << join({s.amplitude, s.frequency, s.phase}) << '\n';
    }
}

Matrix square_or_identity(const std::vector<double>& entries, int dim, const char* what) {
    if (entries.empty()) return Matrix::Identity(dim, dim);
    if (static_cast<int>(entries.size()) != dim * dim) {
        throw ConfigError(std::string(what) + " needs dim*dim entries");
    }
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
    }
    return m;
}

ProblemConfig make_example(bool point, bool nonautonomous) {
    ProblemConfig cfg;
    cfg.dim = 1;
    cfg.start_time = 0.0;
    cfg.head = {1.0};
    cfg.history = {{1.0, -1.0}};
    cfg.generator_coeff.poly = {-1.0};
    cfg.generator_bound = 1.0;
    cfg.delay_kind = point ? DelayKind::Point : DelayKind::Distributed;
    cfg.delay_time.poly = {1.0};
    if (nonautonomous) cfg.delay_time.sines = {{-1.0, 1.0, 0.0}};
    if (!point) cfg.delay_sigma_poly = {1.0};
    cfg.delay_bound = nonautonomous ? 2.0 : 1.0;
    return cfg;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double ScalarCoefficient::operator()(double t) const {
    double acc = eval_poly(poly, t);
    for (const SineTerm& s : sines) acc += s.amplitude * std::sin(s.frequency * t + s.phase);
    return acc;
}

bool ScalarCoefficient::is_constant() const {
    const bool poly_const = std::all_of(poly.begin() + std::min<std::size_t>(1, poly.size()), poly.end(),
                                        [](double c) { return c == 0.0; });
    const bool sines_const = std::all_of(sines.begin(), sines.end(), [](const SineTerm& s) {
        return s.amplitude == 0.0 || s.frequency == 0.0;
    });
    return poly_const && sines_const;
}

bool ScalarCoefficient::is_zero() const {
    return std::all_of(poly.begin(), poly.end(), [](double c) { return c == 0.0; }) &&
           std::all_of(sines.begin(), sines.end(), [](const SineTerm& s) { return s.amplitude == 0.0; });
}

ProblemConfig parse_config(std::string_view text) {
    ProblemConfig cfg;
    cfg.history.clear();
    bool have_dim = false;
    bool have_head = false;
    std::vector<std::pair<int, std::vector<double>>> history;
    int line_no = 0;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "dim") {
            const double d = parse_single(value, line_no);
            if (d < 1 || d != std::floor(d)) fail(line_no, "dim must be a positive integer");
            cfg.dim = static_cast<int>(d);
            have_dim = true;
        } else if (key == "start_time") {
            cfg.start_time = parse_single(value, line_no);
        } else if (key == "head") {
            cfg.head = parse_numbers(value, line_no);
            have_head = true;
        } else if (key.rfind("history.", 0) == 0) {
            const std::string idx = key.substr(8);
            int i = -1;
            const auto res = std::from_chars(idx.data(), idx.data() + idx.size(), i);
            if (res.ec != std::errc() || res.ptr != idx.data() + idx.size() || i < 0) {
                fail(line_no, "bad history component '" + idx + "'");
            }
            history.emplace_back(i, parse_numbers(value, line_no));
        } else if (key == "generator.poly") {
            cfg.generator_coeff.poly = parse_numbers(value, line_no);
        } else if (key == "generator.sin") {
            cfg.generator_coeff.sines.push_back(parse_sine(value, line_no));
        } else if (key == "generator.matrix") {
            cfg.generator_matrix = parse_numbers(value, line_no);
        } else if (key == "generator.bound") {
            cfg.generator_bound = parse_single(value, line_no);
        } else if (key == "delay.kind") {
            if (value == "distributed") {
                cfg.delay_kind = DelayKind::Distributed;
            } else if (value == "point") {
                cfg.delay_kind = DelayKind::Point;
            } else if (value == "none") {
                cfg.delay_kind = DelayKind::None;
            } else {
                fail(line_no, "delay.kind must be distributed, point or none");
            }
        } else if (key == "delay.time.poly") {
            cfg.delay_time.poly = parse_numbers(value, line_no);
        } else if (key == "delay.time.sin") {
            cfg.delay_time.sines.push_back(parse_sine(value, line_no));
        } else if (key == "delay.sigma.poly") {
            cfg.delay_sigma_poly = parse_numbers(value, line_no);
        } else if (key == "delay.matrix") {
            cfg.delay_matrix = parse_numbers(value, line_no);
        } else if (key == "delay.bound") {
            cfg.delay_bound = parse_single(value, line_no);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }

    if (!have_dim) throw ConfigError("config is missing 'dim'");
    if (!have_head || static_cast<int>(cfg.head.size()) != cfg.dim) {
        throw ConfigError("config 'head' must list dim values");
    }
    cfg.history.assign(static_cast<std::size_t>(cfg.dim), {});
    std::vector<bool> seen(static_cast<std::size_t>(cfg.dim), false);
    for (auto& [i, coeffs] : history) {
        if (i >= cfg.dim) throw ConfigError("history component " + std::to_string(i) + " exceeds dim");
        cfg.history[static_cast<std::size_t>(i)] = std::move(coeffs);
        seen[static_cast<std::size_t>(i)] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw ConfigError("config needs a history.<i> line for every component");
    }
    if (cfg.generator_bound < 0.0 || cfg.delay_bound < 0.0) throw ConfigError("bounds must be non-negative");
    const std::size_t d2 = static_cast<std::size_t>(cfg.dim * cfg.dim);
    if (!cfg.generator_matrix.empty() && cfg.generator_matrix.size() != d2) {
        throw ConfigError("generator.matrix needs dim*dim entries");
    }
    if (!cfg.delay_matrix.empty() && cfg.delay_matrix.size() != d2) {
        throw ConfigError("delay.matrix needs dim*dim entries");
    }
    return cfg;
}

std::string dump_config(const ProblemConfig& cfg) {
    std::ostringstream out;
    out << "dim = " << cfg.dim << '\n';
    out << "start_time = " << format_double(cfg.start_time) << '\n';
    out << "head = " << join(cfg.head) << '\n';
    for (std::size_t i = 0; i < cfg.history.size(); ++i) out << "history." << i << " = " << join(cfg.history[i]) << '\n';
    dump_coeff(out, "generator", cfg.generator_coeff);
    if (!cfg.generator_matrix.empty()) out << "generator.matrix = " << join(cfg.generator_matrix) << '\n';
    out << "generator.bound = " << format_double(cfg.generator_bound) << '\n';
    switch (cfg.delay_kind) {
        case DelayKind::None: out << "delay.kind = none\n"; break;
        case DelayKind::Distributed: out << "delay.kind = distributed\n"; break;
        case DelayKind::Point: out << "delay.kind = point\n"; break;
    }
    dump_coeff(out, "delay.time", cfg.delay_time);
    if (!cfg.delay_sigma_poly.empty()) out << "delay.sigma.poly = " << join(cfg.delay_sigma_poly) << '\n';
    if (!cfg.delay_matrix.empty()) out << "delay.matrix = " << join(cfg.delay_matrix) << '\n';
    out << "delay.bound = " << format_double(cfg.delay_bound) << '\n';
    return out.str();
}

ProblemSpec build_problem(const ProblemConfig& cfg, double history_step) {
    const int d = cfg.dim;
    if (d < 1) throw ConfigError("dim must be positive");
    if (static_cast<int>(cfg.head.size()) != d || static_cast<int>(cfg.history.size()) != d) {
        throw ConfigError("head and history must have dim components");
    }

    const Matrix gm = square_or_identity(cfg.generator_matrix, d, "generator.matrix");
    const ScalarCoefficient gc = cfg.generator_coeff;
    GeneratorFamily generator(d, [gm, gc](double t) -> Matrix { return gc(t) * gm; }, cfg.generator_bound,
                              gc.is_constant());

    const Matrix dm = square_or_identity(cfg.delay_matrix, d, "delay.matrix");
    const ScalarCoefficient dc = cfg.delay_time;
    DelayOperatorFamily delay = DelayOperatorFamily::zero(d);
    switch (cfg.delay_kind) {
        case DelayKind::None: break;
        case DelayKind::Distributed: {
            const std::vector<double> sp = cfg.delay_sigma_poly;
            delay = DelayOperatorFamily::distributed(
                d, [dm, dc, sp](double t, double sigma) -> Matrix { return (dc(t) * eval_poly(sp, sigma)) * dm; },
                cfg.delay_bound);
            break;
        }
        case DelayKind::Point:
            delay = DelayOperatorFamily::point(d, [dm, dc](double t) -> Matrix { return dc(t) * dm; }, cfg.delay_bound);
            break;
    }

    const auto polys = cfg.history;
    HistoryFunction f = [polys](double sigma) {
        Vector v(static_cast<Eigen::Index>(polys.size()));
        for (std::size_t i = 0; i < polys.size(); ++i) v(static_cast<Eigen::Index>(i)) = eval_poly(polys[i], sigma);
        return v;
    };
    Vector head = Eigen::Map<const Vector>(cfg.head.data(), d);
    HistorySegment segment = history_from_function(f, d, history_step);
    return ProblemSpec(std::move(generator), std::move(delay), cfg.start_time, std::move(head), std::move(segment),
                       std::move(f));
}

ProblemConfig without_delay(ProblemConfig cfg) {
    cfg.delay_kind = DelayKind::None;
    cfg.delay_time = {};
    cfg.delay_sigma_poly.clear();
    cfg.delay_matrix.clear();
    cfg.delay_bound = 0.0;
    return cfg;
}

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids = {"dist-auto", "dist-nonauto", "point-auto", "point-nonauto"};
    return ids;
}

bool is_example(std::string_view id) {
    const auto& ids = example_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ProblemConfig example_config(std::string_view id) {
    if (id == "dist-auto") return make_example(false, false);
    if (id == "dist-nonauto") return make_example(false, true);
    if (id == "point-auto") return make_example(true, false);
    if (id == "point-nonauto") return make_example(true, true);
    throw ConfigError("unknown example '" + std::string(id) + "' (expected dist-auto, dist-nonauto, point-auto or "
                      "point-nonauto)");
}

}  // namespace splitdde
