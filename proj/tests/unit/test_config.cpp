#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_problems.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace splitdde;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 10.0);
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    return v;
}

ScalarCoefficient random_coefficient(std::mt19937_64& rng) {
    ScalarCoefficient c;
    c.poly = random_vector(rng, 1 + rng() % 3);
    for (std::size_t k = rng() % 3; k > 0; --k) {
        const auto v = random_vector(rng, 3);
        c.sines.push_back({v[0], v[1], v[2]});
    }
    return c;
}

ProblemConfig random_config(std::mt19937_64& rng) {
    ProblemConfig cfg;
    cfg.dim = 1 + static_cast<int>(rng() % 3);
    const auto dd = static_cast<std::size_t>(cfg.dim * cfg.dim);
    cfg.start_time = random_vector(rng, 1)[0];
    cfg.head = random_vector(rng, cfg.dim);
    for (int i = 0; i < cfg.dim; ++i) cfg.history.push_back(random_vector(rng, 1 + rng() % 4));
    cfg.generator_coeff = random_coefficient(rng);
    if (rng() % 2) cfg.generator_matrix = random_vector(rng, dd);
    cfg.generator_bound = std::abs(random_vector(rng, 1)[0]);
    cfg.delay_kind = static_cast<DelayKind>(rng() % 3);
    if (cfg.delay_kind != DelayKind::None) {
        cfg.delay_time = random_coefficient(rng);
        if (cfg.delay_kind == DelayKind::Distributed) cfg.delay_sigma_poly = random_vector(rng, 1 + rng() % 3);
        if (rng() % 2) cfg.delay_matrix = random_vector(rng, dd);
        cfg.delay_bound = std::abs(random_vector(rng, 1)[0]);
    }
    return cfg;
}

}  // namespace

TEST_CASE("registered examples") {
    CHECK(example_ids() == std::vector<std::string>{"dist-auto", "dist-nonauto", "point-auto", "point-nonauto"});
    CHECK(is_example("point-auto"));
    CHECK_FALSE(is_example("dist"));
    CHECK_THROWS_AS((void)example_config("nope"), ConfigError);
    const ProblemSpec spec = build_problem(example_config("dist-nonauto"));
    CHECK(spec.compatible());
    CHECK(spec.history_value(-1.0)(0) == 2.0);
    CHECK(spec.generator()(3.0)(0, 0) == -1.0);
    CHECK(spec.delay_op().bound() == 2.0);
}

TEST_CASE("dump and parse round-trip the registered examples") {
    for (const std::string& id : example_ids()) {
        const ProblemConfig cfg = example_config(id);
        CHECK(parse_config(dump_config(cfg)) == cfg);
    }
}

TEST_CASE("dump and parse round-trip random configurations") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const ProblemConfig cfg = random_config(rng);
        const std::string text = dump_config(cfg);
        CAPTURE(text);
        const ProblemConfig back = parse_config(text);
        CHECK(back == cfg);
        CHECK(dump_config(back) == text);
    }
}

TEST_CASE("comments and whitespace are ignored") {
    const ProblemConfig cfg = parse_config(
        "# scalar test\n"
        "dim = 1\n"
        "   head = 1   # trailing comment\n"
        "\n"
        "history.0 = 1 -1\n"
        "generator.poly = -1\r\n"
        "generator.bound = 1\n"
        "delay.kind = distributed\n"
        "delay.time.poly = 1\n"
        "delay.time.sin = -1 1 0\n"
        "delay.sigma.poly = 1\n"
        "delay.bound = 2\n");
    CHECK(cfg == example_config("dist-nonauto"));
}

TEST_CASE("malformed configs are rejected with the line number") {
    auto message = [](const std::string& text) {
        try {
            (void)parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("dim = 1\nhead = x\nhistory.0 = 1\n").find("line 2") != std::string::npos);
    CHECK(message("dim = 1\nfoo = 1\n").find("unknown key") != std::string::npos);
    CHECK(message("dim = 1\nhead 1\n").find("key = value") != std::string::npos);
    CHECK(message("dim = 0\n").find("dim") != std::string::npos);
    CHECK(message("dim = 1.5\n").find("dim") != std::string::npos);
    CHECK(message("head = 1\nhistory.0 = 1\n").find("dim") != std::string::npos);
    CHECK(message("dim = 2\nhead = 1\nhistory.0 = 1\nhistory.1 = 1\n").find("head") != std::string::npos);
    CHECK(message("dim = 1\nhead = 1\n").find("history") != std::string::npos);
    CHECK_FALSE(message("dim = 1\nhead = 1\nhistory.0 = 1\ndelay.kind = sideways\n").empty());
    CHECK_FALSE(message("dim = 1\nhead = 1\nhistory.0 = 1\ngenerator.sin = 1 2\n").empty());
    CHECK_FALSE(message("dim = 1\nhead = 1\nhistory.0 = 1\ngenerator.matrix = 1 2\n").empty());
    CHECK_FALSE(message("dim = 1\nhead = 1\nhistory.0 = 1\ndelay.bound = -1\n").empty());
    CHECK_FALSE(message("dim = 1\nhead = 1\nhistory.0 = nan\n").empty());
}

TEST_CASE("coefficients") {
    ScalarCoefficient c{{1.0, 2.0}, {{0.5, 2.0, 0.25}}};
    CHECK(c(0.5) == doctest::Approx(2.0 + 0.5 * std::sin(1.25)));
    CHECK_FALSE(c.is_constant());
    CHECK(ScalarCoefficient{{3.0}, {}}.is_constant());
    CHECK(ScalarCoefficient{{0.0}, {{0.0, 1.0, 0.0}}}.is_zero());
}

TEST_CASE("two-dimensional configs build matrix problems") {
    const ProblemConfig cfg = parse_config(
        "dim = 2\n"
        "head = 1 0\n"
        "history.0 = 1\n"
        "history.1 = 0 1\n"
        "generator.poly = 1\n"
        "generator.matrix = 0 1 -1 0\n"
        "generator.bound = 1\n"
        "delay.kind = distributed\n"
        "delay.time.poly = 0.5\n"
        "delay.sigma.poly = 1\n"
        "delay.bound = 0.5\n");
    const ProblemSpec spec = build_problem(cfg);
    CHECK(spec.dim() == 2);
    CHECK(spec.compatible());
    CHECK(spec.generator()(0.0)(0, 1) == 1.0);
    CHECK(spec.history_value(-0.5)(1) == -0.5);
    CHECK(without_delay(cfg).delay_kind == DelayKind::None);
}

TEST_CASE("format_double is lossless") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.0) == "-1");
}

TEST_CASE("csv round trip") {
    std::ostringstream out;
    write_csv(out, {"a", "b"}, {{1.0, 0.1}, {std::nan(""), -2.5}});
    CHECK(out.str() == "a,b\n1,0.10000000000000001\n,-2.5\n");
    const CsvTable t = read_csv(out.str());
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    CHECK(t.column("b") == 1);
    CHECK_THROWS_AS((void)t.column("z"), ConfigError);
    CHECK(t.rows[1][1] == -2.5);
    CHECK(std::isnan(t.rows[1][0]));
    CHECK(t.rows[0][1] == 0.1);
}
