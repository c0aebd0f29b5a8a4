#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"
#include "test_problems.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace splitdde;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("splitdde_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("run writes one row per recorded step") {
    const Outcome r = invoke({"run", "dist-auto", "--steps", "64"});
    REQUIRE(r.code == cli::kExitOk);
    const CsvTable t = read_csv(r.out);
    CHECK(t.header == std::vector<std::string>{"time", "head_0"});
    CHECK(t.rows.size() == 65);
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.back()[0] == 1.0);
}

TEST_CASE("run reproduces the library") {
    const Outcome r = invoke({"run", "dist-auto", "--steps", "2"});
    const CsvTable t = read_csv(r.out);
    CHECK(t.rows[1][1] == doctest::Approx(1.0614286544971085).epsilon(1e-15));
    CHECK(t.rows[2][1] == doctest::Approx(1.103344312126673).epsilon(1e-15));
}

TEST_CASE("run with --reference adds error columns") {
    const Outcome r = invoke({"run", "dist-nonauto", "--steps", "8", "--reference"});
    REQUIRE(r.code == cli::kExitOk);
    const CsvTable t = read_csv(r.out);
    CHECK(t.header == std::vector<std::string>{"time", "head_0", "ref_0", "error"});
    CHECK(t.rows.front()[3] == 0.0);
    CHECK(t.rows.back()[2] == doctest::Approx(0.7240281267348543).epsilon(1e-9));
}

TEST_CASE("configuration errors exit with code 2") {
    CHECK(invoke({"run", "dist-auto", "--steps", "7", "--t-end", "2"}).code == cli::kExitConfig);
    CHECK(invoke({"run", "no-such-example"}).code == cli::kExitConfig);
    CHECK(invoke({"run"}).code == cli::kExitConfig);
    CHECK(invoke({"run", "dist-auto", "--config", "x.cfg"}).code == cli::kExitConfig);
    CHECK(invoke({"run", "--config", "/nonexistent/file.cfg"}).code == cli::kExitConfig);
    CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
    const Outcome two = invoke({"convergence", "dist-auto", "--n-list", "8,16"});
    CHECK(two.code == cli::kExitConfig);
    CHECK(two.err.find("need >= 3 points") != std::string::npos);
    CHECK(invoke({"convergence", "dist-auto", "--n-list", "8,x,16"}).code == cli::kExitConfig);
}

TEST_CASE("a blow-up exits with code 3") {
    const fs::path dir = scratch_dir("blowup");
    std::ofstream(dir / "hot.cfg") << "dim = 1\nhead = 1\nhistory.0 = 1\ngenerator.poly = 1e6\n"
                                      "generator.bound = 1e6\ndelay.kind = none\n";
    const Outcome r = invoke({"run", "--config", (dir / "hot.cfg").string(), "--steps", "8"});
    CHECK(r.code == cli::kExitNumerical);
    CHECK(r.err.find("numerical abort") != std::string::npos);
}

TEST_CASE("selftest") {
    SUBCASE("passes by default") {
        const Outcome r = invoke({"selftest"});
        CHECK(r.code == cli::kExitOk);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("selftest passed") != std::string::npos);
    }
    SUBCASE("a non-contractive generator fails in strict mode") {
        const Outcome r = invoke({"selftest", "--inject-noncontractive", "--strict"});
        CHECK(r.code == cli::kExitCheckFailed);
        CHECK(r.out.find("not contractive") != std::string::npos);
    }
    SUBCASE("a misdeclared delay bound fails") {
        const Outcome r = invoke({"selftest", "--misdeclare-phi-bound"});
        CHECK(r.code == cli::kExitCheckFailed);
        CHECK(r.out.find("below the sampled norm") != std::string::npos);
    }
}

TEST_CASE("convergence") {
    SUBCASE("no delay is reported as exact") {
        const Outcome r = invoke({"convergence", "dist-auto", "--zero-delay"});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.out.find("# exact") != std::string::npos);
    }
    SUBCASE("the distributed example converges at first order") {
        const Outcome r = invoke({"convergence", "dist-nonauto", "--refine", "2"});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(r.out.find("# fitted order") != std::string::npos);
        std::string csv = r.out.substr(0, r.out.find("# "));
        const CsvTable t = read_csv(csv);
        CHECK(t.rows.size() == 5);
        CHECK(t.column("order_product") == 5);
    }
}

TEST_CASE("longtime summary line") {
    const Outcome r = invoke({"longtime", "dist-nonauto"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("derivative_sign_changes 16") != std::string::npos);
}

TEST_CASE("dumped configs reproduce the example exactly") {
    const fs::path dir = scratch_dir("dump");
    REQUIRE(invoke({"dump", "point-nonauto", "--out", (dir / "p.cfg").string()}).code == cli::kExitOk);
    const Outcome from_example = invoke({"run", "point-nonauto", "--steps", "32"});
    const Outcome from_config = invoke({"run", "--config", (dir / "p.cfg").string(), "--steps", "32"});
    CHECK(from_example.code == cli::kExitOk);
    CHECK(from_example.out == from_config.out);
}

TEST_CASE("output is deterministic") {
    CHECK(invoke({"run", "dist-nonauto", "--steps", "32", "--refine", "2"}).out ==
          invoke({"run", "dist-nonauto", "--steps", "32", "--refine", "2"}).out);
}

TEST_CASE("relative output paths honour the output directory variable") {
    const fs::path dir = scratch_dir("outdir");
    ::setenv(cli::kOutputDirEnv, dir.c_str(), 1);
    const Outcome r = invoke({"run", "dist-auto", "--steps", "4", "--out", "traj.csv"});
    ::unsetenv(cli::kOutputDirEnv);
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    CHECK(read_csv(slurp(dir / "traj.csv")).rows.size() == 5);
}

TEST_CASE("list") {
    CHECK(invoke({"list"}).out == "dist-auto\ndist-nonauto\npoint-auto\npoint-nonauto\n");
}
