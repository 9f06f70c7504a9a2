#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heis/app.hpp"
#include "heis/grid_io.hpp"
#include "heis/reports.hpp"

using namespace heis;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("heis_app_" + name);
    fs::remove_all(p);
    return p;
}

ExperimentConfig config(const std::string& command, const fs::path& out, std::size_t grid = 9) {
    ExperimentConfig c = default_config(command);
    c.out = out.string();
    c.grid = grid;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(HEIS_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config defaults, parsing and validation") {
    CHECK(default_config("picone").p == 2.5);
    CHECK(default_config("uniqueness").f == "shifted:0.5");
    CHECK_THROWS_AS(default_config("nope"), ConfigError);
    const auto c = default_config("solve");
    CHECK(config_from_json(to_json(c), ExperimentConfig{}) == c);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"bogus", 1}}, c), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"grid", "nine"}}, c), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"grid", -3}}, c), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array(), c), ConfigError);
    CHECK(config_from_json(nlohmann::json{{"a0", "+inf"}}, c).a0 == INFINITY);

    auto bad = c;
    bad.p = 0.5;
    CHECK_THROWS_WITH_AS(validate(bad), "p must exceed 1", ConfigError);
    bad = c;
    bad.f = "nonsense";
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = c;
    bad.init = "random:-1";
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = default_config("uniqueness");
    bad.p = 5.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("solve: exit codes and bit-exact solution file") {
    const auto out = scratch("solve");
    const auto r = run(config("solve", out), "T");
    CHECK(r.exit_code == 0);
    CHECK(r.report["result"]["converged"] == true);
    CHECK(r.report["version"] == kVersion);
    CHECK(r.report["timestamp"] == "T");
    CHECK(r.report["config"] == to_json(config("solve", out)));
    const auto u = load_grid_function(out / "solution");
    const auto again = load_grid_function(out / "solution");
    CHECK(u.values() == again.values());
    save_grid_function(u, out / "copy");
    CHECK(slurp(out / "copy.csv") == slurp(out / "solution.csv"));
    CHECK(slurp(out / "history.csv").rfind("iteration,energy,residual,step\n", 0) == 0);

    auto c = config("solve", scratch("solve1"));
    c.max_iterations = 1;
    const auto r1 = run(c, "T");
    CHECK(r1.exit_code == 1);
    CHECK(r1.report["result"]["converged"] == false);

    c = config("solve", scratch("solve_bad"));
    c.p = 0.5;
    const auto r2 = run(c, "T");
    CHECK(r2.exit_code == 2);
    CHECK(r2.message.find("p must exceed 1") != std::string::npos);
    CHECK(r2.report.is_null());
    CHECK_FALSE(fs::exists(c.out));
}

TEST_CASE("picone: inadmissible g fails with the check named") {
    auto c = config("picone", scratch("picone"));
    c.instances = 3;
    c.g = "const:1";
    const auto r = run(c, "T");
    CHECK(r.exit_code == 1);
    const auto& failed = r.report["failed_checks"];
    CHECK(std::find(failed.begin(), failed.end(), "admissibility") != failed.end());
    CHECK(r.message.find("admissibility") != std::string::npos);
}

TEST_CASE("eigen, existence, uniqueness, diaz-saa") {
    auto e = run(config("eigen", scratch("eigen")), "T");
    CHECK(e.exit_code == 0);
    CHECK(e.report["result"]["oracle"]["relative_difference"].get<double>() <= 0.02);

    auto x = config("existence", scratch("existence"));
    x.a_inf = 30.0;  // above lambda1 = 15.53 on the 9-node grid
    const auto rx = run(x, "T");
    CHECK(rx.exit_code == 1);
    CHECK(rx.report["result"]["verdict"] == "unsatisfied");
    CHECK(rx.report["result"]["a0"] == "+inf");
    CHECK(run(config("existence", scratch("existence_ok")), "T").exit_code == 0);

    const auto ru = run(config("uniqueness", scratch("uniq")), "T");
    CHECK(ru.exit_code == 0);
    CHECK(ru.report["result"]["max_distance"].get<double>() <= 1e-6);
    auto up = config("uniqueness", scratch("uniq_power"));
    up.f = "power";
    CHECK(run(up, "T").exit_code == 2);

    CHECK(run(config("diaz-saa", scratch("ds")), "T").exit_code == 0);
}

TEST_CASE("reports are byte-identical apart from the timestamp") {
    const auto out = scratch("det");
    auto c = config("uniqueness", out);
    c.starts = 3;
    REQUIRE(run(c, "2000-01-01T00:00:00Z").exit_code == 0);
    const std::string first = slurp(out / "report.json");
    REQUIRE(run(c, "2030-06-01T12:00:00Z").exit_code == 0);
    std::string second = slurp(out / "report.json");
    const auto pos = second.find("2030-06-01T12:00:00Z");
    REQUIRE(pos != std::string::npos);
    second.replace(pos, 20, "2000-01-01T00:00:00Z");
    CHECK(first == second);
}

TEST_CASE("CLI binary: exit-code contract") {
    const auto out = scratch("cli");
    CHECK(cli("solve --grid 9 --out " + (out / "a").string()) == 0);
    CHECK(fs::exists(out / "a" / "report.json"));
    CHECK(cli("solve --grid 9 --max-iterations 1 --out " + (out / "b").string()) == 1);
    CHECK(cli("solve --p 0.5 --out " + (out / "c").string()) == 2);
    CHECK_FALSE(fs::exists(out / "c"));
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("solve --grid nine") == 2);

    fs::create_directories(out);
    std::ofstream(out / "bad.json") << "{ \"grid\": 9,";
    CHECK(cli("picone --config " + (out / "bad.json").string() + " --out " + (out / "d").string()) == 2);
    CHECK_FALSE(fs::exists(out / "d"));

    // config file round trip, flags override
    auto c = config("eigen", out / "e");
    write_json(to_json(c), out / "eigen.json");
    CHECK(cli("eigen --config " + (out / "eigen.json").string() + " --grid 7") == 0);
    const auto rep = nlohmann::json::parse(slurp(out / "e" / "report.json"));
    CHECK(rep["config"]["grid"] == 7);
    CHECK(rep["config"]["p"] == 2.0);
    CHECK(cli("solve --config " + (out / "eigen.json").string()) == 2);  // config for another command

    CHECK(cli("existence --grid 9 --a-inf 30 --out " + (out / "x").string()) == 1);
    CHECK(cli("picone --grid 9 --instances 3 --g const:1 --out " + (out / "g").string()) == 1);
}
