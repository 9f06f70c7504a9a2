#include "doctest.h"

#include <cmath>

#include "heis/experiments.hpp"
#include "heis/reports.hpp"

using namespace heis;

TEST_CASE("existence verdicts on the reference specs") {
    auto g = HGrid::unit_box(1, 9);
    SolverConfig cfg;
    const auto f = NonlinearitySpec::shifted_power(0.5, 2.0);
    const auto ok = existence_check(f, 2.0, cfg, g);
    CHECK(ok.verdict == "satisfied");
    REQUIRE(ok.at_zero.ladder.size() == 3);
    for (const auto& l : ok.at_zero.ladder) CHECK(l.lambda == doctest::Approx(ok.lambda_base - l.M).epsilon(1e-10));
    CHECK(ok.at_infinity.verdict == "satisfied");

    const auto super = existence_check(f.with_limits(f.a0, ok.lambda_base + 1.0), 2.0, cfg, g);
    CHECK(super.at_infinity.verdict == "unsatisfied");
    CHECK(*super.at_infinity.lambda == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(super.verdict == "unsatisfied");

    const auto zero = existence_check(f.with_limits(0.0, 0.0), 2.0, cfg, g);
    CHECK(zero.at_zero.verdict == "unsatisfied");
    CHECK(zero.verdict == "unsatisfied");
}

TEST_CASE("uniqueness: determinism and agreement") {
    auto g = HGrid::unit_box(1, 9);
    SolverConfig cfg;
    const auto f = NonlinearitySpec::shifted_power(0.5, 2.0);
    auto rep = uniqueness_experiment(f, cfg, g, {Initializer::random(1.0, 7), Initializer::random(1.0, 7)});
    CHECK(rep.conclusive);
    CHECK(rep.max_distance == 0.0);
    CHECK(rep.pairs.at(0).diaz_saa->gap == 0.0);

    rep = uniqueness_experiment(f, cfg, g, 5);
    CHECK(rep.converged == 5);
    CHECK(rep.max_distance <= 1e-6);
    CHECK(rep.all_positive);
    CHECK(rep.min_diaz_saa >= -1e-10);
    CHECK(rep.eigen_start_value.has_value());
    CHECK(rep.pairs.size() == 10);
    for (const auto& pr : rep.pairs) CHECK(std::fabs(*pr.contradiction) <= 1e-10);

    const auto inits = default_initializers(2.0, cfg, g, 7);
    CHECK(inits.size() == 7);
    CHECK(inits[0].describe() == "constant:0.1");
    CHECK(inits[4].describe() == "field");
    CHECK(inits[6].describe() == "random:1");
    CHECK_THROWS_AS(uniqueness_experiment(f, cfg, g, {Initializer::constant(1.0)}), Error);
}

TEST_CASE("uniqueness: fewer than two converged starts is inconclusive") {
    auto g = HGrid::unit_box(1, 9);
    SolverConfig cfg;
    cfg.max_iterations = 2;
    const auto rep = uniqueness_experiment(NonlinearitySpec::shifted_power(0.5, 2.0), cfg, g, 3);
    CHECK(rep.converged == 0);
    CHECK_FALSE(rep.conclusive);
    CHECK(rep.pairs.empty());
}

TEST_CASE("Diaz-Saa experiment") {
    auto g = HGrid::unit_box(1, 9);
    for (double p : {2.0, 2.5, 3.0}) {
        SolverConfig cfg;
        cfg.p = p;
        const auto rep = diaz_saa_experiment(NonlinearitySpec::constant(1.0), NonlinearitySpec::weighted_constant(), cfg, g);
        CHECK(rep.pass());
        CHECK(rep.gap->gap >= -1e-10);
        CHECK(rep.self->gap == 0.0);
    }
}

TEST_CASE("Picone suite") {
    PiconeSuiteConfig c;
    c.nodes = 9;
    c.instances = 5;
    CHECK(run_picone_suite(c).pass());
    c.g = "const:1";
    const auto bad = run_picone_suite(c);
    CHECK_FALSE(bad.pass());
    const auto failed = bad.failed();
    CHECK(std::find(failed.begin(), failed.end(), "admissibility") != failed.end());
}

TEST_CASE("helpers") {
    auto g = HGrid::unit_box(1, 5);
    const auto a = GridFunction::constant(g, 2.0, true), z = GridFunction::zeros(g, true);
    CHECK(relative_distance(z, z) == 0.0);
    CHECK(relative_distance(a, a.scaled(0.5)) == 0.5);
    const auto f = NonlinearitySpec::shifted_power(0.5, 2.0);
    CHECK(contradiction_integral(f, a, a, 2.0) == 0.0);
    // strict decrease of f/r^{p-1} makes the integral negative for distinct solutions
    CHECK(contradiction_integral(f, a, a.scaled(0.5), 2.0) < 0.0);
    CHECK(make_check("x", 1.0, "<=", 2.0).pass);
    CHECK_FALSE(make_check("x", 3.0, "<=", 2.0).pass);
    CHECK_FALSE(make_check("x", 0.0, ">", 0.0).pass);
    CHECK_THROWS_AS(make_check("x", 0.0, "==", 0.0), Error);
}

TEST_CASE("report encoding") {
    CHECK(real(INFINITY) == "+inf");
    CHECK(real(-INFINITY) == "-inf");
    CHECK(real_from_json(real(INFINITY)) == INFINITY);
    CHECK(real_from_json(1.5) == 1.5);
    CHECK_THROWS_AS(real_from_json("abc"), Error);
    nlohmann::json j = to_json(make_check("b", 1.0, "<=", 2.0));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}
