#include "doctest.h"

#include <cmath>

#include "heis/eigen.hpp"
#include "heis/operators.hpp"
#include "heis/oracle.hpp"

using namespace heis;

namespace {

SolverConfig random_start(std::uint64_t seed, double p = 2.0) {
    SolverConfig cfg;
    cfg.p = p;
    cfg.init = Initializer::random(1.0);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("p = 2 matches the symmetric eigensolver") {
    auto g = HGrid::unit_box(1, 13);
    const auto a = GridFunction::zeros(g, false);
    const EigenResult r = lambda1(a, 2.0, random_start(1), g);
    const double ref = oracle::smallest_eigenvalue(g, a);
    MESSAGE("lambda1 " << r.value << " oracle " << ref);
    CHECK(r.value > 0.0);
    CHECK(std::fabs(r.value - ref) <= 1e-6 * ref);
    CHECK(rayleigh_quotient(r.eigenfunction, a, 2.0) == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(std::fabs(integrate(GridFunction(g, [&] {
              std::vector<double> v(g->node_count());
              for (std::size_t k = 0; k < v.size(); ++k) v[k] = r.eigenfunction[k] * r.eigenfunction[k];
              return v;
          }(), false)) - 1.0) <= 1e-12);
}

TEST_CASE("shift identity") {
    auto g = HGrid::unit_box(1, 9);
    const auto a = GridFunction::zeros(g, false);
    const double base = lambda1(a, 2.0, random_start(1), g).value;
    for (double c : {-3.7, 2.5, 11.0}) {
        const double shifted = lambda1(GridFunction::constant(g, c, false), 2.0, random_start(1), g).value;
        CHECK(std::fabs(shifted - (base - c)) <= 1e-8);
    }
}

TEST_CASE("restart from a scaled eigenfunction") {
    auto g = HGrid::unit_box(1, 9);
    const auto a = GridFunction::zeros(g, false);
    const EigenResult r = lambda1(a, 2.0, random_start(2), g);
    const EigenResult again = lambda1(a, 2.0, random_start(2), g, r.eigenfunction.scaled(2.0));
    CHECK(again.iterations <= 2);
    CHECK(std::fabs(again.value - r.value) <= 1e-10);
}

TEST_CASE("independent of the random start for p = 2") {
    auto g = HGrid::unit_box(1, 9);
    const auto a = GridFunction::zeros(g, false);
    const double v0 = lambda1(a, 2.0, random_start(1), g).value;
    for (std::uint64_t s = 2; s <= 5; ++s) CHECK(std::fabs(lambda1(a, 2.0, random_start(s), g).value - v0) <= 1e-8);
}

TEST_CASE("p != 2: value recorded across starts") {
    auto g = HGrid::unit_box(1, 9);
    const auto a = GridFunction::zeros(g, false);
    for (double p : {2.5, 3.0}) {
        for (std::uint64_t s = 1; s <= 3; ++s) {
            const EigenResult r = lambda1(a, p, random_start(s, p), g);
            MESSAGE("p=" << p << " seed " << s << " lambda1 " << r.value << " residual " << r.residual);
            CHECK(r.value > 0.0);
            CHECK(rayleigh_quotient(r.eigenfunction, a, p, r.eps) == doctest::Approx(r.value).epsilon(1e-8));
        }
    }
}

TEST_CASE("non-convergence raises with the trace") {
    auto g = HGrid::unit_box(1, 9);
    SolverConfig cfg = random_start(1, 3.0);
    cfg.max_iterations = 3;
    try {
        lambda1(GridFunction::zeros(g, false), 3.0, cfg, g);
        FAIL("expected EigenError");
    } catch (const EigenError& e) {
        CHECK(e.trace().size() >= 3);  // initial record plus one per iteration
        CHECK(e.last_iterate().size() == g->node_count());
    }
    CHECK_THROWS_AS(lambda1(GridFunction::zeros(g, false), 0.5, SolverConfig{}, g), Error);
}
