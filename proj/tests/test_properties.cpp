#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "heis/app.hpp"
#include "heis/grid_io.hpp"
#include "heis/instances.hpp"
#include "heis/operators.hpp"
#include "heis/picone.hpp"
#include "heis/solver.hpp"

using namespace heis;

// Randomised properties: each case draws its inputs from a seeded generator
// and asserts the invariant over many draws.

namespace {

GridPtr random_grid(Rng& rng, std::size_t n = 1) {
    const std::size_t d = 2 * n + 1;
    std::vector<double> lo(d), hi(d);
    std::vector<std::size_t> nodes(d);
    for (std::size_t a = 0; a < d; ++a) {
        lo[a] = rng.uniform(-1.5, 0.0);
        hi[a] = lo[a] + rng.uniform(0.3, 2.0);
        nodes[a] = 3 + static_cast<std::size_t>(rng.uniform() * (n == 1 ? 8 : 3));
    }
    return std::make_shared<const HGrid>(n, lo, hi, nodes);
}

GridFunction random_dirichlet(const GridPtr& g, Rng& rng) {
    std::vector<double> v(g->node_count(), 0.0);
    for (std::size_t k : g->interior()) v[k] = rng.normal();
    return {g, v, true};
}

}  // namespace

TEST_CASE("property: summation by parts on random boxes") {
    Rng rng(101);
    for (int i = 0; i < 60; ++i) {
        const auto g = random_grid(rng, i % 6 == 0 ? 2 : 1);
        const auto u = random_dirichlet(g, rng);
        std::vector<double> d(2 * g->n() * g->node_count());
        for (auto& x : d) x = rng.normal();
        const HVectorField F(g, d);
        const double a = inner(h_gradient(u), F), b = inner(u, h_divergence(F));
        CHECK(std::fabs(a + b) <= 1e-13 * (std::fabs(a) + 1.0));
    }
}

TEST_CASE("property: homogeneity of the p-Laplacian and the norm") {
    Rng rng(102);
    for (int i = 0; i < 30; ++i) {
        const auto g = random_grid(rng);
        const auto u = random_dirichlet(g, rng);
        const double p = rng.uniform(2.0, 4.0), c = rng.uniform(0.1, 5.0);  // eps = 0 needs p >= 2
        CHECK(d1p_norm(u.scaled(c), p) == doctest::Approx(c * d1p_norm(u, p)).epsilon(1e-12));
        const auto L = p_sub_laplacian(u, p, 0.0), Lc = p_sub_laplacian(u.scaled(c), p, 0.0);
        const double scale = std::pow(c, p - 1.0);
        for (std::size_t k = 0; k < L.size(); ++k)
            CHECK(std::fabs(Lc[k] - scale * L[k]) <= 1e-11 * scale * (1.0 + L.max_abs()));
    }
}

TEST_CASE("property: Picone identity and nonnegativity for admissible weights") {
    Rng rng(103);
    auto g = HGrid::unit_box(1, 9);
    for (int i = 0; i < 40; ++i) {
        const double p = rng.uniform(1.5, 4.0);
        const GFunction G = (i % 2) ? GFunction::power(p, rng.uniform(1.0, 3.0)) : GFunction::exponential(p, rng.uniform(1.0, 3.0));
        REQUIRE(g_admissible(G, p, default_g_samples()).admissible);
        const auto uf = random_dirichlet_field(*g, rng), vf = random_positive_field(*g, rng);
        const auto e = picone_exact(uf, vf, G, p, random_point(*g, rng));
        CHECK(std::fabs(e.L - e.R) <= 1e-12 * (1.0 + std::fabs(e.L)));
        const auto u = GridFunction::sample(g, normalise_on_grid(uf, *g), true);
        const auto v = GridFunction::sample(g, normalise_on_grid(vf, *g), false);
        const auto L = picone_L(u, v, G, p);
        for (std::size_t k : g->interior()) CHECK(L[k] >= -1e-10 * (1.0 + L.max_abs()));
        CHECK(young_step_check(u, v, G, p) >= -1e-12);
    }
}

TEST_CASE("property: Diaz-Saa gap is symmetric") {
    Rng rng(104);
    auto g = HGrid::unit_box(1, 7);
    for (int i = 0; i < 10; ++i) {
        const double p = rng.uniform(1.5, 4.0);
        SolverConfig cfg;
        cfg.p = p;
        const auto u1 = solve(NonlinearitySpec::constant(rng.uniform(0.5, 2.0)), cfg, g).u;
        const auto u2 = solve(NonlinearitySpec::weighted_constant(), cfg, g).u;
        const double eps = default_eps(*g);
        const double a = diaz_saa_gap(u1, u2, p, eps).gap, b = diaz_saa_gap(u2, u1, p, eps).gap;
        CHECK(std::fabs(a - b) <= 1e-13 * std::fabs(a));
        CHECK(a >= -1e-10);
    }
}

TEST_CASE("property: determinism of quadrature and the solver") {
    Rng rng(105);
    const auto g = random_grid(rng);
    const auto u = random_dirichlet(g, rng);
    CHECK(integrate(u) == integrate(GridFunction(g, u.values(), true)));
    SolverConfig cfg;
    cfg.p = 2.5;
    cfg.init = Initializer::random(1.0);
    const auto a = solve(NonlinearitySpec::shifted_power(0.5, 2.5), cfg, g);
    const auto b = solve(NonlinearitySpec::shifted_power(0.5, 2.5), cfg, g);
    CHECK(a.u.values() == b.u.values());
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("property: CSV round trip of extreme values") {
    Rng rng(106);
    const auto g = random_grid(rng);
    std::vector<double> v(g->node_count());
    const double specials[] = {std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
                               -std::numeric_limits<double>::min(), 0.1, 1.0 / 3.0, -0.0};
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = k < std::size(specials) ? specials[k] : rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
    const GridFunction u(g, v, false);
    std::stringstream ss;
    write_csv(u, ss);
    const auto back = read_csv(ss, g, false);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(std::signbit(back[k]) == std::signbit(v[k]));
    CHECK(back.values() == u.values());
}

TEST_CASE("property: config JSON round trip") {
    Rng rng(107);
    for (int i = 0; i < 50; ++i) {
        const auto& cmds = commands();
        ExperimentConfig c = default_config(cmds[i % cmds.size()]);
        c.grid = 3 + static_cast<std::size_t>(rng.uniform() * 30);
        c.p = rng.uniform(1.5, 4.0);
        if (i % 2) c.eps = rng.uniform(0.0, 1e-6);
        c.seed = rng.next();
        c.tol_residual = std::pow(10.0, rng.uniform(-12, -6));
        if (i % 3 == 0) c.a0 = INFINITY;
        if (i % 3 == 1) c.a_inf = rng.normal();
        if (i % 4 == 0) c.distance_tolerance = 1e-5;
        c.allow_nonpositive_f = i % 5 == 0;
        const auto j = to_json(c);
        const auto back = config_from_json(nlohmann::json::parse(j.dump()), ExperimentConfig{});
        CHECK(back == c);
        CHECK(to_json(back).dump() == j.dump());
    }
}
