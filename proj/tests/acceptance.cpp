// Acceptance run: one PASS/FAIL line per criterion with the measured value,
// its tolerance and the runtime against the budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heis/eigen.hpp"
#include "heis/experiments.hpp"
#include "heis/instances.hpp"
#include "heis/operators.hpp"
#include "heis/oracle.hpp"
#include "heis/picone.hpp"
#include "heis/solver.hpp"
#include "heis/vector_fields.hpp"

using namespace heis;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Shared random instances for criteria 1 and 2: (u, v, g, p) with admissible g.
struct Instance {
    AnalyticField u, v;
    GFunction g;
    double p;
};

std::vector<Instance> picone_instances(const HGrid& grid) {
    Rng rng(2024);
    const double ps[] = {1.5, 2.0, 2.5, 3.0};
    std::vector<Instance> out;
    for (int i = 0; i < 50; ++i) {
        const double p = ps[i % 4];
        const GFunction g = (i / 4) % 2 ? GFunction::exponential(p) : GFunction::power(p, 1.0 + (i % 3));
        out.push_back({normalise_on_grid(random_dirichlet_field(grid, rng), grid),
                       normalise_on_grid(random_positive_field(grid, rng), grid), g, p});
    }
    return out;
}

Outcome c1_identity() {
    auto grid = HGrid::unit_box(1, 17);
    Rng rng(1);
    double worst = 0.0;
    for (const auto& in : picone_instances(*grid)) {
        if (!g_admissible(in.g, in.p, default_g_samples()).admissible) return {false, "inadmissible g in the sample"};
        for (int j = 0; j < 20; ++j) {
            const auto e = picone_exact(in.u, in.v, in.g, in.p, random_point(*grid, rng));
            worst = std::max(worst, std::fabs(e.L - e.R) / (1.0 + std::fabs(e.L)));
        }
    }
    return {worst <= 1e-12, fmt("max|L-R|/(1+|L|) = %.3g <= 1e-12 over 50 instances x 20 points", worst)};
}

Outcome c2_nonnegativity() {
    auto grid = HGrid::unit_box(1, 17);
    double mn = INFINITY;
    for (const auto& in : picone_instances(*grid)) {
        const auto u = GridFunction::sample(grid, in.u, true);
        const auto v = GridFunction::sample(grid, in.v, false);
        const auto L = picone_L(u, v, in.g, in.p);
        for (std::size_t k : grid->interior()) mn = std::min(mn, L[k]);
    }
    return {mn >= -1e-10, fmt("min interior L = %.3g >= -1e-10 on 17^3", mn)};
}

Outcome c3_equality() {
    auto grid = HGrid::unit_box(1, 17);
    Rng rng(3);
    double max_L = 0.0, max_q = 0.0, min_pert = INFINITY;
    for (double p : {1.5, 2.0, 2.5, 3.0}) {
        const auto v = GridFunction::sample(grid, normalise_on_grid(random_positive_field(*grid, rng), *grid), false);
        const auto e = equality_case_probe(v.scaled(3.0), v, p, 1e-10);
        max_L = std::max(max_L, e.max_L);
        max_q = std::max(max_q, e.max_quotient_gradient);
        std::vector<double> w(v.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
            double s = 0.0;
            for (double z : grid->coords(k)) s += z - z * z * z / 6.0;
            w[k] = v[k] * (1.0 + 0.01 * s);
        }
        min_pert = std::min(min_pert, equality_case_probe(GridFunction(grid, w, false), v, p, 1e-10).max_L);
    }
    return {max_L <= 1e-10 && max_q <= 1e-10 && min_pert > 1e-6,
            fmt("u=3v: max L = %.3g, max|grad(u/v)| = %.3g (<= 1e-10); perturbed max L = %.3g > 1e-6", max_L, max_q,
                min_pert)};
}

Outcome c4_young() {
    auto grid = HGrid::unit_box(1, 9);
    Rng rng(4);
    double mn = INFINITY;
    for (int i = 0; i < 100; ++i) {
        const double p = 1.5 + 2.5 * rng.uniform();
        const GFunction g = i % 2 ? GFunction::power(p) : GFunction::exponential(p);
        const auto u = GridFunction::sample(grid, normalise_on_grid(random_dirichlet_field(*grid, rng), *grid), true);
        const auto v = GridFunction::sample(grid, normalise_on_grid(random_positive_field(*grid, rng), *grid), false);
        mn = std::min(mn, young_step_check(u, v, g, p));
    }
    return {mn >= -1e-12, fmt("min Young margin = %.3g >= -1e-12 over 100 instances", mn)};
}

Outcome c5_adjoint() {
    auto grid = HGrid::unit_box(1, 17);
    Rng rng(5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> u(grid->node_count(), 0.0), F(2 * grid->node_count());
        for (std::size_t k : grid->interior()) u[k] = rng.normal();
        for (auto& x : F) x = rng.normal();
        const GridFunction U(grid, u, true);
        const HVectorField FF(grid, F);
        const double a = inner(h_gradient(U), FF), b = inner(U, h_divergence(FF));
        worst = std::max(worst, std::fabs(a + b) / (std::fabs(a) + 1.0));
    }
    return {worst <= 1e-13, fmt("max |<Gu,F> + <u,div F>| / (|<Gu,F>|+1) = %.3g <= 1e-13", worst)};
}

Outcome c6_picone_inequality() {
    double min_gap = INFINITY, self = 0.0;
    for (double p : {2.0, 2.5}) {
        PiconeSuiteConfig c;
        c.p = p;
        c.instances = 25;
        c.seed = 6;
        const auto rep = run_picone_suite(c);
        min_gap = std::min(min_gap, rep.inequality_min_gap);
        self = std::max(self, rep.inequality_self_gap);
    }
    return {min_gap >= -1e-10 && self <= 1e-12,
            fmt("min gap = %.3g >= -1e-10; |gap(v,v)| = %.3g <= 1e-12 (p = 2, 2.5; 25 u each)", min_gap, self)};
}

Outcome c7_diaz_saa() {
    auto grid = HGrid::unit_box(1, 17);
    double min_gap = INFINITY, self = 0.0;
    bool ok = true;
    for (double p : {2.0, 2.5, 3.0}) {
        SolverConfig cfg;
        cfg.p = p;
        const auto rep = diaz_saa_experiment(NonlinearitySpec::constant(1.0), NonlinearitySpec::weighted_constant(), cfg, grid);
        ok = ok && rep.gap.has_value();
        if (!rep.gap) continue;
        min_gap = std::min(min_gap, rep.gap->gap);
        self = std::max(self, std::fabs(rep.self->gap));
    }
    return {ok && min_gap >= -1e-10 && self == 0.0,
            fmt("min gap = %.3g >= -1e-10; gap(u,u) = %.3g == 0 (p = 2, 2.5, 3; 17^3)", min_gap, self)};
}

Outcome c8_uniqueness() {
    auto grid = HGrid::unit_box(1, 17);
    std::string detail;
    bool ok = true;
    for (double p : {2.0, 3.0}) {
        SolverConfig cfg;
        cfg.p = p;
        if (p != 2.0) cfg.eps = 1e-8;
        const auto rep = uniqueness_experiment(NonlinearitySpec::shifted_power(0.5, p), cfg, grid, 5);
        const double tol = p == 2.0 ? 1e-6 : 1e-5;
        double min_u = INFINITY;
        for (const auto& s : rep.starts) min_u = std::min(min_u, s.min_interior);
        ok = ok && rep.converged == 5 && rep.max_distance <= tol && min_u > 0.0;
        detail += fmt("p=%g: %g/5 converged, max distance %.3g <= %g", p, double(rep.converged), rep.max_distance, tol);
        detail += fmt(", min u = %.3g > 0", min_u) + (p == 2.0 ? "; " : "");
    }
    return {ok, detail};
}

Outcome c9_oracle() {
    auto grid = HGrid::unit_box(1, 17);
    const auto r = solve(NonlinearitySpec::constant(1.0), SolverConfig{}, grid);
    const auto ref = oracle::solve_linear(grid, GridFunction::constant(grid, 1.0, false));
    const double rel = (r.u - ref).max_abs() / ref.max_abs();

    auto g3 = HGrid::unit_box(1, 3);
    const std::size_t c = g3->interior()[0];
    double worst = 0.0;
    for (double p : {2.0, 3.0}) {
        const auto spec = NonlinearitySpec::shifted_power(0.5, p);
        const double eps = default_eps(*g3);
        auto residual = [&](double s) {
            std::vector<double> v(g3->node_count(), 0.0);
            v[c] = s;
            return energy_gradient(GridFunction(g3, v, true), spec, p, eps)[c];
        };
        double lo = 0.0, hi = 1.0;
        while (residual(hi) < 0.0) hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (residual(mid) < 0.0 ? lo : hi) = mid;
        }
        SolverConfig cfg;
        cfg.p = p;
        const auto s = solve(spec, cfg, g3);
        if (!s.converged) return {false, "single-node solve did not converge"};
        worst = std::max(worst, std::fabs(s.u[c] - lo));
    }
    return {r.converged && rel <= 1e-8 && worst <= 1e-10,
            fmt("17^3 relative sup difference = %.3g <= 1e-8; single node |u - bisection| = %.3g <= 1e-10", rel, worst)};
}

Outcome c10_lambda1() {
    auto grid = HGrid::unit_box(1, 13);
    const auto zero = GridFunction::zeros(grid, false);
    SolverConfig cfg;
    cfg.init = Initializer::random(1.0);
    const auto r = lambda1(zero, 2.0, cfg, grid);
    const double ref = oracle::smallest_eigenvalue(grid, zero);
    const double rel = std::fabs(r.value - ref) / ref;
    const double c = 7.3;
    const double shifted = lambda1(GridFunction::constant(grid, c, false), 2.0, cfg, grid).value;
    const double shift_err = std::fabs(shifted - (r.value - c));

    const auto f = NonlinearitySpec::shifted_power(0.5, 2.0);
    const auto v1 = existence_check(f, 2.0, cfg, grid).verdict;
    const auto v2 = existence_check(f.with_limits(f.a0, r.value + 1.0), 2.0, cfg, grid).verdict;
    const auto v3 = existence_check(f.with_limits(0.0, 0.0), 2.0, cfg, grid).verdict;
    const bool verdicts = v1 == "satisfied" && v2 == "unsatisfied" && v3 == "unsatisfied";
    return {rel <= 0.02 && shift_err <= 1e-8 && verdicts,
            fmt("13^3: |lambda1 - oracle|/oracle = %.3g <= 0.02; shift error = %.3g <= 1e-8; ", rel, shift_err) +
                "verdicts " + v1 + "/" + v2 + "/" + v3 + " (expected satisfied/unsatisfied/unsatisfied)"};
}

Outcome c11_gradient() {
    auto grid = HGrid::unit_box(1, 13);
    Rng rng(11);
    auto worst_for = [&](const NonlinearitySpec& f, double p) {
        std::vector<double> u(grid->node_count(), 0.0);
        for (std::size_t k : grid->interior()) u[k] = 0.2 + 0.8 * rng.uniform();
        const GridFunction U(grid, u, true);
        const double eps = default_eps(*grid);
        double worst = 0.0;
        for (int d = 0; d < 20; ++d) {
            std::vector<double> phi(grid->node_count(), 0.0);
            for (std::size_t k : grid->interior()) phi[k] = rng.uniform(-1, 1);
            const GridFunction P(grid, phi, true);
            const double s = 1e-5;
            const double fd = (energy(U + P.scaled(s), f, p, eps) - energy(U - P.scaled(s), f, p, eps)) / (2 * s);
            const double an = first_variation(U, f, p, P, eps);
            worst = std::max(worst, std::fabs(fd - an) / std::fabs(an));
        }
        return worst;
    };
    double general = 0.0;
    for (double p : {1.5, 2.5, 3.0}) general = std::max(general, worst_for(NonlinearitySpec::shifted_power(0.5, p), p));
    const double linear = worst_for(NonlinearitySpec::affine_power(0.5, 1.0, 2.0), 2.0);
    return {general <= 1e-4 && linear <= 1e-8,
            fmt("relative error %.3g <= 1e-4 (p = 1.5, 2.5, 3); p=2 linear f: %.3g <= 1e-8", general, linear)};
}

Outcome c12_group() {
    Rng rng(12);
    double worst = 0.0;
    auto point = [&](std::size_t n) {
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = rng.uniform(-2, 2);
        for (auto& v : y) v = rng.uniform(-2, 2);
        return GroupPoint(x, y, rng.uniform(-2, 2));
    };
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + i % 2;
        const auto a = point(n), b = point(n), c = point(n), q = point(n);
        const auto l = group_product(group_product(a, b), c), r = group_product(a, group_product(b, c));
        const auto e = group_product(a, group_inverse(a));
        for (std::size_t k = 0; k < l.dim(); ++k) {
            worst = std::max(worst, std::fabs(l.coords()[k] - r.coords()[k]));
            worst = std::max(worst, std::fabs(e.coords()[k]));
        }
        // a smooth non-polynomial field mixing every coordinate
        AnalyticField f = AnalyticField::constant(rng.normal());
        for (std::size_t ax = 0; ax < 2 * n + 1; ++ax) {
            const auto z = AnalyticField::coordinate(ax);
            f = f + rng.normal() * z * z + rng.normal() * z * AnalyticField::coordinate((ax + 1) % (2 * n + 1));
        }
        f = f + 0.5 * exp(0.3 * AnalyticField::coordinate(0) - 0.2 * AnalyticField::coordinate(2 * n));
        const double scale = 1.0 + std::fabs(apply_T(f, q));
        for (std::size_t ii = 0; ii < n; ++ii) {
            for (std::size_t jj = 0; jj < n; ++jj) {
                const auto cc = commutator_check(ii, jj, f, q);
                worst = std::max(worst, std::fabs(cc.lhs - cc.rhs) / scale);
                worst = std::max(worst, std::fabs(commutator(VectorField::X(ii), VectorField::X(jj), f, q)) / scale);
                worst = std::max(worst, std::fabs(commutator(VectorField::Y(ii), VectorField::Y(jj), f, q)) / scale);
            }
            worst = std::max(worst, std::fabs(commutator(VectorField::X(ii), VectorField::T(), f, q)) / scale);
            worst = std::max(worst, std::fabs(commutator(VectorField::Y(ii), VectorField::T(), f, q)) / scale);
            const auto fa = translate_left(f, a);
            const auto aq = group_product(a, q);
            worst = std::max(worst, std::fabs(apply_X(ii, fa, q) - apply_X(ii, f, aq)) / (1.0 + std::fabs(apply_X(ii, f, aq))));
            worst = std::max(worst, std::fabs(apply_Y(ii, fa, q) - apply_Y(ii, f, aq)) / (1.0 + std::fabs(apply_Y(ii, f, aq))));
        }
    }
    return {worst <= 1e-12, fmt("max deviation = %.3g <= 1e-12 over 1000 cases (n = 1, 2)", worst)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Picone identity, exact gradients", 10, c1_identity},
        {2, "Picone nonnegativity on 17^3 grids", 30, c2_nonnegativity},
        {3, "equality case g = x^{p-1}", 5, c3_equality},
        {4, "Young-step inequality", 10, c4_young},
        {5, "discrete integration by parts", 5, c5_adjoint},
        {6, "Picone inequality", 120, c6_picone_inequality},
        {7, "Diaz-Saa inequality", 180, c7_diaz_saa},
        {8, "uniqueness", 600, c8_uniqueness},
        {9, "oracle equivalence", 60, c9_oracle},
        {10, "lambda1 machinery and existence verdicts", 120, c10_lambda1},
        {11, "gradient consistency", 60, c11_gradient},
        {12, "group layer", 5, c12_group},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && t <= c.budget_s;
        failures += !pass;
        std::printf("criterion %2d %s: %s | %s | %.2f s (budget %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), t, c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
