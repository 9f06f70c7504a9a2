#include "heis/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "heis/instances.hpp"
#include "heis/operators.hpp"

namespace heis {

Check make_check(std::string name, double value, const std::string& relation, double tolerance) {
    bool pass = false;
    if (relation == "<=") pass = value <= tolerance;
    else if (relation == ">=") pass = value >= tolerance;
    else if (relation == ">") pass = value > tolerance;
    else throw Error("make_check: unknown relation '" + relation + "'");
    return {std::move(name), pass, value, relation, tolerance};
}

namespace {

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// Smooth bounded perturbation sum_a (z_a - z_a^3 / 6), a truncated sine.
double sine_like(std::span<const double> z) {
    double s = 0.0;
    for (double c : z) s += c - c * c * c / 6.0;
    return s;
}

StartReport summarise(const SolveResult& r, const std::string& initializer, std::uint64_t seed) {
    return {initializer, seed, r.converged, r.stop_reason, r.iterations, r.residual, r.energy, r.min_interior};
}

}  // namespace

// ---------------------------------------------------------------- Picone suite

bool PiconeReport::pass() const { return all_pass(checks); }

std::vector<std::string> PiconeReport::failed() const {
    std::vector<std::string> out;
    for (const Check& c : checks)
        if (!c.pass) out.push_back(c.name);
    return out;
}

PiconeReport run_picone_suite(const PiconeSuiteConfig& config) {
    const double p = config.p;
    require_p(p);
    if (config.instances == 0) throw Error("picone suite: instances must be positive");
    const GFunction g = g_from_name(config.g, p);
    const GridPtr grid = HGrid::unit_box(1, config.nodes);
    Rng rng(config.seed);

    PiconeReport rep;
    rep.config = config;
    rep.g_label = g.label;
    rep.h = grid->max_spacing();
    rep.eps = config.eps ? *config.eps : default_eps(*grid);
    const auto samples = default_g_samples();
    rep.admissibility = g_admissible(g, p, samples);

    rep.min_L = INFINITY;
    rep.young_margin = INFINITY;
    std::vector<GridFunction> us;
    for (std::size_t i = 0; i < config.instances; ++i) {
        const AnalyticField u = normalise_on_grid(random_dirichlet_field(*grid, rng), *grid);
        const AnalyticField v = normalise_on_grid(random_positive_field(*grid, rng), *grid);

        double max_diff = 0.0, max_L = 0.0;
        for (std::size_t j = 0; j < config.points_per_instance; ++j) {
            const ExactPicone e = picone_exact(u, v, g, p, random_point(*grid, rng));
            max_diff = std::max(max_diff, std::fabs(e.L - e.R));
            max_L = std::max(max_L, std::fabs(e.L));
        }
        rep.exact_residual = std::max(rep.exact_residual, max_diff / (1.0 + max_L));

        const GridFunction U = GridFunction::sample(grid, u, true);
        const GridFunction V = GridFunction::sample(grid, v, false);
        const GridFunction L = picone_L(U, V, g, p);
        const GridFunction R = picone_R(U, V, g, p);
        for (std::size_t k : grid->interior()) {
            rep.grid_residual = std::max(rep.grid_residual, std::fabs(L[k] - R[k]));
            rep.min_L = std::min(rep.min_L, L[k]);
        }
        rep.young_margin = std::min(rep.young_margin, young_step_check(U, V, g, p));
        us.push_back(U);
    }
    rep.grid_constant = rep.grid_residual / rep.h;

    // Equality case with g = x^{p-1}.
    const GridFunction v_eq =
        GridFunction::sample(grid, normalise_on_grid(random_positive_field(*grid, rng), *grid), false);
    rep.equality = equality_case_probe(v_eq.scaled(3.0), v_eq, p, 1e-10);
    std::vector<double> pert(v_eq.size());
    for (std::size_t k = 0; k < pert.size(); ++k) pert[k] = v_eq[k] * (1.0 + 0.01 * sine_like(grid->coords(k)));
    rep.perturbed = equality_case_probe(GridFunction(grid, std::move(pert), false), v_eq, p, 1e-10);

    // Integral inequality against the solution of -Delta_p v = 1.
    SolverConfig sc;
    sc.p = p;
    sc.eps = rep.eps;
    const SolveResult sv = solve(NonlinearitySpec::constant(1.0), sc, grid);
    double min_gap = INFINITY, self_gap = INFINITY;
    if (sv.converged && sv.u.max_abs() > 0.0) {
        const GridFunction vn = sv.u.scaled(1.0 / sv.u.max_abs());
        for (const GridFunction& U : us) {
            const PiconeGap gap = picone_inequality_gap(U, vn, g, p, rep.eps);
            min_gap = std::min(min_gap, gap.gap);
            rep.k_shift = std::max(rep.k_shift, gap.shift);
        }
        self_gap = std::fabs(picone_inequality_gap(vn, vn, GFunction::power(p), p, rep.eps).gap);
    }
    rep.inequality_min_gap = min_gap;
    rep.inequality_self_gap = self_gap;

    rep.checks = {
        make_check("admissibility", rep.admissibility.worst_margin, ">=", -1e-12),
        make_check("identity_exact", rep.exact_residual, "<=", 1e-12),
        make_check("nonnegativity", rep.min_L, ">=", -1e-10),
        make_check("young_step", rep.young_margin, ">=", -1e-12),
        make_check("equality_scaled_max_L", rep.equality.max_L, "<=", 1e-10),
        make_check("equality_scaled_quotient_gradient", rep.equality.max_quotient_gradient, "<=", 1e-10),
        make_check("equality_sharpness_max_L", rep.perturbed.max_L, ">", 1e-6),
        make_check("inequality_solve_residual", sv.converged ? sv.residual : INFINITY, "<=", sv.tolerance),
        make_check("inequality_gap", rep.inequality_min_gap, ">=", -1e-10),
        make_check("inequality_self_gap", rep.inequality_self_gap, "<=", 1e-12),
    };
    return rep;
}

// ------------------------------------------------------------------ existence

std::vector<double> existence_ladder() { return {10.0, 100.0, 1000.0}; }

ExistenceReport existence_check(const NonlinearitySpec& spec, double p, const SolverConfig& config,
                                const GridPtr& grid) {
    if (std::isnan(spec.a0) || std::isnan(spec.a_inf) || spec.a0 == -INFINITY || spec.a_inf == -INFINITY)
        throw Error("existence_check: a0 and a_inf must be real or +inf");
    SolverConfig cfg = config;
    cfg.p = p;
    const EigenResult base = lambda1(GridFunction::zeros(grid, false), p, cfg, grid);

    ExistenceReport rep;
    rep.p = p;
    rep.lambda_base = base.value;
    rep.sign_tolerance = 1e-8 * std::max(1.0, std::fabs(base.value));
    const double tol = rep.sign_tolerance;

    auto lambda_at = [&](double a) {
        if (a == 0.0) return base.value;
        return lambda1(GridFunction::constant(grid, a, false), p, cfg, grid, base.eigenfunction).value;
    };
    auto ladder = [&] {
        std::vector<LadderPoint> out;
        for (double M : existence_ladder()) out.push_back({M, lambda_at(M)});
        return out;
    };
    auto sign_verdict = [tol](double lambda, bool want_negative) {
        if (std::fabs(lambda) <= tol) return std::string("indeterminate");
        return (lambda < 0.0) == want_negative ? std::string("satisfied") : std::string("unsatisfied");
    };

    rep.at_zero = {"at_zero", "lambda1 < 0", spec.a0, {}, std::nullopt, ""};
    if (std::isinf(spec.a0)) {
        rep.at_zero.ladder = ladder();
        const auto& l = rep.at_zero.ladder;
        bool decreasing = true;
        for (std::size_t i = 1; i < l.size(); ++i) decreasing = decreasing && l[i].lambda < l[i - 1].lambda;
        rep.at_zero.verdict = decreasing && l.back().lambda < -tol ? "satisfied" : "indeterminate";
    } else {
        rep.at_zero.lambda = lambda_at(spec.a0);
        rep.at_zero.verdict = sign_verdict(*rep.at_zero.lambda, true);
    }

    rep.at_infinity = {"at_infinity", "lambda1 > 0", spec.a_inf, {}, std::nullopt, ""};
    if (std::isinf(spec.a_inf)) {
        rep.at_infinity.ladder = ladder();
        rep.at_infinity.verdict = rep.at_infinity.ladder.back().lambda < -tol ? "unsatisfied" : "indeterminate";
    } else {
        rep.at_infinity.lambda = lambda_at(spec.a_inf);
        rep.at_infinity.verdict = sign_verdict(*rep.at_infinity.lambda, false);
    }

    const std::string& v0 = rep.at_zero.verdict;
    const std::string& v1 = rep.at_infinity.verdict;
    if (v0 == "unsatisfied" || v1 == "unsatisfied") rep.verdict = "unsatisfied";
    else if (v0 == "satisfied" && v1 == "satisfied") rep.verdict = "satisfied";
    else rep.verdict = "indeterminate";
    return rep;
}

// ----------------------------------------------------------------- uniqueness

double relative_distance(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid(), "relative_distance");
    const double scale = std::max(a.max_abs(), b.max_abs());
    if (scale == 0.0) return 0.0;
    return (a - b).max_abs() / scale;
}

double contradiction_integral(const NonlinearitySpec& spec, const GridFunction& u1, const GridFunction& u2, double p) {
    require_same_grid(u1.grid(), u2.grid(), "contradiction_integral");
    const HGrid& g = *u1.grid();
    std::vector<double> integrand(g.node_count(), 0.0);
    for (std::size_t k : g.interior()) {
        if (!(u1[k] > 0.0) || !(u2[k] > 0.0)) throw Error("contradiction_integral: solutions must be positive inside");
        const auto x = g.coords(k);
        const double q1 = spec.f(x, u1[k]) / std::pow(u1[k], p - 1.0);
        const double q2 = spec.f(x, u2[k]) / std::pow(u2[k], p - 1.0);
        integrand[k] = (q1 - q2) * (std::pow(u1[k], p) - std::pow(u2[k], p));
    }
    return integrate(g, integrand);
}

std::vector<Initializer> default_initializers(double p, const SolverConfig& config, const GridPtr& grid,
                                              std::size_t n_starts, std::optional<double>* eigen_value) {
    std::vector<Initializer> inits = {Initializer::constant(0.1), Initializer::constant(1.0),
                                      Initializer::constant(10.0), Initializer::random(1.0)};
    if (n_starts >= 5) {
        SolverConfig ec = config;
        ec.p = p;
        ec.init = Initializer::random(1.0);
        GridFunction v = GridFunction::zeros(grid, true);
        try {
            const EigenResult e = lambda1(GridFunction::zeros(grid, false), p, ec, grid);
            v = e.eigenfunction;
            if (eigen_value) *eigen_value = e.value;
        } catch (const EigenError& err) {
            v = err.last_iterate();
        }
        inits.push_back(Initializer::from_field(v.scaled(1.0 / v.max_abs())));
    }
    while (inits.size() < n_starts) inits.push_back(Initializer::random(1.0));
    inits.resize(n_starts, Initializer::constant(1.0));
    return inits;
}

UniquenessReport uniqueness_experiment(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid,
                                       const std::vector<Initializer>& initializers) {
    config.validate();
    if (initializers.size() < 2) throw Error("uniqueness_experiment: at least two starts are required");
    UniquenessReport rep;
    rep.p = config.p;
    rep.eps = config.resolved_eps(*grid);
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < initializers.size(); ++i) {
        SolverConfig cfg = config;
        cfg.init = initializers[i];
        cfg.seed = config.seed + i;
        const SolveResult r = solve(spec, cfg, grid);
        rep.tolerance = r.tolerance;
        rep.starts.push_back(summarise(r, initializers[i].describe(), initializers[i].seed.value_or(cfg.seed)));
        rep.solutions.push_back(r.u);
        if (r.converged) ok.push_back(i);
    }
    rep.converged = ok.size();
    rep.conclusive = ok.size() >= 2;
    rep.all_positive = !ok.empty();
    for (std::size_t i : ok) rep.all_positive = rep.all_positive && rep.starts[i].min_interior > 0.0;

    rep.min_diaz_saa = INFINITY;
    for (std::size_t a = 0; a < ok.size(); ++a) {
        for (std::size_t b = a + 1; b < ok.size(); ++b) {
            const GridFunction& u1 = rep.solutions[ok[a]];
            const GridFunction& u2 = rep.solutions[ok[b]];
            PairReport pr;
            pr.first = ok[a];
            pr.second = ok[b];
            pr.distance = relative_distance(u1, u2);
            rep.max_distance = std::max(rep.max_distance, pr.distance);
            try {
                pr.diaz_saa = diaz_saa_gap(u1, u2, config.p, rep.eps);
                rep.min_diaz_saa = std::min(rep.min_diaz_saa, pr.diaz_saa->gap);
                pr.contradiction = contradiction_integral(spec, u1, u2, config.p);
            } catch (const Error& e) {
                pr.diaz_saa_error = e.what();
            }
            rep.pairs.push_back(std::move(pr));
        }
    }
    if (std::isinf(rep.min_diaz_saa)) rep.min_diaz_saa = 0.0;
    return rep;
}

UniquenessReport uniqueness_experiment(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid,
                                       std::size_t n_starts) {
    std::optional<double> eigen_value;
    const auto inits = default_initializers(config.p, config, grid, n_starts, &eigen_value);
    UniquenessReport rep = uniqueness_experiment(spec, config, grid, inits);
    rep.eigen_start_value = eigen_value;
    return rep;
}

// ------------------------------------------------------------------ Diaz-Saa

bool DiazSaaReport::pass() const { return all_pass(checks); }

DiazSaaReport diaz_saa_experiment(const NonlinearitySpec& mu1, const NonlinearitySpec& mu2,
                                  const SolverConfig& config, const GridPtr& grid) {
    config.validate();
    DiazSaaReport rep;
    rep.p = config.p;
    rep.eps = config.resolved_eps(*grid);
    const SolveResult r1 = solve(mu1, config, grid);
    const SolveResult r2 = solve(mu2, config, grid);
    rep.first = summarise(r1, config.init.describe(), config.seed);
    rep.second = summarise(r2, config.init.describe(), config.seed);
    rep.solutions = {r1.u, r2.u};

    rep.checks.push_back(make_check("solve_first_residual", r1.converged ? r1.residual : INFINITY, "<=", r1.tolerance));
    rep.checks.push_back(make_check("solve_second_residual", r2.converged ? r2.residual : INFINITY, "<=", r2.tolerance));
    rep.checks.push_back(make_check("positivity", std::min(r1.min_interior, r2.min_interior), ">", 0.0));
    if (!rep.pass()) return rep;

    rep.gap = diaz_saa_gap(r1.u, r2.u, config.p, rep.eps);
    rep.swapped = diaz_saa_gap(r2.u, r1.u, config.p, rep.eps);
    rep.self = diaz_saa_gap(r1.u, r1.u, config.p, rep.eps);
    rep.scaled = diaz_saa_gap(r1.u, r1.u.scaled(2.0), config.p, rep.eps);
    const double swap_scale = std::max({std::fabs(rep.gap->gap), std::fabs(rep.gap->first), 1e-300});
    rep.checks.push_back(make_check("gap", rep.gap->gap, ">=", -1e-10));
    rep.checks.push_back(make_check("swap_symmetry", std::fabs(rep.gap->gap - rep.swapped->gap) / swap_scale, "<=", 1e-13));
    rep.checks.push_back(make_check("self_gap", std::fabs(rep.self->gap), "<=", 0.0));
    rep.checks.push_back(make_check("scaled_gap", rep.scaled->gap, ">=", -1e-10));
    return rep;
}

}  // namespace heis
