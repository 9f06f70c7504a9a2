#include "heis/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "heis/compensated_sum.hpp"
#include "heis/operators.hpp"
#include "heis/random.hpp"
#include "flux.hpp"

namespace heis {

namespace {

using detail::compute_flux;

// Relative rounding floor of the assembled energy.
constexpr double kEnergyNoise = 1e-13;

Evaluation evaluate(const HGrid& g, std::span<const double> u, const NonlinearitySpec& spec, double p, double eps) {
    const std::size_t N = g.node_count();
    detail::Flux fl = compute_flux(g, u, p, eps);
    const auto& w = g.weights();
    CompensatedSum semi, pot, pot_abs;
    for (std::size_t k = 0; k < N; ++k) {
        semi.add(w[k] * fl.density[k]);
        if (g.is_boundary(k) && u[k] == 0.0) continue;  // F(x, 0) = 0
        const double F = spec.F_ext(g.coords(k), u[k]);
        pot.add(w[k] * F);
        pot_abs.add(w[k] * std::fabs(F));
    }
    Evaluation ev;
    ev.value = semi.value() / p - pot.value();
    ev.noise = kEnergyNoise * (semi.value() / p + pot_abs.value()) + 1e-300;
    ev.gradient.assign(N, 0.0);
    std::vector<double> div(N);
    apply_divergence(g, fl.flux, div);
    for (std::size_t k : g.interior()) ev.gradient[k] = -div[k] - spec.f_ext(g.coords(k), u[k]);
    return ev;
}

}  // namespace

std::string Initializer::describe() const {
    char buf[64];
    switch (kind) {
        case Kind::Constant: std::snprintf(buf, sizeof buf, "constant:%g", value); return buf;
        case Kind::Random: std::snprintf(buf, sizeof buf, "random:%g", value); return buf;
        case Kind::Field: return "field";
    }
    return "?";
}

GridFunction Initializer::build(const GridPtr& grid, std::uint64_t seed) const {
    switch (kind) {
        case Kind::Constant: return GridFunction::constant(grid, value, true);
        case Kind::Random: {
            Rng rng(this->seed ? *this->seed : seed);
            std::vector<double> v(grid->node_count(), 0.0);
            for (std::size_t k : grid->interior()) v[k] = value * (0.01 + 0.99 * rng.uniform());
            return {grid, std::move(v), true};
        }
        case Kind::Field: {
            if (!field) throw Error("Initializer: missing field");
            require_same_grid(field->grid(), grid, "Initializer");
            std::vector<double> v = field->values();
            for (std::size_t k = 0; k < v.size(); ++k)
                if (grid->is_boundary(k)) v[k] = 0.0;
            return {grid, std::move(v), true};
        }
    }
    throw Error("Initializer: unknown kind");
}

double SolverConfig::resolved_eps(const HGrid& grid) const { return eps ? *eps : default_eps(grid); }

void SolverConfig::validate() const {
    require_p(p);
    if (eps && !(*eps >= 0.0)) throw Error("eps must be non-negative");
    if (!(tol_residual > 0.0) || !(tol_step > 0.0)) throw Error("tolerances must be positive");
    if (!(armijo > 0.0 && armijo < 1.0) || !(backtrack > 0.0 && backtrack < 1.0))
        throw Error("line-search parameters must lie in (0, 1)");
}

double energy(const GridFunction& u, const NonlinearitySpec& spec, double p, double eps) {
    require_p(p);
    if (!u.dirichlet()) throw Error("energy: u must be Dirichlet-flagged");
    return evaluate(*u.grid(), u.values(), spec, p, eps).value;
}

GridFunction energy_gradient(const GridFunction& u, const NonlinearitySpec& spec, double p, double eps) {
    require_p(p);
    if (!u.dirichlet()) throw Error("energy_gradient: u must be Dirichlet-flagged");
    return {u.grid(), evaluate(*u.grid(), u.values(), spec, p, eps).gradient, true};
}

double first_variation(const GridFunction& u, const NonlinearitySpec& spec, double p, const GridFunction& phi,
                       double eps) {
    return inner(energy_gradient(u, spec, p, eps), phi);
}

SolveResult solve(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid) {
    config.validate();
    const double p = config.p;
    const double eps = config.resolved_eps(*grid);
    const double tol = config.tol_residual * std::sqrt(grid->volume());

    DescentOptions opt;
    opt.max_iterations = config.max_iterations;
    opt.armijo = config.armijo;
    opt.backtrack = config.backtrack;
    opt.step_tolerance = config.tol_step;
    opt.gradient_tolerance = [tol](double) { return tol; };

    const HGrid& g = *grid;
    auto objective = [&](std::span<const double> u) { return evaluate(g, u, spec, p, eps); };
    DescentResult d = descend(g, objective, config.init.build(grid, config.seed).values(), opt);

    const double min_u = GridFunction(grid, d.x, true).min_interior();
    return SolveResult{.u = GridFunction(grid, std::move(d.x), true),
                       .energy = d.last.value,
                       .residual = d.gradient_norm,
                       .iterations = d.iterations,
                       .min_interior = min_u,
                       .converged = d.converged,
                       .stop_reason = d.stop_reason,
                       .eps = eps,
                       .tolerance = tol,
                       .history = std::move(d.history)};
}

}  // namespace heis
