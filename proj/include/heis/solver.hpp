#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/descent.hpp"
#include "heis/grid.hpp"
#include "heis/nonlinearity.hpp"

namespace heis {

/// Starting field for the descent. Every kind is made Dirichlet (boundary 0).
struct Initializer {
    enum class Kind { Constant, Random, Field };
    Kind kind = Kind::Constant;
    double value = 1.0;  // constant value, or upper bound of the uniform random field
    std::optional<GridFunction> field;
    std::optional<std::uint64_t> seed;  // overrides the seed passed to build()

    static Initializer constant(double c) { return {Kind::Constant, c, std::nullopt, std::nullopt}; }
    static Initializer random(double amplitude, std::optional<std::uint64_t> seed = std::nullopt) {
        return {Kind::Random, amplitude, std::nullopt, seed};
    }
    static Initializer from_field(GridFunction f) { return {Kind::Field, 0.0, std::move(f), std::nullopt}; }

    std::string describe() const;
    GridFunction build(const GridPtr& grid, std::uint64_t seed) const;
};

struct SolverConfig {
    double p = 2.0;
    std::optional<double> eps;  // default_eps(grid) when unset
    std::size_t max_iterations = 50000;
    double armijo = 1e-4;
    double backtrack = 0.5;
    double tol_residual = 1e-9;  // multiplied by sqrt(volume)
    double tol_step = 1e-10;
    Initializer init = Initializer::constant(1.0);
    std::uint64_t seed = 1;

    double resolved_eps(const HGrid& grid) const;
    void validate() const;
};

struct SolveResult {
    GridFunction u;
    double energy = 0.0;
    double residual = 0.0;  // interior L2 of -Delta_p u - f(., u)
    std::size_t iterations = 0;
    double min_interior = 0.0;
    bool converged = false;
    std::string stop_reason;
    double eps = 0.0;
    double tolerance = 0.0;  // absolute residual tolerance used
    std::vector<IterationRecord> history;
};

/// E(u) = (1/p) integral |grad u|^p - integral F(x, u), with the regularised
/// density ((|grad u|^2 + eps^2)^{p/2} - eps^p) when eps > 0.
double energy(const GridFunction& u, const NonlinearitySpec& spec, double p, double eps = 0.0);

/// Residual field -Delta_p u - f(x, u) at interior nodes (0 on the boundary),
/// the gradient of E in the quadrature metric.
GridFunction energy_gradient(const GridFunction& u, const NonlinearitySpec& spec, double p, double eps = 0.0);

/// <-Delta_p u - f(., u), phi>, the first variation of E along phi.
double first_variation(const GridFunction& u, const NonlinearitySpec& spec, double p, const GridFunction& phi,
                       double eps = 0.0);

/// Minimises E by steepest descent from config.init. Non-convergence is
/// reported through the result's flag; NaN energy raises Error("divergence").
SolveResult solve(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid);

}  // namespace heis
