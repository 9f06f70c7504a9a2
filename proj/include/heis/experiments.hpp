#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/eigen.hpp"
#include "heis/grid.hpp"
#include "heis/nonlinearity.hpp"
#include "heis/picone.hpp"
#include "heis/solver.hpp"

namespace heis {

/// One pass/fail entry of a report. `relation` is "<=", ">=" or ">".
struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string relation;
    double tolerance = 0.0;
};

Check make_check(std::string name, double value, const std::string& relation, double tolerance);

// ---------------------------------------------------------------- Picone suite

struct PiconeSuiteConfig {
    double p = 2.5;
    std::string g = "power";
    std::size_t instances = 25;
    std::size_t nodes = 17;
    std::size_t points_per_instance = 20;
    std::uint64_t seed = 1;
    std::optional<double> eps;
};

struct PiconeReport {
    PiconeSuiteConfig config;
    std::string g_label;
    double h = 0.0;
    double eps = 0.0;
    Admissibility admissibility;
    double exact_residual = 0.0;   // max |L - R| / (1 + max |L|), exact gradients
    double grid_residual = 0.0;    // max |L - R| on the grid
    double grid_constant = 0.0;    // grid_residual / h
    double min_L = 0.0;            // over all grid instances, unit sup-norm data
    double young_margin = 0.0;
    EqualityDiagnostic equality;   // u = 3 v
    EqualityDiagnostic perturbed;  // u = v (1 + 0.01 s)
    double inequality_min_gap = 0.0;
    double inequality_self_gap = 0.0;
    double k_shift = 0.0;
    std::vector<Check> checks;

    bool pass() const;
    std::vector<std::string> failed() const;
};

/// Admissibility, the identity on exact and grid paths, nonnegativity, the
/// Young step, the equality case and the integral inequality over random
/// instances (u Dirichlet, v > 0, both scaled to unit sup-norm).
PiconeReport run_picone_suite(const PiconeSuiteConfig& config);

// ------------------------------------------------------------------ existence

struct LadderPoint {
    double M;
    double lambda;
};

struct ConditionCheck {
    std::string name;         // "at_zero" or "at_infinity"
    std::string requirement;  // "lambda1 < 0" or "lambda1 > 0"
    double limit = 0.0;       // a0 or a_inf, possibly +inf
    std::vector<LadderPoint> ladder;  // truncations when the limit is infinite
    std::optional<double> lambda;     // lambda1(-Delta_p - limit) when finite
    std::string verdict;      // "satisfied", "unsatisfied", "indeterminate"
};

struct ExistenceReport {
    double p = 0.0;
    double lambda_base = 0.0;  // lambda1(-Delta_p)
    double sign_tolerance = 0.0;
    ConditionCheck at_zero;
    ConditionCheck at_infinity;
    std::string verdict;
};

/// Truncation levels used for infinite limits.
std::vector<double> existence_ladder();

/// Sign conditions lambda1(-Delta_p - a0) < 0 and lambda1(-Delta_p - a_inf) > 0.
/// An infinite limit is replaced by the ladder M = 10, 100, 1000, each value
/// computed by lambda1 with a = M: the condition at zero is satisfied when the
/// ladder strictly decreases and ends negative; at infinity it is
/// unsatisfied when the ladder ends negative. Values within sign_tolerance of
/// zero are indeterminate.
ExistenceReport existence_check(const NonlinearitySpec& spec, double p, const SolverConfig& config,
                                const GridPtr& grid);

// ----------------------------------------------------------------- uniqueness

struct StartReport {
    std::string initializer;
    std::uint64_t seed = 0;
    bool converged = false;
    std::string stop_reason;
    std::size_t iterations = 0;
    double residual = 0.0;
    double energy = 0.0;
    double min_interior = 0.0;
};

struct PairReport {
    std::size_t first = 0;
    std::size_t second = 0;
    double distance = 0.0;  // relative sup-norm distance
    std::optional<DiazSaaGap> diaz_saa;
    std::string diaz_saa_error;
    /// integral (f(u1)/u1^{p-1} - f(u2)/u2^{p-1}) (u1^p - u2^p); only with both positive.
    std::optional<double> contradiction;
};

struct UniquenessReport {
    double p = 0.0;
    double eps = 0.0;
    double tolerance = 0.0;
    std::vector<StartReport> starts;
    std::vector<PairReport> pairs;  // converged pairs only
    std::size_t converged = 0;
    bool conclusive = false;        // at least two starts converged
    double max_distance = 0.0;
    bool all_positive = false;      // every converged solution positive inside
    double min_diaz_saa = 0.0;
    std::optional<double> eigen_start_value;  // lambda1 behind the eigenfunction start
    std::vector<GridFunction> solutions;
};

/// Constants 0.1, 1, 10, a random positive field, the lambda1 eigenfunction
/// scaled to unit sup-norm, then further random fields; the first n_starts.
std::vector<Initializer> default_initializers(double p, const SolverConfig& config, const GridPtr& grid,
                                              std::size_t n_starts, std::optional<double>* eigen_value = nullptr);

/// Solves from each initializer; start i uses seed config.seed + i.
UniquenessReport uniqueness_experiment(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid,
                                       const std::vector<Initializer>& initializers);
UniquenessReport uniqueness_experiment(const NonlinearitySpec& spec, const SolverConfig& config, const GridPtr& grid,
                                       std::size_t n_starts);

/// Relative sup-norm distance |a - b|_inf / max(|a|_inf, |b|_inf), 0 for two zeros.
double relative_distance(const GridFunction& a, const GridFunction& b);

/// integral (f(x,u1)/u1^{p-1} - f(x,u2)/u2^{p-1}) (u1^p - u2^p) over interior nodes.
double contradiction_integral(const NonlinearitySpec& spec, const GridFunction& u1, const GridFunction& u2, double p);

// ------------------------------------------------------------------ Diaz-Saa

struct DiazSaaReport {
    double p = 0.0;
    double eps = 0.0;
    StartReport first;
    StartReport second;
    std::optional<DiazSaaGap> gap;      // (u1, u2)
    std::optional<DiazSaaGap> swapped;  // (u2, u1)
    std::optional<DiazSaaGap> self;     // (u1, u1)
    std::optional<DiazSaaGap> scaled;   // (u1, 2 u1)
    std::vector<Check> checks;
    std::vector<GridFunction> solutions;

    bool pass() const;
};

/// Solves -Delta_p u_i = mu_i(x, u_i) for both specs and evaluates the
/// Diaz-Saa integral on the pair, the swapped pair, (u1, u1) and (u1, 2 u1).
DiazSaaReport diaz_saa_experiment(const NonlinearitySpec& mu1, const NonlinearitySpec& mu2,
                                  const SolverConfig& config, const GridPtr& grid);

}  // namespace heis
