#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heis/grid.hpp"

namespace heis {

struct IterationRecord {
    std::size_t iteration;
    double value;
    double gradient_norm;
    double step;
};

/// Objective value with its gradient in the quadrature metric (one entry per
/// node, zero on the boundary). `noise` is the absolute size below which two
/// values cannot be told apart in floating point.
struct Evaluation {
    double value = 0.0;
    std::vector<double> gradient;
    double noise = 0.0;
};

using ObjectiveFn = std::function<Evaluation(std::span<const double>)>;

struct DescentOptions {
    std::size_t max_iterations = 50000;
    double armijo = 1e-4;
    double backtrack = 0.5;
    double initial_step = 1.0;
    /// Converged once the gradient norm is at or below this (may depend on the value).
    std::function<double(double value)> gradient_tolerance;
    /// Sup-norm bound on the last iterate change required for convergence.
    double step_tolerance = 1e-10;
    /// Applied to every accepted iterate (e.g. renormalisation); the objective
    /// must be invariant under it.
    std::function<void(std::vector<double>&)> project;
    /// Reference window of the Armijo test: the trial value is compared with
    /// the largest of the last `nonmonotone_window` accepted values. 1 gives
    /// a monotone descent.
    std::size_t nonmonotone_window = 1;
};

struct DescentResult {
    std::vector<double> x;
    Evaluation last;
    double gradient_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::string stop_reason;
    std::vector<IterationRecord> history;
};

/// Steepest descent with an Armijo line search on the objective.
///
/// Trial steps start from the Barzilai-Borwein length of the previous
/// iteration. A trial failing the Armijo test against the largest of the last
/// `nonmonotone_window` values is shortened; when the predicted decrease falls
/// below the objective's rounding noise the two-sided approximate-Wolfe test
/// on the directional derivative decides instead, growing steps that are too
/// short and bisecting the bracket otherwise. Accepted values never rise above
/// the reference by more than `noise`. A NaN value raises Error("divergence").
DescentResult descend(const HGrid& grid, const ObjectiveFn& objective, std::vector<double> x0,
                      const DescentOptions& options);

}  // namespace heis
