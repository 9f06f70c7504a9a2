#pragma once

#include <optional>
#include <vector>

#include "heis/descent.hpp"
#include "heis/grid.hpp"
#include "heis/solver.hpp"

namespace heis {

struct EigenResult {
    double value = 0.0;
    GridFunction eigenfunction;  // Dirichlet, integral |v|^p = 1, positive-signed
    double residual = 0.0;       // interior L2 of -Delta_p v - (a + value) |v|^{p-2} v
    std::size_t iterations = 0;
    double eps = 0.0;
    std::vector<IterationRecord> history;
};

/// Raised when the Rayleigh descent stops without converging; carries the trace.
class EigenError : public Error {
public:
    EigenError(const std::string& what, std::vector<IterationRecord> trace, GridFunction last)
        : Error(what), trace_(std::move(trace)), last_(std::move(last)) {}
    const std::vector<IterationRecord>& trace() const { return trace_; }
    /// Normalised iterate at the stop.
    const GridFunction& last_iterate() const { return last_; }

private:
    std::vector<IterationRecord> trace_;
    GridFunction last_;
};

/// Rayleigh quotient (integral |grad v|^p - integral a |v|^p) / integral |v|^p.
double rayleigh_quotient(const GridFunction& v, const GridFunction& a, double p, double eps = 0.0);

/// Relative residual floor for p != 2, where the quotient may have several
/// local minima and only the value is recorded.
constexpr double kRelaxedEigenTolerance = 1e-5;

/// First eigenvalue of -Delta_p - a with Dirichlet data, started from
/// config.init (or `start` when given).
///
/// p = 2: block LOBPCG in the quadrature inner product (block of 4, the start
/// in the first column), converged when the leading residual is at most
/// config.tol_residual * sqrt(volume) * max(1, |value|).
/// p != 2: normalised Barzilai-Borwein descent on the quotient (integral
/// |v|^p = 1 after every step) with the tolerance raised to at least
/// kRelaxedEigenTolerance, which also bounds the last iterate change.
EigenResult lambda1(const GridFunction& a, double p, const SolverConfig& config, const GridPtr& grid,
                    const std::optional<GridFunction>& start = std::nullopt);

}  // namespace heis
