#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "heis/grid.hpp"

namespace heis::oracle {

// Linear-algebra references for the p = 2 problems: the discrete gradient is
// assembled into a sparse matrix once and the quadratic problems are handed
// to Eigen's direct solvers, independent of the descent iterations.

/// Interior node numbering used by the assembled matrices.
struct InteriorMap {
    std::vector<long> column;  // node -> column, -1 on the boundary
    std::vector<std::size_t> node;  // column -> node
};

InteriorMap interior_map(const HGrid& grid);

/// G restricted to Dirichlet functions: rows (component * N + node), columns interior unknowns.
Eigen::SparseMatrix<double> gradient_matrix(const HGrid& grid);

/// K = G^T W G, the Hessian of (1/2) integral |grad u|^2 in the interior unknowns.
Eigen::SparseMatrix<double> stiffness_matrix(const HGrid& grid);

/// Solves -Delta_H u = rhs at the interior nodes (rhs sampled on the grid).
GridFunction solve_linear(const GridPtr& grid, const GridFunction& rhs);

/// Smallest eigenvalue of -Delta_H - a with Dirichlet data (dense symmetric solve).
double smallest_eigenvalue(const GridPtr& grid, const GridFunction& a);

}  // namespace heis::oracle
