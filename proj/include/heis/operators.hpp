#pragma once

#include <span>

#include "heis/grid.hpp"

namespace heis {

// Discrete horizontal calculus on an HGrid.
//
// The gradient uses centred differences at nodes interior to an axis and
// one-sided differences on that axis's boundary layers; the coefficients
// 2y_i and -2x_i multiply the t-difference at the node itself. The divergence
// is the negative adjoint of the gradient under the trapezoid-weighted inner
// products, so <grad u, F> = -<u, div F> for every Dirichlet u.

/// Raw kernel: `out` (2n * node_count, component-major) = grad u.
void apply_gradient(const HGrid& grid, std::span<const double> u, std::span<double> out);

/// Raw kernel: `out` (node_count) = div F, zero on boundary nodes.
void apply_divergence(const HGrid& grid, std::span<const double> field, std::span<double> out);

HVectorField h_gradient(const GridFunction& u);

/// Negative adjoint of h_gradient; the result is Dirichlet-flagged.
GridFunction h_divergence(const HVectorField& field);

/// Regularised p-sub-Laplacian div((|grad u|^2 + eps^2)^{(p-2)/2} grad u).
///
/// Returns Delta_{H,p} u itself (not its negative). Requires a Dirichlet u,
/// p > 1, eps >= 0. With eps = 0 and p < 2 a node with vanishing gradient has
/// no defined weight and raises Error("singular weight").
GridFunction p_sub_laplacian(const GridFunction& u, double p, double eps);

/// Default regulariser, 1e-8 / diameter of the box.
double default_eps(const HGrid& grid);

/// Trapezoid quadrature with compensated summation in node order.
double integrate(const GridFunction& w);
double integrate(const HGrid& grid, std::span<const double> values);

/// Quadrature inner products.
double inner(const GridFunction& a, const GridFunction& b);
double inner(const HVectorField& a, const HVectorField& b);

/// (integral of |grad u|^p)^{1/p} for Dirichlet u.
double d1p_norm(const GridFunction& u, double p);

/// Discrete L2 norm over interior nodes (the boundary carries no equation).
double interior_l2(const HGrid& grid, std::span<const double> values);

void require_p(double p);

}  // namespace heis
