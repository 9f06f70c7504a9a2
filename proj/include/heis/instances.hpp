#pragma once

#include "heis/analytic_field.hpp"
#include "heis/grid.hpp"
#include "heis/random.hpp"

namespace heis {

// Random smooth test functions on a box grid.

/// Box bubble prod_a (z_a - lower_a)(upper_a - z_a) times a quadratic with
/// standard normal coefficients; vanishes on every face, may change sign.
AnalyticField random_dirichlet_field(const HGrid& grid, Rng& rng);

/// exp of a quadratic with coefficients of size `amplitude`; positive everywhere.
AnalyticField random_positive_field(const HGrid& grid, Rng& rng, double amplitude = 0.3);

/// f scaled so that its largest absolute nodal value on `grid` is 1.
AnalyticField normalise_on_grid(const AnalyticField& f, const HGrid& grid);

/// Uniform random point of the box.
GroupPoint random_point(const HGrid& grid, Rng& rng);

}  // namespace heis
