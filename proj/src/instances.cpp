#include "heis/instances.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

namespace {

AnalyticField random_quadratic(const HGrid& grid, Rng& rng, double amplitude) {
    const std::size_t d = grid.dim();
    AnalyticField q = AnalyticField::constant(amplitude * rng.normal());
    for (std::size_t a = 0; a < d; ++a) {
        const AnalyticField za = AnalyticField::coordinate(a);
        q = q + amplitude * rng.normal() * za;
        for (std::size_t b = a; b < d; ++b) q = q + amplitude * rng.normal() * (za * AnalyticField::coordinate(b));
    }
    return q;
}

}  // namespace

AnalyticField random_dirichlet_field(const HGrid& grid, Rng& rng) {
    AnalyticField bubble = AnalyticField::constant(1.0);
    for (std::size_t a = 0; a < grid.dim(); ++a) {
        const AnalyticField z = AnalyticField::coordinate(a);
        bubble = bubble * ((z - AnalyticField::constant(grid.lower()[a])) * (AnalyticField::constant(grid.upper()[a]) - z));
    }
    return bubble * random_quadratic(grid, rng, 1.0);
}

AnalyticField random_positive_field(const HGrid& grid, Rng& rng, double amplitude) {
    return exp(random_quadratic(grid, rng, amplitude));
}

AnalyticField normalise_on_grid(const AnalyticField& f, const HGrid& grid) {
    double m = 0.0;
    for (std::size_t k = 0; k < grid.node_count(); ++k) m = std::max(m, std::fabs(f.value(grid.coords(k))));
    if (!(m > 0.0)) throw Error("normalise_on_grid: field vanishes on the grid");
    return (1.0 / m) * f;
}

GroupPoint random_point(const HGrid& grid, Rng& rng) {
    std::vector<double> c(grid.dim());
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = rng.uniform(grid.lower()[a], grid.upper()[a]);
    return GroupPoint::from_coords(c);
}

}  // namespace heis
