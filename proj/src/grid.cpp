#include "heis/grid.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

HGrid::HGrid(std::size_t n, std::vector<double> lower, std::vector<double> upper, std::vector<std::size_t> nodes)
    : n_(n), lower_(std::move(lower)), upper_(std::move(upper)), nodes_(std::move(nodes)) {
    const std::size_t d = 2 * n_ + 1;
    if (n_ == 0) throw Error("HGrid: n must be >= 1");
    if (lower_.size() != d || upper_.size() != d || nodes_.size() != d)
        throw Error("HGrid: corners and node counts need 2n+1 entries");
    h_.resize(d);
    stride_.resize(d);
    std::size_t count = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (nodes_[a] < 3) throw Error("HGrid: at least 3 nodes per axis are required");
        if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]) || !(upper_[a] > lower_[a]))
            throw Error("HGrid: box must have positive finite extent on every axis");
        h_[a] = (upper_[a] - lower_[a]) / static_cast<double>(nodes_[a] - 1);
        stride_[a] = count;
        count *= nodes_[a];
    }

    idx_.resize(count * d);
    coords_.resize(count * d);
    boundary_.assign(count, 0);
    weights_.assign(count, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t rem = k;
        for (std::size_t a = 0; a < d; ++a) {
            const std::size_t i = rem % nodes_[a];
            rem /= nodes_[a];
            idx_[k * d + a] = i;
            // Pin the last node to the upper corner exactly.
            coords_[k * d + a] = i + 1 == nodes_[a] ? upper_[a] : lower_[a] + static_cast<double>(i) * h_[a];
            const bool edge = i == 0 || i + 1 == nodes_[a];
            if (edge) boundary_[k] = 1;
            weights_[k] *= edge ? 0.5 * h_[a] : h_[a];
        }
        if (!boundary_[k]) interior_.push_back(k);
    }
}

std::shared_ptr<const HGrid> HGrid::unit_box(std::size_t n, std::size_t nodes_per_axis) {
    const std::size_t d = 2 * n + 1;
    return std::make_shared<const HGrid>(n, std::vector<double>(d, -0.5), std::vector<double>(d, 0.5),
                                         std::vector<std::size_t>(d, nodes_per_axis));
}

std::size_t HGrid::depth(std::size_t node) const {
    std::size_t best = nodes_[0];
    for (std::size_t a = 0; a < dim(); ++a) {
        const std::size_t i = index(node, a);
        best = std::min({best, i, nodes_[a] - 1 - i});
    }
    return best;
}

double HGrid::volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < dim(); ++a) v *= upper_[a] - lower_[a];
    return v;
}

double HGrid::diameter() const {
    double s = 0.0;
    for (std::size_t a = 0; a < dim(); ++a) s += (upper_[a] - lower_[a]) * (upper_[a] - lower_[a]);
    return std::sqrt(s);
}

double HGrid::min_spacing() const { return *std::min_element(h_.begin(), h_.end()); }
double HGrid::max_spacing() const { return *std::max_element(h_.begin(), h_.end()); }

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
    if (a != b && !(*a == *b)) throw Error(std::string(what) + ": operands live on different grids");
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values, bool dirichlet)
    : grid_(std::move(grid)), values_(std::move(values)), dirichlet_(dirichlet) {
    if (!grid_) throw Error("GridFunction: null grid");
    if (values_.size() != grid_->node_count()) throw Error("GridFunction: value count does not match node count");
    if (dirichlet_)
        for (std::size_t k = 0; k < values_.size(); ++k)
            if (grid_->is_boundary(k) && values_[k] != 0.0)
                throw Error("GridFunction: Dirichlet function must vanish on the boundary");
}

GridFunction GridFunction::zeros(GridPtr grid, bool dirichlet) {
    const std::size_t count = grid->node_count();
    return {std::move(grid), std::vector<double>(count, 0.0), dirichlet};
}

GridFunction GridFunction::constant(GridPtr grid, double c, bool dirichlet) {
    std::vector<double> v(grid->node_count(), c);
    if (dirichlet)
        for (std::size_t k = 0; k < v.size(); ++k)
            if (grid->is_boundary(k)) v[k] = 0.0;
    return {std::move(grid), std::move(v), dirichlet};
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(std::span<const double>)>& f,
                                  bool dirichlet) {
    std::vector<double> v(grid->node_count());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = dirichlet && grid->is_boundary(k) ? 0.0 : f(grid->coords(k));
    return {std::move(grid), std::move(v), dirichlet};
}

GridFunction GridFunction::sample(GridPtr grid, const AnalyticField& f, bool dirichlet) {
    return sample(std::move(grid), [&f](std::span<const double> q) { return f.value(q); }, dirichlet);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

double GridFunction::min_interior() const {
    double m = INFINITY;
    for (std::size_t k : grid_->interior()) m = std::min(m, values_[k]);
    return m;
}

double GridFunction::max_interior() const {
    double m = -INFINITY;
    for (std::size_t k : grid_->interior()) m = std::max(m, values_[k]);
    return m;
}

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return {grid_, std::move(v), dirichlet_};
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid_, b.grid_, "GridFunction +");
    std::vector<double> v(a.values_);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
    return {a.grid_, std::move(v), a.dirichlet_ && b.dirichlet_};
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid_, b.grid_, "GridFunction -");
    std::vector<double> v(a.values_);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values_[k];
    return {a.grid_, std::move(v), a.dirichlet_ && b.dirichlet_};
}

HVectorField::HVectorField(GridPtr grid, std::vector<double> data) : grid_(std::move(grid)), data_(std::move(data)) {
    if (!grid_) throw Error("HVectorField: null grid");
    if (data_.size() != 2 * grid_->n() * grid_->node_count())
        throw Error("HVectorField: expected 2n components per node");
}

HVectorField HVectorField::zeros(GridPtr grid) {
    const std::size_t size = 2 * grid->n() * grid->node_count();
    return {std::move(grid), std::vector<double>(size, 0.0)};
}

double HVectorField::norm_at(std::size_t node) const {
    double s = 0.0;
    for (std::size_t c = 0; c < components(); ++c) s += at(c, node) * at(c, node);
    return std::sqrt(s);
}

}  // namespace heis
