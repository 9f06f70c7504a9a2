#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "heis/analytic_field.hpp"
#include "heis/group.hpp"

namespace heis {

/// Uniform Cartesian lattice over an axis-aligned box in R^{2n+1}.
///
/// Axis order matches GroupPoint: x_1..x_n, y_1..y_n, t. Nodes are numbered
/// with axis 0 varying fastest. Boundary nodes are the outermost layer on
/// every axis; quadrature weights are the tensor trapezoid rule.
class HGrid {
public:
    HGrid(std::size_t n, std::vector<double> lower, std::vector<double> upper, std::vector<std::size_t> nodes);

    /// [-1/2, 1/2]^{2n+1}, centred on the group identity.
    static std::shared_ptr<const HGrid> unit_box(std::size_t n, std::size_t nodes_per_axis);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return 2 * n_ + 1; }
    std::size_t t_axis() const { return 2 * n_; }
    std::size_t node_count() const { return weights_.size(); }

    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<std::size_t>& nodes() const { return nodes_; }
    double spacing(std::size_t axis) const { return h_[axis]; }
    std::size_t stride(std::size_t axis) const { return stride_[axis]; }

    std::size_t index(std::size_t node, std::size_t axis) const { return idx_[node * dim() + axis]; }
    double coordinate(std::size_t node, std::size_t axis) const { return coords_[node * dim() + axis]; }
    std::span<const double> coords(std::size_t node) const { return {coords_.data() + node * dim(), dim()}; }
    GroupPoint point(std::size_t node) const { return GroupPoint::from_coords(coords(node)); }

    bool is_boundary(std::size_t node) const { return boundary_[node] != 0; }
    const std::vector<char>& boundary_mask() const { return boundary_; }
    const std::vector<std::size_t>& interior() const { return interior_; }

    /// Number of lattice steps from `node` to the nearest boundary layer.
    std::size_t depth(std::size_t node) const;

    const std::vector<double>& weights() const { return weights_; }
    double volume() const;
    double diameter() const;
    double min_spacing() const;
    double max_spacing() const;

    bool operator==(const HGrid& o) const {
        return n_ == o.n_ && lower_ == o.lower_ && upper_ == o.upper_ && nodes_ == o.nodes_;
    }

private:
    std::size_t n_;
    std::vector<double> lower_, upper_, h_;
    std::vector<std::size_t> nodes_, stride_;
    std::vector<std::size_t> idx_;
    std::vector<double> coords_;
    std::vector<char> boundary_;
    std::vector<std::size_t> interior_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const HGrid>;

/// Real values on the nodes of a grid.
///
/// A Dirichlet-flagged function is exactly zero on every boundary node; the
/// constructor rejects values that break this.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values, bool dirichlet = false);

    static GridFunction zeros(GridPtr grid, bool dirichlet = true);
    static GridFunction constant(GridPtr grid, double c, bool dirichlet);
    /// Samples f at every node; with `dirichlet` the boundary layer is set to 0.
    static GridFunction sample(GridPtr grid, const std::function<double(std::span<const double>)>& f, bool dirichlet);
    static GridFunction sample(GridPtr grid, const AnalyticField& f, bool dirichlet);

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t node) const { return values_[node]; }
    std::size_t size() const { return values_.size(); }
    bool dirichlet() const { return dirichlet_; }

    double max_abs() const;
    double min_interior() const;
    double max_interior() const;

    GridFunction scaled(double c) const;
    GridFunction with_values(std::vector<double> values) const { return {grid_, std::move(values), dirichlet_}; }

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(double c, const GridFunction& a) { return a.scaled(c); }

private:
    GridPtr grid_;
    std::vector<double> values_;
    bool dirichlet_;
};

/// 2n horizontal components per node, ordered (X_1..X_n, Y_1..Y_n).
/// Storage is component-major: data[c * node_count + node].
class HVectorField {
public:
    HVectorField(GridPtr grid, std::vector<double> data);

    static HVectorField zeros(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    std::size_t components() const { return 2 * grid_->n(); }
    double at(std::size_t component, std::size_t node) const { return data_[component * grid_->node_count() + node]; }
    std::span<const double> component(std::size_t c) const {
        return {data_.data() + c * grid_->node_count(), grid_->node_count()};
    }
    const std::vector<double>& data() const { return data_; }

    /// Euclidean length of the horizontal vector at a node.
    double norm_at(std::size_t node) const;

private:
    GridPtr grid_;
    std::vector<double> data_;
};

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what);

}  // namespace heis
