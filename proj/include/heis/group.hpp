#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis {

/// Raised for dimension/index/precondition violations throughout the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An element (x, y, t) of the Heisenberg group H^n.
///
/// Coordinates are stored flat as (x_1..x_n, y_1..y_n, t), the same layout
/// used by grid nodes and analytic fields.
class GroupPoint {
public:
    GroupPoint(std::vector<double> x, std::vector<double> y, double t);

    /// From a flat coordinate vector of odd length 2n+1.
    static GroupPoint from_coords(std::span<const double> coords);
    static GroupPoint identity(std::size_t n);

    std::size_t n() const { return (coords_.size() - 1) / 2; }
    std::size_t dim() const { return coords_.size(); }

    double x(std::size_t i) const { return coords_[i]; }
    double y(std::size_t i) const { return coords_[n() + i]; }
    double t() const { return coords_.back(); }

    std::span<const double> coords() const { return coords_; }

    bool operator==(const GroupPoint&) const = default;

private:
    explicit GroupPoint(std::vector<double> coords);

    std::vector<double> coords_;
};

/// (x+x', y+y', t+t'+2(<y,x'> - <x,y'>))
GroupPoint group_product(const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inverse(const GroupPoint& a);

}  // namespace heis
