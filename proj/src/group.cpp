#include "heis/group.hpp"

#include <cmath>

namespace heis {

GroupPoint::GroupPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 3 || coords_.size() % 2 == 0)
        throw Error("GroupPoint: coordinate count must be 2n+1 with n >= 1");
    for (double c : coords_)
        if (!std::isfinite(c)) throw Error("GroupPoint: coordinates must be finite");
}

GroupPoint::GroupPoint(std::vector<double> x, std::vector<double> y, double t) {
    if (x.size() != y.size() || x.empty())
        throw Error("GroupPoint: x and y must share a length n >= 1");
    std::vector<double> c;
    c.reserve(2 * x.size() + 1);
    c.insert(c.end(), x.begin(), x.end());
    c.insert(c.end(), y.begin(), y.end());
    c.push_back(t);
    *this = GroupPoint(std::move(c));
}

GroupPoint GroupPoint::from_coords(std::span<const double> coords) {
    return GroupPoint(std::vector<double>(coords.begin(), coords.end()));
}

GroupPoint GroupPoint::identity(std::size_t n) {
    if (n == 0) throw Error("GroupPoint: n must be >= 1");
    return GroupPoint(std::vector<double>(2 * n + 1, 0.0));
}

GroupPoint group_product(const GroupPoint& a, const GroupPoint& b) {
    if (a.n() != b.n()) throw Error("group_product: dimension mismatch");
    const std::size_t n = a.n();
    std::vector<double> c(2 * n + 1);
    double symplectic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = a.x(i) + b.x(i);
        c[n + i] = a.y(i) + b.y(i);
        symplectic += a.y(i) * b.x(i) - a.x(i) * b.y(i);
    }
    c[2 * n] = a.t() + b.t() + 2.0 * symplectic;
    return GroupPoint::from_coords(c);
}

GroupPoint group_inverse(const GroupPoint& a) {
    std::vector<double> c(a.coords().begin(), a.coords().end());
    for (double& v : c) v = -v;
    return GroupPoint::from_coords(c);
}

}  // namespace heis
