#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "heis/group.hpp"

namespace heis {

/// Value and gradient of a field at a point.
struct FirstOrder {
    double value = 0.0;
    std::vector<double> grad;
};

/// Value, gradient and Hessian (row-major dim x dim) at a point.
struct SecondOrder {
    double value = 0.0;
    std::vector<double> grad;
    std::vector<double> hess;

    double h(std::size_t a, std::size_t b) const { return hess[a * grad.size() + b]; }
};

/// Closed-form scalar function of the flat group coordinates (x, y, t).
///
/// Built from constants, coordinates, sums, products, real powers and exp.
/// Derivatives are propagated exactly by forward differentiation through the
/// expression tree, so the fields serve as oracles for the grid operators.
/// Instances are immutable and cheap to copy (shared expression nodes).
class AnalyticField {
public:
    static AnalyticField constant(double c);
    /// Flat coordinate `axis` in (x_1..x_n, y_1..y_n, t).
    static AnalyticField coordinate(std::size_t axis);
    static AnalyticField x(std::size_t i, std::size_t /*n*/) { return coordinate(i); }
    static AnalyticField y(std::size_t i, std::size_t n) { return coordinate(n + i); }
    static AnalyticField t(std::size_t n) { return coordinate(2 * n); }

    double value(std::span<const double> q) const;
    FirstOrder first(std::span<const double> q) const;
    SecondOrder second(std::span<const double> q) const;

    double value(const GroupPoint& q) const { return value(q.coords()); }
    FirstOrder first(const GroupPoint& q) const { return first(q.coords()); }
    SecondOrder second(const GroupPoint& q) const { return second(q.coords()); }

    /// Composition f(g_0(q), ..., g_{d-1}(q)) with one field per coordinate.
    AnalyticField substitute(std::span<const AnalyticField> coords) const;

    /// Largest coordinate index referenced, or -1 for a constant expression.
    long max_axis() const;

    friend AnalyticField operator+(const AnalyticField& a, const AnalyticField& b);
    friend AnalyticField operator-(const AnalyticField& a, const AnalyticField& b);
    friend AnalyticField operator*(const AnalyticField& a, const AnalyticField& b);
    friend AnalyticField operator*(double c, const AnalyticField& a);
    friend AnalyticField operator-(const AnalyticField& a);
    friend AnalyticField operator+(const AnalyticField& a, double c);
    friend AnalyticField pow(const AnalyticField& a, double exponent);
    friend AnalyticField exp(const AnalyticField& a);

    struct Node;

private:
    explicit AnalyticField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// f o L_a, where L_a(q) = a . q is left translation by `a`.
AnalyticField translate_left(const AnalyticField& f, const GroupPoint& a);

}  // namespace heis
