#pragma once

#include <cstddef>

#include "heis/analytic_field.hpp"
#include "heis/group.hpp"

namespace heis {

/// One of the left-invariant fields X_i = d/dx_i + 2 y_i d/dt,
/// Y_i = d/dy_i - 2 x_i d/dt, T = d/dt. Indices are zero-based.
struct VectorField {
    enum class Kind { X, Y, T };
    Kind kind;
    std::size_t index = 0;

    static VectorField X(std::size_t i) { return {Kind::X, i}; }
    static VectorField Y(std::size_t i) { return {Kind::Y, i}; }
    static VectorField T() { return {Kind::T, 0}; }
};

/// (V f)(q), exact.
double apply(const VectorField& v, const AnalyticField& f, const GroupPoint& q);

double apply_X(std::size_t i, const AnalyticField& f, const GroupPoint& q);
double apply_Y(std::size_t i, const AnalyticField& f, const GroupPoint& q);
double apply_T(const AnalyticField& f, const GroupPoint& q);

/// (V (W f))(q), exact second-order application.
double apply_composed(const VectorField& v, const VectorField& w, const AnalyticField& f, const GroupPoint& q);

/// ((V W - W V) f)(q).
double commutator(const VectorField& v, const VectorField& w, const AnalyticField& f, const GroupPoint& q);

struct CommutatorCheck {
    double lhs;  // (X_i Y_j - Y_j X_i) f (q)
    double rhs;  // -4 delta_ij (T f)(q)
};

CommutatorCheck commutator_check(std::size_t i, std::size_t j, const AnalyticField& f, const GroupPoint& q);

/// Exact horizontal gradient (X_1..X_n f, Y_1..Y_n f) at q.
std::vector<double> horizontal_gradient(const AnalyticField& f, const GroupPoint& q);

/// Exact sub-Laplacian sum_i X_i^2 f + Y_i^2 f at q.
double sub_laplacian(const AnalyticField& f, const GroupPoint& q);

}  // namespace heis
