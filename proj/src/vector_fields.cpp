#include "heis/vector_fields.hpp"

#include <vector>

namespace heis {

namespace {

// A vector field with coefficients affine in the coordinates:
// V = sum_a coeff[a](q) d/dq_a, with constant Jacobian jac[a][b] = d coeff[b] / d q_a.
struct Affine {
    std::vector<double> coeff;
    std::vector<double> jac;  // dim x dim, row = differentiation axis
};

Affine affine_form(const VectorField& v, const GroupPoint& q) {
    const std::size_t n = q.n();
    const std::size_t d = q.dim();
    const std::size_t t = 2 * n;
    if (v.kind != VectorField::Kind::T && v.index >= n) throw Error("vector field index out of range");
    Affine a{std::vector<double>(d, 0.0), std::vector<double>(d * d, 0.0)};
    switch (v.kind) {
        case VectorField::Kind::X:
            a.coeff[v.index] = 1.0;
            a.coeff[t] = 2.0 * q.y(v.index);
            a.jac[(n + v.index) * d + t] = 2.0;
            break;
        case VectorField::Kind::Y:
            a.coeff[n + v.index] = 1.0;
            a.coeff[t] = -2.0 * q.x(v.index);
            a.jac[v.index * d + t] = -2.0;
            break;
        case VectorField::Kind::T:
            a.coeff[t] = 1.0;
            break;
    }
    return a;
}

}  // namespace

double apply(const VectorField& v, const AnalyticField& f, const GroupPoint& q) {
    const Affine a = affine_form(v, q);
    const FirstOrder j = f.first(q);
    double s = 0.0;
    for (std::size_t k = 0; k < q.dim(); ++k) s += a.coeff[k] * j.grad[k];
    return s;
}

double apply_X(std::size_t i, const AnalyticField& f, const GroupPoint& q) { return apply(VectorField::X(i), f, q); }
double apply_Y(std::size_t i, const AnalyticField& f, const GroupPoint& q) { return apply(VectorField::Y(i), f, q); }
double apply_T(const AnalyticField& f, const GroupPoint& q) { return apply(VectorField::T(), f, q); }

double apply_composed(const VectorField& v, const VectorField& w, const AnalyticField& f, const GroupPoint& q) {
    const std::size_t d = q.dim();
    const Affine av = affine_form(v, q);
    const Affine aw = affine_form(w, q);
    const SecondOrder s = f.second(q);
    double r = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        if (av.coeff[a] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t b = 0; b < d; ++b) inner += aw.jac[a * d + b] * s.grad[b] + aw.coeff[b] * s.h(a, b);
        r += av.coeff[a] * inner;
    }
    return r;
}

double commutator(const VectorField& v, const VectorField& w, const AnalyticField& f, const GroupPoint& q) {
    return apply_composed(v, w, f, q) - apply_composed(w, v, f, q);
}

CommutatorCheck commutator_check(std::size_t i, std::size_t j, const AnalyticField& f, const GroupPoint& q) {
    const double lhs = commutator(VectorField::X(i), VectorField::Y(j), f, q);
    const double rhs = i == j ? -4.0 * apply_T(f, q) : 0.0;
    return {lhs, rhs};
}

std::vector<double> horizontal_gradient(const AnalyticField& f, const GroupPoint& q) {
    const std::size_t n = q.n();
    const FirstOrder j = f.first(q);
    std::vector<double> g(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = j.grad[i] + 2.0 * q.y(i) * j.grad[2 * n];
        g[n + i] = j.grad[n + i] - 2.0 * q.x(i) * j.grad[2 * n];
    }
    return g;
}

double sub_laplacian(const AnalyticField& f, const GroupPoint& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.n(); ++i) {
        s += apply_composed(VectorField::X(i), VectorField::X(i), f, q);
        s += apply_composed(VectorField::Y(i), VectorField::Y(i), f, q);
    }
    return s;
}

}  // namespace heis
