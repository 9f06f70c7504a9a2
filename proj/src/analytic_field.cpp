#include "heis/analytic_field.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

struct AnalyticField::Node {
    enum class Kind { kConst, kCoord, kAdd, kMul, kScale, kPow, kExp };

    Kind kind;
    double scalar = 0.0;  // constant value, scale factor or exponent
    std::size_t axis = 0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const AnalyticField::Node>;
using Kind = AnalyticField::Node::Kind;

NodePtr make(Kind kind, double scalar, std::size_t axis, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<AnalyticField::Node>();
    n->kind = kind;
    n->scalar = scalar;
    n->axis = axis;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

void check_axis(const AnalyticField::Node& n, std::size_t dim) {
    if (n.axis >= dim) throw Error("AnalyticField: coordinate index exceeds point dimension");
}

double eval0(const AnalyticField::Node& n, std::span<const double> q) {
    switch (n.kind) {
        case Kind::kConst: return n.scalar;
        case Kind::kCoord: check_axis(n, q.size()); return q[n.axis];
        case Kind::kAdd: return eval0(*n.a, q) + eval0(*n.b, q);
        case Kind::kMul: return eval0(*n.a, q) * eval0(*n.b, q);
        case Kind::kScale: return n.scalar * eval0(*n.a, q);
        case Kind::kPow: return std::pow(eval0(*n.a, q), n.scalar);
        case Kind::kExp: return std::exp(eval0(*n.a, q));
    }
    return 0.0;
}

// Outer-function derivatives for the unary nodes: phi(g), phi'(g), phi''(g).
struct Outer {
    double v, d1, d2;
};

Outer outer(const AnalyticField::Node& n, double g) {
    if (n.kind == Kind::kExp) {
        const double e = std::exp(g);
        return {e, e, e};
    }
    const double e = n.scalar;
    return {std::pow(g, e), e * std::pow(g, e - 1.0), e * (e - 1.0) * std::pow(g, e - 2.0)};
}

FirstOrder eval1(const AnalyticField::Node& n, std::span<const double> q) {
    const std::size_t d = q.size();
    FirstOrder r{0.0, std::vector<double>(d, 0.0)};
    switch (n.kind) {
        case Kind::kConst: r.value = n.scalar; break;
        case Kind::kCoord:
            check_axis(n, d);
            r.value = q[n.axis];
            r.grad[n.axis] = 1.0;
            break;
        case Kind::kAdd: {
            auto fa = eval1(*n.a, q);
            auto fb = eval1(*n.b, q);
            r.value = fa.value + fb.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = fa.grad[i] + fb.grad[i];
            break;
        }
        case Kind::kMul: {
            auto fa = eval1(*n.a, q);
            auto fb = eval1(*n.b, q);
            r.value = fa.value * fb.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = fa.grad[i] * fb.value + fa.value * fb.grad[i];
            break;
        }
        case Kind::kScale: {
            auto fa = eval1(*n.a, q);
            r.value = n.scalar * fa.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = n.scalar * fa.grad[i];
            break;
        }
        case Kind::kPow:
        case Kind::kExp: {
            auto fa = eval1(*n.a, q);
            const double g = fa.value;
            double v, d1;
            if (n.kind == Kind::kExp) {
                v = d1 = std::exp(g);
            } else {
                v = std::pow(g, n.scalar);
                d1 = n.scalar * std::pow(g, n.scalar - 1.0);
            }
            r.value = v;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = d1 * fa.grad[i];
            break;
        }
    }
    return r;
}

SecondOrder eval2(const AnalyticField::Node& n, std::span<const double> q) {
    const std::size_t d = q.size();
    SecondOrder r{0.0, std::vector<double>(d, 0.0), std::vector<double>(d * d, 0.0)};
    switch (n.kind) {
        case Kind::kConst: r.value = n.scalar; break;
        case Kind::kCoord:
            check_axis(n, d);
            r.value = q[n.axis];
            r.grad[n.axis] = 1.0;
            break;
        case Kind::kAdd: {
            auto fa = eval2(*n.a, q);
            auto fb = eval2(*n.b, q);
            r.value = fa.value + fb.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = fa.grad[i] + fb.grad[i];
            for (std::size_t i = 0; i < d * d; ++i) r.hess[i] = fa.hess[i] + fb.hess[i];
            break;
        }
        case Kind::kMul: {
            auto fa = eval2(*n.a, q);
            auto fb = eval2(*n.b, q);
            r.value = fa.value * fb.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = fa.grad[i] * fb.value + fa.value * fb.grad[i];
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    r.hess[i * d + j] = fa.hess[i * d + j] * fb.value + fa.grad[i] * fb.grad[j] +
                                        fa.grad[j] * fb.grad[i] + fa.value * fb.hess[i * d + j];
            break;
        }
        case Kind::kScale: {
            auto fa = eval2(*n.a, q);
            r.value = n.scalar * fa.value;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = n.scalar * fa.grad[i];
            for (std::size_t i = 0; i < d * d; ++i) r.hess[i] = n.scalar * fa.hess[i];
            break;
        }
        case Kind::kPow:
        case Kind::kExp: {
            auto fa = eval2(*n.a, q);
            const Outer o = outer(n, fa.value);
            r.value = o.v;
            for (std::size_t i = 0; i < d; ++i) r.grad[i] = o.d1 * fa.grad[i];
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    r.hess[i * d + j] = o.d1 * fa.hess[i * d + j] + o.d2 * fa.grad[i] * fa.grad[j];
            break;
        }
    }
    return r;
}

NodePtr substitute_node(const NodePtr& n, std::span<const NodePtr> coords) {
    switch (n->kind) {
        case Kind::kConst: return n;
        case Kind::kCoord:
            if (n->axis >= coords.size()) throw Error("AnalyticField::substitute: missing coordinate field");
            return coords[n->axis];
        case Kind::kAdd:
        case Kind::kMul:
            return make(n->kind, n->scalar, 0, substitute_node(n->a, coords), substitute_node(n->b, coords));
        case Kind::kScale:
        case Kind::kPow:
        case Kind::kExp:
            return make(n->kind, n->scalar, 0, substitute_node(n->a, coords));
    }
    return n;
}

long max_axis_node(const AnalyticField::Node& n) {
    switch (n.kind) {
        case Kind::kConst: return -1;
        case Kind::kCoord: return static_cast<long>(n.axis);
        case Kind::kAdd:
        case Kind::kMul: return std::max(max_axis_node(*n.a), max_axis_node(*n.b));
        default: return max_axis_node(*n.a);
    }
}

}  // namespace

AnalyticField AnalyticField::constant(double c) { return AnalyticField(make(Kind::kConst, c, 0)); }

AnalyticField AnalyticField::coordinate(std::size_t axis) { return AnalyticField(make(Kind::kCoord, 0.0, axis)); }

double AnalyticField::value(std::span<const double> q) const { return eval0(*node_, q); }
FirstOrder AnalyticField::first(std::span<const double> q) const { return eval1(*node_, q); }
SecondOrder AnalyticField::second(std::span<const double> q) const { return eval2(*node_, q); }

AnalyticField AnalyticField::substitute(std::span<const AnalyticField> coords) const {
    std::vector<NodePtr> nodes;
    nodes.reserve(coords.size());
    for (const auto& c : coords) nodes.push_back(c.node_);
    return AnalyticField(substitute_node(node_, nodes));
}

long AnalyticField::max_axis() const { return max_axis_node(*node_); }

AnalyticField operator+(const AnalyticField& a, const AnalyticField& b) {
    return AnalyticField(make(Kind::kAdd, 0.0, 0, a.node_, b.node_));
}
AnalyticField operator-(const AnalyticField& a, const AnalyticField& b) { return a + (-b); }
AnalyticField operator*(const AnalyticField& a, const AnalyticField& b) {
    return AnalyticField(make(Kind::kMul, 0.0, 0, a.node_, b.node_));
}
AnalyticField operator*(double c, const AnalyticField& a) { return AnalyticField(make(Kind::kScale, c, 0, a.node_)); }
AnalyticField operator-(const AnalyticField& a) { return -1.0 * a; }
AnalyticField operator+(const AnalyticField& a, double c) { return a + AnalyticField::constant(c); }
AnalyticField pow(const AnalyticField& a, double exponent) {
    return AnalyticField(make(Kind::kPow, exponent, 0, a.node_));
}
AnalyticField exp(const AnalyticField& a) { return AnalyticField(make(Kind::kExp, 0.0, 0, a.node_)); }

AnalyticField translate_left(const AnalyticField& f, const GroupPoint& a) {
    const std::size_t n = a.n();
    std::vector<AnalyticField> coords;
    coords.reserve(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) coords.push_back(AnalyticField::x(i, n) + a.x(i));
    for (std::size_t i = 0; i < n; ++i) coords.push_back(AnalyticField::y(i, n) + a.y(i));
    AnalyticField t = AnalyticField::t(n) + a.t();
    for (std::size_t i = 0; i < n; ++i)
        t = t + (2.0 * a.y(i)) * AnalyticField::x(i, n) + (-2.0 * a.x(i)) * AnalyticField::y(i, n);
    coords.push_back(t);
    return f.substitute(coords);
}

}  // namespace heis
