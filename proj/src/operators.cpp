#include "heis/operators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "heis/compensated_sum.hpp"

namespace heis {

namespace {

// Difference along `axis` at `node`: centred inside, one-sided on the two end layers.
inline double difference(const HGrid& g, std::span<const double> u, std::size_t node, std::size_t axis) {
    const std::size_t i = g.index(node, axis);
    const std::size_t s = g.stride(axis);
    const double h = g.spacing(axis);
    if (i == 0) return (u[node + s] - u[node]) / h;
    if (i + 1 == g.nodes()[axis]) return (u[node] - u[node - s]) / h;
    return (u[node + s] - u[node - s]) / (2.0 * h);
}

// Transpose of `difference`: scatters the weight e of the difference at `node`.
inline void difference_transpose(const HGrid& g, std::span<double> acc, std::size_t node, std::size_t axis, double e) {
    const std::size_t i = g.index(node, axis);
    const std::size_t s = g.stride(axis);
    const double h = g.spacing(axis);
    if (i == 0) {
        acc[node + s] += e / h;
        acc[node] -= e / h;
    } else if (i + 1 == g.nodes()[axis]) {
        acc[node] += e / h;
        acc[node - s] -= e / h;
    } else {
        acc[node + s] += e / (2.0 * h);
        acc[node - s] -= e / (2.0 * h);
    }
}

}  // namespace

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("p must exceed 1");
}

double default_eps(const HGrid& grid) { return 1e-8 / grid.diameter(); }

void apply_gradient(const HGrid& g, std::span<const double> u, std::span<double> out) {
    const std::size_t n = g.n();
    const std::size_t N = g.node_count();
    const std::size_t t = g.t_axis();
    for (std::size_t k = 0; k < N; ++k) {
        const double dt = difference(g, u, k, t);
        for (std::size_t i = 0; i < n; ++i) {
            out[i * N + k] = difference(g, u, k, i) + 2.0 * g.coordinate(k, n + i) * dt;
            out[(n + i) * N + k] = difference(g, u, k, n + i) - 2.0 * g.coordinate(k, i) * dt;
        }
    }
}

void apply_divergence(const HGrid& g, std::span<const double> field, std::span<double> out) {
    const std::size_t n = g.n();
    const std::size_t N = g.node_count();
    const std::size_t t = g.t_axis();
    const auto& w = g.weights();
    std::vector<double> acc(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        double et = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fx = w[k] * field[i * N + k];
            const double fy = w[k] * field[(n + i) * N + k];
            difference_transpose(g, acc, k, i, fx);
            difference_transpose(g, acc, k, n + i, fy);
            et += 2.0 * g.coordinate(k, n + i) * fx - 2.0 * g.coordinate(k, i) * fy;
        }
        difference_transpose(g, acc, k, t, et);
    }
    for (std::size_t k = 0; k < N; ++k) out[k] = g.is_boundary(k) ? 0.0 : -acc[k] / w[k];
}

HVectorField h_gradient(const GridFunction& u) {
    const auto& g = *u.grid();
    std::vector<double> out(2 * g.n() * g.node_count());
    apply_gradient(g, u.values(), out);
    return {u.grid(), std::move(out)};
}

GridFunction h_divergence(const HVectorField& field) {
    const auto& g = *field.grid();
    std::vector<double> out(g.node_count());
    apply_divergence(g, field.data(), out);
    return {field.grid(), std::move(out), true};
}

GridFunction p_sub_laplacian(const GridFunction& u, double p, double eps) {
    require_p(p);
    if (!(eps >= 0.0)) throw Error("eps must be non-negative");
    if (!u.dirichlet()) throw Error("p_sub_laplacian: u must be Dirichlet-flagged");
    const auto& g = *u.grid();
    const std::size_t N = g.node_count();
    const std::size_t c = 2 * g.n();
    std::vector<double> flux(c * N);
    apply_gradient(g, u.values(), flux);
    if (p != 2.0) {
        for (std::size_t k = 0; k < N; ++k) {
            double s = eps * eps;
            for (std::size_t j = 0; j < c; ++j) s += flux[j * N + k] * flux[j * N + k];
            if (s == 0.0) {
                if (p < 2.0) throw Error("singular weight");
                continue;
            }
            const double weight = std::pow(s, 0.5 * (p - 2.0));
            for (std::size_t j = 0; j < c; ++j) flux[j * N + k] *= weight;
        }
    }
    std::vector<double> out(N);
    apply_divergence(g, flux, out);
    return {u.grid(), std::move(out), true};
}

double integrate(const HGrid& grid, std::span<const double> values) {
    const auto& w = grid.weights();
    CompensatedSum s;
    for (std::size_t k = 0; k < values.size(); ++k) s.add(w[k] * values[k]);
    return s.value();
}

double integrate(const GridFunction& w) { return integrate(*w.grid(), w.values()); }

double inner(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid(), "inner");
    const auto& w = a.grid()->weights();
    CompensatedSum s;
    for (std::size_t k = 0; k < a.size(); ++k) s.add(w[k] * a[k] * b[k]);
    return s.value();
}

double inner(const HVectorField& a, const HVectorField& b) {
    require_same_grid(a.grid(), b.grid(), "inner");
    const auto& w = a.grid()->weights();
    const std::size_t N = a.grid()->node_count();
    CompensatedSum s;
    for (std::size_t k = 0; k < N; ++k) {
        double dot = 0.0;
        for (std::size_t c = 0; c < a.components(); ++c) dot += a.at(c, k) * b.at(c, k);
        s.add(w[k] * dot);
    }
    return s.value();
}

double d1p_norm(const GridFunction& u, double p) {
    require_p(p);
    if (!u.dirichlet()) throw Error("d1p_norm: u must be Dirichlet-flagged");
    const HVectorField grad = h_gradient(u);
    std::vector<double> density(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) density[k] = std::pow(grad.norm_at(k), p);
    return std::pow(integrate(*u.grid(), density), 1.0 / p);
}

double interior_l2(const HGrid& grid, std::span<const double> values) {
    const auto& w = grid.weights();
    CompensatedSum s;
    for (std::size_t k : grid.interior()) s.add(w[k] * values[k] * values[k]);
    return std::sqrt(s.value());
}

}  // namespace heis
