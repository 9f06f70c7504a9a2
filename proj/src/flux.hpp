#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "heis/grid.hpp"
#include "heis/operators.hpp"

namespace heis::detail {

struct Flux {
    std::vector<double> density;  // |grad u|^p (regularised) per node
    std::vector<double> flux;     // weight * grad u, component-major
};

inline Flux compute_flux(const HGrid& g, std::span<const double> u, double p, double eps) {
    const std::size_t N = g.node_count();
    const std::size_t comps = 2 * g.n();
    Flux f;
    f.flux.resize(comps * N);
    f.density.resize(N);
    apply_gradient(g, u, f.flux);
    const double eps2 = eps * eps;
    const double eps_p = eps > 0.0 ? std::pow(eps, p) : 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < comps; ++c) s += f.flux[c * N + k] * f.flux[c * N + k];
        if (p == 2.0) {
            f.density[k] = s;
            continue;
        }
        if (eps == 0.0) {
            f.density[k] = std::pow(std::sqrt(s), p);
            if (s == 0.0) {
                if (p < 2.0) throw Error("singular weight");
                continue;
            }
        } else {
            f.density[k] = std::pow(s + eps2, 0.5 * p) - eps_p;
        }
        const double weight = std::pow(s + eps2, 0.5 * (p - 2.0));
        for (std::size_t c = 0; c < comps; ++c) f.flux[c * N + k] *= weight;
    }
    return f;
}

}  // namespace heis::detail
