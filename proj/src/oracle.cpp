#include "heis/oracle.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "heis/operators.hpp"

namespace heis::oracle {

InteriorMap interior_map(const HGrid& grid) {
    InteriorMap m;
    m.column.assign(grid.node_count(), -1);
    for (std::size_t k : grid.interior()) {
        m.column[k] = static_cast<long>(m.node.size());
        m.node.push_back(k);
    }
    return m;
}

Eigen::SparseMatrix<double> gradient_matrix(const HGrid& grid) {
    // Probe the gradient with colour classes of unit vectors: nodes whose
    // indices agree mod 3 on every axis never share a stencil, so each output
    // entry belongs to exactly one probed node.
    const std::size_t N = grid.node_count();
    const std::size_t d = grid.dim();
    const std::size_t comps = 2 * grid.n();
    const InteriorMap map = interior_map(grid);

    std::size_t colours = 1;
    for (std::size_t a = 0; a < d; ++a) colours *= 3;
    auto colour_of = [&](std::size_t node) {
        std::size_t c = 0;
        for (std::size_t a = d; a-- > 0;) c = 3 * c + grid.index(node, a) % 3;
        return c;
    };

    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> probe(N), out(comps * N);
    for (std::size_t colour = 0; colour < colours; ++colour) {
        std::fill(probe.begin(), probe.end(), 0.0);
        bool any = false;
        for (std::size_t k : grid.interior())
            if (colour_of(k) == colour) {
                probe[k] = 1.0;
                any = true;
            }
        if (!any) continue;
        apply_gradient(grid, probe, out);
        for (std::size_t k = 0; k < N; ++k) {
            // Find the probed node inside the stencil of k.
            long col = -1;
            auto consider = [&](std::size_t j) {
                if (probe[j] != 0.0) col = map.column[j];
            };
            consider(k);
            for (std::size_t a = 0; a < d && col < 0; ++a) {
                const std::size_t i = grid.index(k, a);
                if (i > 0) consider(k - grid.stride(a));
                if (i + 1 < grid.nodes()[a]) consider(k + grid.stride(a));
            }
            if (col < 0) continue;
            for (std::size_t c = 0; c < comps; ++c) {
                const double v = out[c * N + k];
                if (v != 0.0) triplets.emplace_back(static_cast<int>(c * N + k), static_cast<int>(col), v);
            }
        }
    }
    Eigen::SparseMatrix<double> G(static_cast<int>(comps * N), static_cast<int>(map.node.size()));
    G.setFromTriplets(triplets.begin(), triplets.end());
    return G;
}

Eigen::SparseMatrix<double> stiffness_matrix(const HGrid& grid) {
    const Eigen::SparseMatrix<double> G = gradient_matrix(grid);
    const std::size_t N = grid.node_count();
    Eigen::VectorXd w(G.rows());
    for (std::size_t c = 0; c < 2 * grid.n(); ++c)
        for (std::size_t k = 0; k < N; ++k) w[static_cast<long>(c * N + k)] = grid.weights()[k];
    Eigen::SparseMatrix<double> K = G.transpose() * w.asDiagonal() * G;
    return K;
}

GridFunction solve_linear(const GridPtr& grid, const GridFunction& rhs) {
    const InteriorMap map = interior_map(*grid);
    const Eigen::SparseMatrix<double> K = stiffness_matrix(*grid);
    Eigen::VectorXd b(static_cast<long>(map.node.size()));
    for (std::size_t c = 0; c < map.node.size(); ++c)
        b[static_cast<long>(c)] = grid->weights()[map.node[c]] * rhs[map.node[c]];
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
    if (ldlt.info() != Eigen::Success) throw Error("oracle: stiffness factorisation failed");
    const Eigen::VectorXd x = ldlt.solve(b);
    std::vector<double> u(grid->node_count(), 0.0);
    for (std::size_t c = 0; c < map.node.size(); ++c) u[map.node[c]] = x[static_cast<long>(c)];
    return {grid, std::move(u), true};
}

double smallest_eigenvalue(const GridPtr& grid, const GridFunction& a) {
    const InteriorMap map = interior_map(*grid);
    const long m = static_cast<long>(map.node.size());
    Eigen::MatrixXd A = Eigen::MatrixXd(stiffness_matrix(*grid));
    // Generalised problem K v = lambda M v with diagonal mass M; symmetrise.
    Eigen::VectorXd inv_sqrt_w(m);
    for (long c = 0; c < m; ++c) inv_sqrt_w[c] = 1.0 / std::sqrt(grid->weights()[map.node[static_cast<std::size_t>(c)]]);
    A = inv_sqrt_w.asDiagonal() * A * inv_sqrt_w.asDiagonal();
    for (long c = 0; c < m; ++c) A(c, c) -= a[map.node[static_cast<std::size_t>(c)]];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("oracle: eigen decomposition failed");
    return es.eigenvalues()[0];
}

}  // namespace heis::oracle
