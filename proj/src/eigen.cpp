#include "heis/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "heis/compensated_sum.hpp"
#include "heis/random.hpp"
#include "heis/operators.hpp"
#include "flux.hpp"

namespace heis {

namespace {

double signed_pow(double v, double e) { return v == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(v), e), v); }

double p_mass(const HGrid& g, std::span<const double> v, double p) {
    const auto& w = g.weights();
    CompensatedSum s;
    for (std::size_t k : g.interior()) s.add(w[k] * (p == 2.0 ? v[k] * v[k] : std::pow(std::fabs(v[k]), p)));
    return s.value();
}

struct Quotient {
    double value;
    double mass;
    double noise;
    std::vector<double> gradient;
};

// Quotient and its metric gradient scaled by mass / p:
// -Delta_p v - (a + Q) |v|^{p-2} v.
Quotient evaluate(const HGrid& g, std::span<const double> v, std::span<const double> a, double p, double eps) {
    const std::size_t N = g.node_count();
    detail::Flux fl = detail::compute_flux(g, v, p, eps);
    const auto& w = g.weights();
    CompensatedSum semi, pot, pot_abs;
    for (std::size_t k = 0; k < N; ++k) semi.add(w[k] * fl.density[k]);
    for (std::size_t k : g.interior()) {
        const double m = p == 2.0 ? v[k] * v[k] : std::pow(std::fabs(v[k]), p);
        pot.add(w[k] * a[k] * m);
        pot_abs.add(w[k] * std::fabs(a[k]) * m);
    }
    Quotient q;
    q.mass = p_mass(g, v, p);
    if (!(q.mass > 0.0)) throw Error("lambda1: zero function");
    q.value = (semi.value() - pot.value()) / q.mass;
    q.noise = 1e-13 * (semi.value() + pot_abs.value()) / q.mass + 1e-300;
    std::vector<double> div(N);
    apply_divergence(g, fl.flux, div);
    q.gradient.assign(N, 0.0);
    for (std::size_t k : g.interior())
        q.gradient[k] = (-div[k] - (a[k] + q.value) * signed_pow(v[k], p - 1.0)) / q.mass;
    return q;
}

void normalise(const HGrid& g, std::vector<double>& v, double p) {
    const double m = p_mass(g, v, p);
    if (!(m > 0.0)) throw Error("lambda1: zero function");
    const double c = 1.0 / std::pow(m, 1.0 / p);
    for (double& x : v) x *= c;
}

// Output sign convention: positive interior sum, or a positive largest entry
// when the sum vanishes (sublattice modes of the centred stencil).
void fix_sign(const HGrid& g, std::vector<double>& v) {
    CompensatedSum s;
    double peak = 0.0;
    for (std::size_t k : g.interior()) {
        s.add(v[k]);
        if (std::fabs(v[k]) > std::fabs(peak)) peak = v[k];
    }
    const double scale = std::max(1.0, static_cast<double>(g.interior().size())) * std::fabs(peak);
    const double sign = std::fabs(s.value()) > 1e-10 * scale ? s.value() : peak;
    if (sign < 0.0)
        for (double& x : v) x = -x;
}


// p = 2: block LOBPCG for -Delta_H - a, self-adjoint in the quadrature inner
// product on interior nodes. A block keeps the near-degenerate sublattice
// modes of the centred stencil from stalling a single-vector descent.
constexpr int kBlock = 4;

class InteriorOperator {
public:
    InteriorOperator(const HGrid& g, std::span<const double> a) : g_(g), a_(a) {
        for (std::size_t k : g.interior()) w_.push_back(g.weights()[k]);
        full_.assign(g.node_count(), 0.0);
        flux_.assign(2 * g.n() * g.node_count(), 0.0);
        div_.assign(g.node_count(), 0.0);
    }

    Eigen::Index size() const { return static_cast<Eigen::Index>(w_.size()); }
    double weight(Eigen::Index i) const { return w_[static_cast<std::size_t>(i)]; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) {
        const auto& nodes = g_.interior();
        for (std::size_t c = 0; c < nodes.size(); ++c) full_[nodes[c]] = x[static_cast<Eigen::Index>(c)];
        apply_gradient(g_, full_, flux_);
        apply_divergence(g_, flux_, div_);
        Eigen::VectorXd y(size());
        for (std::size_t c = 0; c < nodes.size(); ++c)
            y[static_cast<Eigen::Index>(c)] = -div_[nodes[c]] - a_[nodes[c]] * x[static_cast<Eigen::Index>(c)];
        return y;
    }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) {
        Eigen::MatrixXd y(x.rows(), x.cols());
        for (Eigen::Index j = 0; j < x.cols(); ++j) y.col(j) = apply(Eigen::VectorXd(x.col(j)));
        return y;
    }

    double dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
        CompensatedSum s;
        for (Eigen::Index i = 0; i < u.size(); ++i) s.add(weight(i) * u[i] * v[i]);
        return s.value();
    }

private:
    const HGrid& g_;
    std::span<const double> a_;
    std::vector<double> w_, full_, flux_, div_;
};

// Weighted Gram-Schmidt (two passes); drops columns that are numerically dependent.
Eigen::MatrixXd orthonormalise(const InteriorOperator& op, const Eigen::MatrixXd& s) {
    std::vector<Eigen::VectorXd> kept;
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
        Eigen::VectorXd v = s.col(j);
        const double n0 = std::sqrt(op.dot(v, v));
        if (!(n0 > 0.0)) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : kept) v -= op.dot(q, v) * q;
        const double n1 = std::sqrt(op.dot(v, v));
        if (n1 > 1e-10 * n0) kept.push_back(v / n1);
    }
    Eigen::MatrixXd q(s.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) q.col(static_cast<Eigen::Index>(j)) = kept[j];
    return q;
}

Eigen::MatrixXd weighted_gram(const InteriorOperator& op, const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
    Eigen::MatrixXd h(u.cols(), v.cols());
    for (Eigen::Index i = 0; i < u.cols(); ++i)
        for (Eigen::Index j = 0; j < v.cols(); ++j) h(i, j) = op.dot(u.col(i), v.col(j));
    return h;
}

struct BlockResult {
    bool converged = false;
    double value = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
    std::vector<double> vector;  // full node vector
    std::vector<IterationRecord> history;
};

BlockResult lobpcg(const HGrid& g, std::span<const double> a, std::span<const double> start, std::uint64_t seed,
                   std::size_t max_iterations, double tol) {
    InteriorOperator op(g, a);
    const Eigen::Index m = op.size();
    const Eigen::Index k = std::min<Eigen::Index>(kBlock, m);
    const auto& nodes = g.interior();

    Eigen::MatrixXd x0(m, k);
    Rng rng(seed ^ 0x5DEECE66Dull);
    for (Eigen::Index i = 0; i < m; ++i) {
        x0(i, 0) = start[nodes[static_cast<std::size_t>(i)]];
        for (Eigen::Index j = 1; j < k; ++j) x0(i, j) = rng.uniform(-0.5, 0.5);
    }

    // Rayleigh-Ritz on span(basis); keeps the lowest k Ritz pairs.
    Eigen::MatrixXd x, ax;
    Eigen::VectorXd theta;
    auto ritz = [&](const Eigen::MatrixXd& basis) {
        const Eigen::MatrixXd q = orthonormalise(op, basis);
        const Eigen::MatrixXd aq = op.apply(q);
        Eigen::MatrixXd h = weighted_gram(op, q, aq);
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        const Eigen::Index keep = std::min<Eigen::Index>(k, q.cols());
        const Eigen::MatrixXd c = es.eigenvectors().leftCols(keep);
        x = q * c;
        ax = aq * c;
        theta = es.eigenvalues().head(keep);
    };
    ritz(x0);
    if (x.cols() == 0) throw Error("lambda1: zero function");

    BlockResult res;
    Eigen::MatrixXd p_dir(m, 0);
    double previous = theta[0];
    for (std::size_t it = 0;; ++it) {
        Eigen::MatrixXd r = ax - x * theta.asDiagonal();
        res.residual = std::sqrt(op.dot(r.col(0), r.col(0)));
        res.history.push_back({it, theta[0], res.residual, std::fabs(theta[0] - previous)});
        previous = theta[0];
        res.iterations = it;
        if (res.residual <= tol * std::max(1.0, std::fabs(theta[0]))) {
            res.converged = true;
            break;
        }
        if (it >= max_iterations) break;
        Eigen::MatrixXd basis(m, x.cols() + r.cols() + p_dir.cols());
        basis << x, r, p_dir;
        const Eigen::MatrixXd x_old = x;
        ritz(basis);
        p_dir = x - x_old * weighted_gram(op, x_old, x);
    }
    res.value = theta[0];
    res.vector.assign(g.node_count(), 0.0);
    for (Eigen::Index i = 0; i < m; ++i) res.vector[nodes[static_cast<std::size_t>(i)]] = x(i, 0);
    return res;
}

}  // namespace

double rayleigh_quotient(const GridFunction& v, const GridFunction& a, double p, double eps) {
    require_p(p);
    require_same_grid(v.grid(), a.grid(), "rayleigh_quotient");
    if (!v.dirichlet()) throw Error("rayleigh_quotient: v must be Dirichlet-flagged");
    return evaluate(*v.grid(), v.values(), a.values(), p, eps).value;
}

EigenResult lambda1(const GridFunction& a, double p, const SolverConfig& config, const GridPtr& grid,
                    const std::optional<GridFunction>& start) {
    SolverConfig cfg = config;
    cfg.p = p;
    cfg.validate();
    require_same_grid(a.grid(), grid, "lambda1");
    for (double x : a.values())
        if (!std::isfinite(x)) throw Error("lambda1: a must be finite");
    const double eps = cfg.resolved_eps(*grid);
    const double tol = cfg.tol_residual * std::sqrt(grid->volume());
    const HGrid& g = *grid;

    std::vector<double> v0 = start ? Initializer::from_field(*start).build(grid, cfg.seed).values()
                                   : cfg.init.build(grid, cfg.seed).values();
    auto fail = [&grid](const std::string& reason, std::size_t iterations, double residual,
                        std::vector<IterationRecord> trace, std::vector<double> last) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "lambda1 did not converge: %s after %zu iterations (residual %.3e)",
                      reason.c_str(), iterations, residual);
        throw EigenError(buf, std::move(trace), GridFunction(grid, std::move(last), true));
    };

    if (p == 2.0) {
        BlockResult b = lobpcg(g, a.values(), v0, cfg.seed, cfg.max_iterations, tol);
        if (!b.converged) fail("max iterations", b.iterations, b.residual, std::move(b.history), std::move(b.vector));
        fix_sign(g, b.vector);
        return EigenResult{.value = b.value,
                           .eigenfunction = GridFunction(grid, std::move(b.vector), true),
                           .residual = b.residual,
                           .iterations = b.iterations,
                           .eps = eps,
                           .history = std::move(b.history)};
    }

    DescentOptions opt;
    opt.max_iterations = cfg.max_iterations;
    opt.armijo = cfg.armijo;
    opt.backtrack = cfg.backtrack;
    const double relaxed = std::max(tol, kRelaxedEigenTolerance * std::sqrt(grid->volume()));
    opt.step_tolerance = std::max(cfg.tol_step, kRelaxedEigenTolerance);
    opt.gradient_tolerance = [relaxed](double value) { return relaxed * std::max(1.0, std::fabs(value)); };
    opt.nonmonotone_window = 10;
    opt.project = [&g, p](std::vector<double>& v) { normalise(g, v, p); };

    auto objective = [&](std::span<const double> v) {
        Quotient q = evaluate(g, v, a.values(), p, eps);
        return Evaluation{q.value, std::move(q.gradient), q.noise};
    };
    DescentResult d = descend(g, objective, std::move(v0), opt);
    if (!d.converged) fail(d.stop_reason, d.iterations, d.gradient_norm, std::move(d.history), std::move(d.x));
    fix_sign(g, d.x);
    return EigenResult{.value = d.last.value,
                       .eigenfunction = GridFunction(grid, std::move(d.x), true),
                       .residual = d.gradient_norm,
                       .iterations = d.iterations,
                       .eps = eps,
                       .history = std::move(d.history)};
}

}  // namespace heis
