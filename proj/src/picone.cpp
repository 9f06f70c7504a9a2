#include "heis/picone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "heis/operators.hpp"
#include "heis/vector_fields.hpp"

namespace heis {

namespace {

double norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// |u|^{p-2} u
double signed_pow(double u, double e) { return std::copysign(std::pow(std::fabs(u), e), u); }

// s^p - 1 - p (s - 1) >= 0, accurate near s = 1.
double young_defect(double s, double p) {
    const double e = s - 1.0;
    if (std::fabs(e) > 0.25) return std::pow(s, p) - 1.0 - p * e;
    double coeff = p * (p - 1.0) / 2.0;  // binom(p, 2)
    double power = e * e;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
        const double term = coeff * power;
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
        coeff *= (p - k) / (k + 1.0);
        power *= e;
    }
    return sum;
}

void require_positive_interior(const GridFunction& v) {
    for (std::size_t k : v.grid()->interior())
        if (!(v[k] > 0.0)) throw Error("v must be positive a.e.");
}

std::vector<double> node_vector(const HVectorField& f, std::size_t node) {
    std::vector<double> out(f.components());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = f.at(c, node);
    return out;
}

}  // namespace

GFunction GFunction::power(double p, double scale) {
    GFunction f;
    f.label = scale == 1.0 ? "power" : "power:" + num(scale);
    f.g = [p, scale](double x) { return scale * std::pow(x, p - 1.0); };
    f.g_prime = [p, scale](double x) { return scale * (p - 1.0) * std::pow(x, p - 2.0); };
    f.reciprocal = [p, scale](const AnalyticField& v) { return (1.0 / scale) * pow(v, 1.0 - p); };
    return f;
}

GFunction GFunction::exponential(double p, double scale) {
    GFunction f;
    f.label = scale == 1.0 ? "exp" : "exp:" + num(scale);
    f.g = [p, scale](double x) { return scale * std::exp((p - 1.0) * x); };
    f.g_prime = [p, scale](double x) { return scale * (p - 1.0) * std::exp((p - 1.0) * x); };
    f.reciprocal = [p, scale](const AnalyticField& v) { return (1.0 / scale) * exp((1.0 - p) * v); };
    return f;
}

GFunction GFunction::constant(double c) {
    GFunction f;
    f.label = "const:" + num(c);
    f.g = [c](double) { return c; };
    f.g_prime = [](double) { return 0.0; };
    f.reciprocal = [c](const AnalyticField&) { return AnalyticField::constant(1.0 / c); };
    return f;
}

GFunction GFunction::decreasing() {
    GFunction f;
    f.label = "decreasing";
    f.g = [](double x) { return 1.0 / (1.0 + x); };
    f.g_prime = [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); };
    f.reciprocal = [](const AnalyticField& v) { return v + 1.0; };
    return f;
}

GFunction g_from_name(const std::string& name, double p) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    double arg = 1.0;
    if (colon != std::string::npos) {
        try {
            arg = std::stod(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("bad g parameter in '" + name + "'");
        }
    }
    if (head == "power") return GFunction::power(p, arg);
    if (head == "exp") return GFunction::exponential(p, arg);
    if (head == "const") return GFunction::constant(arg);
    if (head == "decreasing") return GFunction::decreasing();
    throw Error("unknown g '" + name + "'");
}

Admissibility g_admissible(const GFunction& g, double p, std::span<const double> samples) {
    require_p(p);
    if (samples.empty()) throw Error("g_admissible: no samples");
    Admissibility a{true, INFINITY, 0.0};
    for (double x : samples) {
        if (!(x > 0.0)) throw Error("g_admissible: samples must be positive");
        const double gx = g.g(x);
        if (!(gx > 0.0)) throw Error("g not positive");
        const double margin = g.g_prime(x) - (p - 1.0) * std::pow(gx, (p - 2.0) / (p - 1.0));
        if (margin < a.worst_margin) {
            a.worst_margin = margin;
            a.worst_at = x;
        }
    }
    a.admissible = a.worst_margin >= -1e-12;
    return a;
}

std::vector<double> default_g_samples() {
    std::vector<double> s;
    for (int i = 1; i <= 100; ++i) s.push_back(0.1 * i);
    return s;
}

double picone_L_at(double u, double v, std::span<const double> du, std::span<const double> dv, const GFunction& g,
                   double p) {
    const double na = norm(du);
    const double nb = norm(dv);
    const double gv = g.g(v);
    const double cross = nb == 0.0 ? 0.0 : dot(du, dv) * std::pow(nb, p - 2.0);
    return std::pow(na, p) - p * signed_pow(u, p - 1.0) / gv * cross +
           g.g_prime(v) * std::pow(std::fabs(u), p) / (gv * gv) * std::pow(nb, p);
}

double picone_R_at(std::span<const double> du, std::span<const double> dv, std::span<const double> dq, double p) {
    const double nb = norm(dv);
    const double flux = nb == 0.0 ? 0.0 : dot(dq, dv) * std::pow(nb, p - 2.0);
    return std::pow(norm(du), p) - flux;
}

YoungTerms young_at(double u, double v, std::span<const double> du, std::span<const double> dv, const GFunction& g,
                    double p) {
    const double A = norm(du);
    const double nb = norm(dv);
    const double gv = g.g(v);
    const double au = std::fabs(u);
    YoungTerms y;
    y.lhs = p * std::pow(au, p - 1.0) / gv * std::pow(nb, p - 1.0) * A;
    y.rhs = std::pow(A, p) + (p - 1.0) * std::pow(au, p) * std::pow(nb, p) / std::pow(gv, p / (p - 1.0));
    // With B = |u||dv| / g^{1/(p-1)}: rhs - lhs = A^p + (p-1) B^p - p B^{p-1} A = B^p psi(A/B).
    const double B = au * nb / std::pow(gv, 1.0 / (p - 1.0));
    y.margin = B == 0.0 ? std::pow(A, p) : std::pow(B, p) * young_defect(A / B, p);
    return y;
}

ExactPicone picone_exact(const AnalyticField& u, const AnalyticField& v, const GFunction& g, double p,
                         const GroupPoint& q) {
    if (!g.reciprocal) throw Error("picone_exact: g has no analytic reciprocal");
    const double uq = u.value(q);
    const double vq = v.value(q);
    if (!(vq > 0.0)) throw Error("v must be positive a.e.");
    const auto du = horizontal_gradient(u, q);
    const auto dv = horizontal_gradient(v, q);
    const AnalyticField quotient = pow(u * u, 0.5 * p) * g.reciprocal(v);
    const auto dq = horizontal_gradient(quotient, q);
    return {picone_L_at(uq, vq, du, dv, g, p), picone_R_at(du, dv, dq, p)};
}

GridFunction picone_L(const GridFunction& u, const GridFunction& v, const GFunction& g, double p) {
    require_p(p);
    require_same_grid(u.grid(), v.grid(), "picone_L");
    require_positive_interior(v);
    const HVectorField gu = h_gradient(u);
    const HVectorField gv = h_gradient(v);
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t k : u.grid()->interior())
        out[k] = picone_L_at(u[k], v[k], node_vector(gu, k), node_vector(gv, k), g, p);
    return {u.grid(), std::move(out), false};
}

GridFunction picone_R(const GridFunction& u, const GridFunction& v, const GFunction& g, double p) {
    require_p(p);
    require_same_grid(u.grid(), v.grid(), "picone_R");
    require_positive_interior(v);
    if (!u.dirichlet()) throw Error("picone_R: u must be Dirichlet-flagged");
    std::vector<double> q(u.size(), 0.0);
    for (std::size_t k : u.grid()->interior()) q[k] = std::pow(std::fabs(u[k]), p) / g.g(v[k]);
    const HVectorField gq = h_gradient(GridFunction(u.grid(), std::move(q), true));
    const HVectorField gu = h_gradient(u);
    const HVectorField gv = h_gradient(v);
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t k : u.grid()->interior())
        out[k] = picone_R_at(node_vector(gu, k), node_vector(gv, k), node_vector(gq, k), p);
    return {u.grid(), std::move(out), false};
}

EqualityDiagnostic equality_case_probe(const GridFunction& u, const GridFunction& v, double p, double tol_L) {
    const GFunction g = GFunction::power(p);
    const GridFunction L = picone_L(u, v, g, p);
    const HVectorField gu = h_gradient(u);
    const HVectorField gv = h_gradient(v);
    EqualityDiagnostic d;
    d.max_L = -INFINITY;
    const std::size_t comps = gu.components();
    for (std::size_t k : u.grid()->interior()) {
        double s = 0.0;
        for (std::size_t c = 0; c < comps; ++c) {
            const double qc = (v[k] * gu.at(c, k) - u[k] * gv.at(c, k)) / (v[k] * v[k]);
            s += qc * qc;
        }
        const double qg = std::sqrt(s);
        d.max_L = std::max(d.max_L, L[k]);
        d.max_quotient_gradient = std::max(d.max_quotient_gradient, qg);
        if (L[k] <= tol_L) {
            ++d.small_L_nodes;
            d.max_quotient_gradient_small_L = std::max(d.max_quotient_gradient_small_L, qg);
        }
    }
    return d;
}

double young_step_check(const GridFunction& u, const GridFunction& v, const GFunction& g, double p) {
    require_p(p);
    require_same_grid(u.grid(), v.grid(), "young_step_check");
    require_positive_interior(v);
    const HVectorField gu = h_gradient(u);
    const HVectorField gv = h_gradient(v);
    double m = INFINITY;
    for (std::size_t k : u.grid()->interior())
        m = std::min(m, young_at(u[k], v[k], node_vector(gu, k), node_vector(gv, k), g, p).margin);
    return m;
}

namespace {

double weighted_term(const GridFunction& u, const GridFunction& v, const std::vector<double>& minus_lap,
                     const GFunction& g, double p, double shift) {
    const auto& grid = *u.grid();
    std::vector<double> integrand(u.size(), 0.0);
    for (std::size_t k : grid.interior()) {
        const double vk = v[k] > 0.0 ? v[k] : v[k] + shift;
        integrand[k] = std::pow(std::fabs(u[k]), p) / g.g(vk) * minus_lap[k];
    }
    return integrate(grid, integrand);
}

}  // namespace

PiconeGap picone_inequality_gap(const GridFunction& u, const GridFunction& v, const GFunction& g, double p, double eps,
                                double tol_mu) {
    require_p(p);
    require_same_grid(u.grid(), v.grid(), "picone_inequality_gap");
    if (!u.dirichlet() || !v.dirichlet()) throw Error("picone_inequality_gap: u and v must be Dirichlet-flagged");
    const auto& grid = *u.grid();
    bool any_zero = false;
    bool any_positive = false;
    for (std::size_t k : grid.interior()) {
        if (v[k] < 0.0) throw Error("picone_inequality_gap: v must be non-negative");
        any_zero = any_zero || v[k] == 0.0;
        any_positive = any_positive || v[k] > 0.0;
    }
    if (!any_positive) throw Error("picone_inequality_gap: v vanishes identically");

    const GridFunction lap = p_sub_laplacian(v, p, eps);
    std::vector<double> minus_lap(u.size(), 0.0);
    PiconeGap r;
    r.min_supersolution = INFINITY;
    for (std::size_t k : grid.interior()) {
        minus_lap[k] = -lap[k];
        r.min_supersolution = std::min(r.min_supersolution, minus_lap[k]);
    }
    if (r.min_supersolution < -tol_mu) throw Error("v is not a supersolution");

    r.gradient_term = std::pow(d1p_norm(u, p), p);
    if (!any_zero) {
        r.weighted_term = weighted_term(u, v, minus_lap, g, p, 0.0);
    } else {
        // Lift v by 1/k where it vanishes; double k until the term is stable to 1%.
        double k = 1.0 / (1e-3 * std::max(v.max_abs(), 1e-300));
        double prev = weighted_term(u, v, minus_lap, g, p, 1.0 / k);
        for (int it = 0; it < 60; ++it) {
            k *= 2.0;
            const double next = weighted_term(u, v, minus_lap, g, p, 1.0 / k);
            const bool stable = std::fabs(next - prev) <= 0.01 * std::fabs(next);
            prev = next;
            if (stable) break;
        }
        r.weighted_term = prev;
        r.shift = 1.0 / k;
    }
    r.gap = r.gradient_term - r.weighted_term;
    return r;
}

DiazSaaGap diaz_saa_gap(const GridFunction& u1, const GridFunction& u2, double p, double eps, double tol_mu) {
    require_p(p);
    require_same_grid(u1.grid(), u2.grid(), "diaz_saa_gap");
    if (!u1.dirichlet() || !u2.dirichlet()) throw Error("diaz_saa_gap: u1 and u2 must be Dirichlet-flagged");
    const auto& grid = *u1.grid();
    for (std::size_t k : grid.interior())
        if (!(u1[k] > 0.0) || !(u2[k] > 0.0)) throw Error("diaz_saa_gap: u1 and u2 must be positive inside");

    const GridFunction l1 = p_sub_laplacian(u1, p, eps);
    const GridFunction l2 = p_sub_laplacian(u2, p, eps);
    DiazSaaGap r;
    r.min_supersolution = INFINITY;
    std::vector<double> total(u1.size(), 0.0), first(u1.size(), 0.0), second(u1.size(), 0.0);
    for (std::size_t k : grid.interior()) {
        r.min_supersolution = std::min({r.min_supersolution, -l1[k], -l2[k]});
        const double a1 = -l1[k] / std::pow(u1[k], p - 1.0);
        const double a2 = -l2[k] / std::pow(u2[k], p - 1.0);
        const double p1 = std::pow(u1[k], p);
        const double p2 = std::pow(u2[k], p);
        total[k] = (a1 - a2) * (p1 - p2);
        first[k] = (a1 - a2) * p1;
        second[k] = (a2 - a1) * p2;
    }
    if (r.min_supersolution < -tol_mu) throw Error("u1/u2 are not supersolutions");
    r.gap = integrate(grid, total);
    r.first = integrate(grid, first);
    r.second = integrate(grid, second);
    return r;
}

}  // namespace heis
