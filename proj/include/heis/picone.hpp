#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heis/analytic_field.hpp"
#include "heis/grid.hpp"

namespace heis {

/// Weight g : (0, inf) -> (0, inf) entering the generalized Picone identity.
///
/// `reciprocal`, when present, builds 1/g(v) as an AnalyticField so the exact
/// path can differentiate |u|^p / g(v) without the chain-rule expansion.
struct GFunction {
    std::string label;
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    std::function<AnalyticField(const AnalyticField&)> reciprocal;

    /// scale * x^{p-1}; admissible iff scale >= 1, equality case at scale = 1.
    static GFunction power(double p, double scale = 1.0);
    /// scale * exp((p-1) x); admissible for scale >= 1.
    static GFunction exponential(double p, double scale = 1.0);
    static GFunction constant(double c);
    /// 1 / (1 + x), decreasing.
    static GFunction decreasing();
};

/// Builds a GFunction from a selector: "power", "power:<scale>", "exp",
/// "exp:<scale>", "const:<c>", "decreasing".
GFunction g_from_name(const std::string& name, double p);

struct Admissibility {
    bool admissible = false;
    double worst_margin = 0.0;  // min of g' - (p-1) g^{(p-2)/(p-1)}
    double worst_at = 0.0;
};

/// Checks g'(x) >= (p-1) g(x)^{(p-2)/(p-1)} at each sample (tolerance 1e-12).
Admissibility g_admissible(const GFunction& g, double p, std::span<const double> samples);

/// 0.1, 0.2, ..., 10.
std::vector<double> default_g_samples();

// Pointwise kernels. `du`, `dv` are horizontal gradients (length 2n).

double picone_L_at(double u, double v, std::span<const double> du, std::span<const double> dv, const GFunction& g,
                   double p);
/// |du|^p - dq . |dv|^{p-2} dv with dq the gradient of |u|^p / g(v).
double picone_R_at(std::span<const double> du, std::span<const double> dv, std::span<const double> dq, double p);

struct YoungTerms {
    double lhs;     // p |u|^{p-1} / g(v) |dv|^{p-1} |du|
    double rhs;     // |du|^p + (p-1) |u|^p |dv|^p / g(v)^{p/(p-1)}
    double margin;  // rhs - lhs, evaluated without cancellation
};

YoungTerms young_at(double u, double v, std::span<const double> du, std::span<const double> dv, const GFunction& g,
                    double p);

/// L and R evaluated with exact horizontal gradients; R differentiates the
/// quotient |u|^p / g(v) through the expression tree.
struct ExactPicone {
    double L;
    double R;
};

ExactPicone picone_exact(const AnalyticField& u, const AnalyticField& v, const GFunction& g, double p,
                         const GroupPoint& q);

// Grid versions. Results are evaluated at interior nodes and hold 0 on the
// boundary layer. v must be positive at every interior node.

GridFunction picone_L(const GridFunction& u, const GridFunction& v, const GFunction& g, double p);
/// u must be Dirichlet-flagged: the quotient |u|^p / g(v) is formed nodewise
/// (0 on the boundary) and then differentiated on the grid.
GridFunction picone_R(const GridFunction& u, const GridFunction& v, const GFunction& g, double p);

struct EqualityDiagnostic {
    double max_L = 0.0;
    /// max |grad(u/v)| over interior nodes where L <= tol_L
    double max_quotient_gradient_small_L = 0.0;
    std::size_t small_L_nodes = 0;
    double max_quotient_gradient = 0.0;
};

/// Equality-case probe for g(x) = x^{p-1}. The quotient gradient uses the
/// nodal quotient rule (v grad u - u grad v) / v^2 at interior nodes.
EqualityDiagnostic equality_case_probe(const GridFunction& u, const GridFunction& v, double p, double tol_L);

/// Minimum over interior nodes of the Young-step margin.
double young_step_check(const GridFunction& u, const GridFunction& v, const GFunction& g, double p);

struct PiconeGap {
    double gap = 0.0;
    double gradient_term = 0.0;  // integral |grad u|^p
    double weighted_term = 0.0;  // integral |u|^p / g(v) (-Delta_p v)
    double min_supersolution = 0.0;  // min interior of -Delta_p v
    double shift = 0.0;  // 1/k used at nodes with v = 0, 0 when none
};

/// Picone inequality gap. u, v Dirichlet; v >= 0 with -Delta_p v >= -tol_mu at
/// interior nodes, otherwise Error("v is not a supersolution").
PiconeGap picone_inequality_gap(const GridFunction& u, const GridFunction& v, const GFunction& g, double p, double eps,
                                double tol_mu = 1e-8);

struct DiazSaaGap {
    double gap = 0.0;
    double first = 0.0;   // integral (-Dp u1/u1^{p-1} + Dp u2/u2^{p-1}) u1^p
    double second = 0.0;  // integral (-Dp u2/u2^{p-1} + Dp u1/u1^{p-1}) u2^p
    double min_supersolution = 0.0;
};

/// Diaz-Saa integral with g(x) = x^{p-1}; u1, u2 Dirichlet and positive inside.
DiazSaaGap diaz_saa_gap(const GridFunction& u1, const GridFunction& u2, double p, double eps, double tol_mu = 1e-8);

}  // namespace heis
