#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heis/group.hpp"

namespace heis {

/// Reaction term f(x, r) of -Delta_{H,p} u = f(x, u) with its declared data.
///
/// `f` and `F` are only consulted for r >= 0. The solver evaluates the
/// extensions f(x, r) = f(x, 0) and F(x, r) = f(x, 0) r for r < 0 through
/// f_ext / F_ext. `a0` and `a_inf` are the limits of f / r^{p-1} at 0 and
/// infinity for the exponent the spec was built for; +inf is allowed.
struct NonlinearitySpec {
    using Fn = std::function<double(std::span<const double>, double)>;

    std::string label;
    Fn f;
    Fn F;
    double C = 1.0;
    double a0 = 0.0;
    double a_inf = 0.0;

    double f_ext(std::span<const double> x, double r) const { return f(x, r > 0.0 ? r : 0.0); }
    double F_ext(std::span<const double> x, double r) const { return r >= 0.0 ? F(x, r) : f(x, 0.0) * r; }

    /// Copy with replaced limit data.
    NonlinearitySpec with_limits(double a0_new, double a_inf_new) const;

    /// f = c.
    static NonlinearitySpec constant(double c);
    /// f = 1 + x_1^2, independent of r.
    static NonlinearitySpec weighted_constant();
    /// f = (r + 1)^q.
    static NonlinearitySpec shifted_power(double q, double p, double C = 2.0);
    /// f = (1 + x_1^2) (r + 1)^q.
    static NonlinearitySpec weighted_shifted_power(double q, double p, double C = 2.5);
    /// f = a r^{p-1} + b.
    static NonlinearitySpec affine_power(double a, double b, double p);
    /// f = r^{p-1}; fails positivity and strict decrease.
    static NonlinearitySpec pure_power(double p);
    /// f = e^r; fails the growth bound.
    static NonlinearitySpec exponential(double C = 2.0);
};

/// Selectors: "const:<c>", "weighted-const", "shifted:<q>", "weighted:<q>",
/// "affine:<a>,<b>", "power", "exp". Throws Error on unknown names.
NonlinearitySpec f_from_name(const std::string& name, double p);

struct HypothesisReport {
    bool positive = false;
    bool decreasing = false;
    bool growth = false;
    bool antiderivative = false;
    double min_value = 0.0;           // min f over samples (r = 0 included)
    double decrease_margin = 0.0;     // min relative drop of f/r^{p-1} between ladder rungs
    double growth_margin = 0.0;       // min of C (r^{p-1} + 1) - f
    double antiderivative_error = 0.0;  // max relative |F' - f| by central differences

    bool all() const { return positive && decreasing && growth && antiderivative; }
};

/// Samples hypotheses (I)-(III) and F' = f. `r_ladder` must be strictly increasing and positive.
HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, double p, std::span<const double> r_ladder,
                                     std::span<const GroupPoint> x_samples);

/// 1e-3 .. 1e3 in quarter decades, plus r = 50.
std::vector<double> default_r_ladder();

}  // namespace heis
