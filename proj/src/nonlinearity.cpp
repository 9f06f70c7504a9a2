#include "heis/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace heis {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Limit of (r+1)^q / r^{p-1} as r -> infinity.
double shifted_limit(double q, double p) {
    if (q < p - 1.0) return 0.0;
    if (q == p - 1.0) return 1.0;
    return INFINITY;
}

}  // namespace

NonlinearitySpec NonlinearitySpec::with_limits(double a0_new, double a_inf_new) const {
    NonlinearitySpec s = *this;
    s.a0 = a0_new;
    s.a_inf = a_inf_new;
    return s;
}

NonlinearitySpec NonlinearitySpec::constant(double c) {
    NonlinearitySpec s;
    s.label = "const:" + num(c);
    s.f = [c](std::span<const double>, double) { return c; };
    s.F = [c](std::span<const double>, double r) { return c * r; };
    s.C = c;
    s.a0 = INFINITY;
    s.a_inf = 0.0;
    return s;
}

NonlinearitySpec NonlinearitySpec::weighted_constant() {
    NonlinearitySpec s;
    s.label = "weighted-const";
    s.f = [](std::span<const double> x, double) { return 1.0 + x[0] * x[0]; };
    s.F = [](std::span<const double> x, double r) { return (1.0 + x[0] * x[0]) * r; };
    s.C = 2.5;
    s.a0 = INFINITY;
    s.a_inf = 0.0;
    return s;
}

NonlinearitySpec NonlinearitySpec::shifted_power(double q, double p, double C) {
    NonlinearitySpec s;
    s.label = "shifted:" + num(q);
    s.f = [q](std::span<const double>, double r) { return std::pow(r + 1.0, q); };
    s.F = [q](std::span<const double>, double r) { return (std::pow(r + 1.0, q + 1.0) - 1.0) / (q + 1.0); };
    s.C = C;
    s.a0 = INFINITY;
    s.a_inf = shifted_limit(q, p);
    return s;
}

NonlinearitySpec NonlinearitySpec::weighted_shifted_power(double q, double p, double C) {
    NonlinearitySpec s;
    s.label = "weighted:" + num(q);
    s.f = [q](std::span<const double> x, double r) { return (1.0 + x[0] * x[0]) * std::pow(r + 1.0, q); };
    s.F = [q](std::span<const double> x, double r) {
        return (1.0 + x[0] * x[0]) * (std::pow(r + 1.0, q + 1.0) - 1.0) / (q + 1.0);
    };
    s.C = C;
    s.a0 = INFINITY;
    s.a_inf = shifted_limit(q, p);
    return s;
}

NonlinearitySpec NonlinearitySpec::affine_power(double a, double b, double p) {
    NonlinearitySpec s;
    s.label = "affine:" + num(a) + "," + num(b);
    s.f = [a, b, p](std::span<const double>, double r) { return a * std::pow(r, p - 1.0) + b; };
    s.F = [a, b, p](std::span<const double>, double r) { return a * std::pow(r, p) / p + b * r; };
    s.C = std::max(a, b);
    s.a0 = b > 0.0 ? INFINITY : a;
    s.a_inf = a;
    return s;
}

NonlinearitySpec NonlinearitySpec::pure_power(double p) {
    NonlinearitySpec s;
    s.label = "power";
    s.f = [p](std::span<const double>, double r) { return std::pow(r, p - 1.0); };
    s.F = [p](std::span<const double>, double r) { return std::pow(r, p) / p; };
    s.C = 1.0;
    s.a0 = 1.0;
    s.a_inf = 1.0;
    return s;
}

NonlinearitySpec NonlinearitySpec::exponential(double C) {
    NonlinearitySpec s;
    s.label = "exp";
    s.f = [](std::span<const double>, double r) { return std::exp(r); };
    s.F = [](std::span<const double>, double r) { return std::expm1(r); };
    s.C = C;
    s.a0 = INFINITY;
    s.a_inf = INFINITY;
    return s;
}

NonlinearitySpec f_from_name(const std::string& name, double p) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(name.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                args.push_back(std::stod(item, &used));
                if (used != item.size()) throw Error("");
            } catch (const std::exception&) {
                throw Error("bad parameter in f selector '" + name + "'");
            }
        }
    }
    auto need = [&](std::size_t count) {
        if (args.size() != count) throw Error("f selector '" + name + "' expects " + std::to_string(count) + " parameter(s)");
    };
    if (head == "const") { need(1); return NonlinearitySpec::constant(args[0]); }
    if (head == "weighted-const") { need(0); return NonlinearitySpec::weighted_constant(); }
    if (head == "shifted") { need(1); return NonlinearitySpec::shifted_power(args[0], p); }
    if (head == "weighted") { need(1); return NonlinearitySpec::weighted_shifted_power(args[0], p); }
    if (head == "affine") { need(2); return NonlinearitySpec::affine_power(args[0], args[1], p); }
    if (head == "power") { need(0); return NonlinearitySpec::pure_power(p); }
    if (head == "exp") { need(0); return NonlinearitySpec::exponential(); }
    throw Error("unknown f selector '" + name + "'");
}

HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, double p, std::span<const double> r_ladder,
                                     std::span<const GroupPoint> x_samples) {
    if (r_ladder.empty() || x_samples.empty()) throw Error("validate_hypotheses: empty sample set");
    for (std::size_t i = 0; i < r_ladder.size(); ++i)
        if (!(r_ladder[i] > 0.0) || (i > 0 && !(r_ladder[i] > r_ladder[i - 1])))
            throw Error("validate_hypotheses: r ladder must be positive and strictly increasing");

    HypothesisReport rep;
    rep.min_value = INFINITY;
    rep.decrease_margin = INFINITY;
    rep.growth_margin = INFINITY;
    rep.antiderivative_error = 0.0;
    for (const GroupPoint& xp : x_samples) {
        const auto x = xp.coords();
        rep.min_value = std::min(rep.min_value, spec.f(x, 0.0));
        double prev_ratio = NAN;
        for (double r : r_ladder) {
            const double fr = spec.f(x, r);
            rep.min_value = std::min(rep.min_value, fr);
            const double ratio = fr / std::pow(r, p - 1.0);
            if (!std::isnan(prev_ratio))
                rep.decrease_margin = std::min(rep.decrease_margin, (prev_ratio - ratio) / std::fabs(prev_ratio));
            prev_ratio = ratio;
            rep.growth_margin = std::min(rep.growth_margin, spec.C * (std::pow(r, p - 1.0) + 1.0) - fr);

            const double delta = 1e-4 * r;
            const double fd = (spec.F(x, r + delta) - spec.F(x, r - delta)) / (2.0 * delta);
            rep.antiderivative_error = std::max(rep.antiderivative_error, std::fabs(fd - fr) / std::max(std::fabs(fr), 1e-300));
        }
    }
    rep.positive = rep.min_value > 0.0;
    rep.decreasing = rep.decrease_margin > 0.0;
    rep.growth = rep.growth_margin >= 0.0;
    rep.antiderivative = rep.antiderivative_error <= 1e-6;
    return rep;
}

std::vector<double> default_r_ladder() {
    std::vector<double> r;
    for (int e = -12; e <= 12; ++e) r.push_back(std::pow(10.0, e / 4.0));
    r.push_back(50.0);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace heis
