#include "heis/descent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "heis/compensated_sum.hpp"
#include "heis/operators.hpp"

namespace heis {

namespace {

double weighted_dot(const HGrid& grid, std::span<const double> a, std::span<const double> b) {
    const auto& w = grid.weights();
    CompensatedSum s;
    for (std::size_t k : grid.interior()) s.add(w[k] * a[k] * b[k]);
    return s.value();
}

constexpr int kMaxBacktracks = 80;
// Approximate-Wolfe acceptance inside the noise band:
// sigma phi'(0) <= phi'(s) <= (1 - 2 delta) |phi'(0)|.
constexpr double kWolfeDelta = 0.1;
constexpr double kCurvature = 0.9;

}  // namespace

DescentResult descend(const HGrid& grid, const ObjectiveFn& objective, std::vector<double> x0,
                      const DescentOptions& options) {
    DescentResult res;
    std::vector<double> x = std::move(x0);
    if (options.project) options.project(x);
    Evaluation ev = objective(x);
    if (!std::isfinite(ev.value)) throw Error("divergence");
    double gnorm = interior_l2(grid, ev.gradient);
    res.history.push_back({0, ev.value, gnorm, 0.0});

    const std::size_t window = std::max<std::size_t>(1, options.nonmonotone_window);
    std::deque<double> recent{ev.value};
    double step = options.initial_step;
    double last_change = 0.0;
    std::vector<double> trial(x.size());
    std::size_t it = 0;
    res.stop_reason = "max iterations";
    for (;;) {
        const double tol = options.gradient_tolerance ? options.gradient_tolerance(ev.value) : 0.0;
        if (gnorm <= tol && last_change <= options.step_tolerance) {
            res.converged = true;
            res.stop_reason = "converged";
            break;
        }
        if (it >= options.max_iterations) break;
        ++it;

        const double slope = -gnorm * gnorm;
        const double reference = *std::max_element(recent.begin(), recent.end());
        // 0 accept, -1 step too long, +1 step too short (inside the noise band).
        auto classify = [&](const Evaluation& next, double s) {
            if (!std::isfinite(next.value)) return -1;
            if (next.value - reference <= options.armijo * s * slope) return 0;
            const double change = next.value - ev.value;
            if (std::fabs(change) > std::max(ev.noise, next.noise)) return -1;
            const double dphi = -weighted_dot(grid, next.gradient, ev.gradient);
            if (dphi > (1.0 - 2.0 * kWolfeDelta) * (-slope)) return -1;
            return dphi < kCurvature * slope ? 1 : 0;
        };

        bool accepted = false;
        bool any_finite = false;
        double lo = 0.0, hi = INFINITY;
        Evaluation next;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - step * ev.gradient[k];
            if (options.project) options.project(trial);
            next = objective(trial);
            any_finite = any_finite || std::isfinite(next.value);
            const int verdict = classify(next, step);
            if (verdict == 0) {
                accepted = true;
                break;
            }
            if (verdict < 0) {
                hi = step;
                step = lo > 0.0 ? 0.5 * (lo + hi) : step * options.backtrack;
            } else {
                lo = step;
                step = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * step;
            }
        }
        if (!accepted) {
            if (!any_finite) throw Error("divergence");
            res.stop_reason = "line search stalled";
            break;
        }

        // Barzilai-Borwein length for the next trial step.
        std::vector<double> dx(x.size()), dg(x.size());
        last_change = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            dx[k] = trial[k] - x[k];
            dg[k] = next.gradient[k] - ev.gradient[k];
            last_change = std::max(last_change, std::fabs(dx[k]));
        }
        const double accepted_step = step;
        const double sy = weighted_dot(grid, dx, dg);
        const double ss = weighted_dot(grid, dx, dx);
        step = sy > 0.0 && std::isfinite(ss / sy) && ss > 0.0 ? ss / sy : 2.0 * step;

        x.swap(trial);
        ev = std::move(next);
        gnorm = interior_l2(grid, ev.gradient);
        res.history.push_back({it, ev.value, gnorm, accepted_step});
        recent.push_back(ev.value);
        if (recent.size() > window) recent.pop_front();
    }
    res.x = std::move(x);
    res.last = std::move(ev);
    res.gradient_norm = gnorm;
    res.iterations = it;
    return res;
}

}  // namespace heis
