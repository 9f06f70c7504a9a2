#include "heis/reports.hpp"

#include <cmath>
#include <fstream>

#include "heis/grid_io.hpp"

namespace heis {

using nlohmann::json;

json real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

double real_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+inf" || s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw Error("expected a real number or \"+inf\", got " + j.dump());
}

namespace {

json opt(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

json start_json(const StartReport& s) {
    return {{"initializer", s.initializer}, {"seed", s.seed},         {"converged", s.converged},
            {"stop_reason", s.stop_reason}, {"iterations", s.iterations}, {"residual", real(s.residual)},
            {"energy", real(s.energy)},     {"min_interior", real(s.min_interior)}};
}

json equality_json(const EqualityDiagnostic& e) {
    return {{"max_L", real(e.max_L)},
            {"max_quotient_gradient", real(e.max_quotient_gradient)},
            {"max_quotient_gradient_small_L", real(e.max_quotient_gradient_small_L)},
            {"small_L_nodes", e.small_L_nodes}};
}

json condition_json(const ConditionCheck& c) {
    json ladder = json::array();
    for (const LadderPoint& l : c.ladder) ladder.push_back({{"M", real(l.M)}, {"lambda1", real(l.lambda)}});
    return {{"name", c.name},     {"requirement", c.requirement}, {"limit", real(c.limit)},
            {"ladder", ladder},   {"lambda1", opt(c.lambda)},     {"verdict", c.verdict}};
}

}  // namespace

json to_json(const Check& c) {
    return {{"name", c.name},
            {"pass", c.pass},
            {"value", real(c.value)},
            {"relation", c.relation},
            {"tolerance", real(c.tolerance)}};
}

json to_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const Check& c : checks) out.push_back(to_json(c));
    return out;
}

json to_json(const SolveResult& r) {
    return {{"energy", real(r.energy)},
            {"residual", real(r.residual)},
            {"iterations", r.iterations},
            {"min_interior", real(r.min_interior)},
            {"converged", r.converged},
            {"stop_reason", r.stop_reason},
            {"eps", real(r.eps)},
            {"tolerance", real(r.tolerance)}};
}

json to_json(const EigenResult& r) {
    return {{"value", real(r.value)},
            {"residual", real(r.residual)},
            {"iterations", r.iterations},
            {"eps", real(r.eps)}};
}

json to_json(const DiazSaaGap& g) {
    return {{"gap", real(g.gap)},
            {"first", real(g.first)},
            {"second", real(g.second)},
            {"min_supersolution", real(g.min_supersolution)}};
}

json to_json(const HypothesisReport& r) {
    return {{"positive", r.positive},
            {"decreasing", r.decreasing},
            {"growth", r.growth},
            {"antiderivative", r.antiderivative},
            {"min_value", real(r.min_value)},
            {"decrease_margin", real(r.decrease_margin)},
            {"growth_margin", real(r.growth_margin)},
            {"antiderivative_error", real(r.antiderivative_error)}};
}

json to_json(const PiconeReport& r) {
    json failed = r.failed();
    return {{"g", r.g_label},
            {"h", real(r.h)},
            {"eps", real(r.eps)},
            {"instances", r.config.instances},
            {"points_per_instance", r.config.points_per_instance},
            {"admissibility",
             {{"admissible", r.admissibility.admissible},
              {"worst_margin", real(r.admissibility.worst_margin)},
              {"worst_at", real(r.admissibility.worst_at)}}},
            {"exact_residual", real(r.exact_residual)},
            {"grid_residual", real(r.grid_residual)},
            {"grid_constant", real(r.grid_constant)},
            {"min_L", real(r.min_L)},
            {"young_margin", real(r.young_margin)},
            {"equality", equality_json(r.equality)},
            {"perturbed", equality_json(r.perturbed)},
            {"inequality_min_gap", real(r.inequality_min_gap)},
            {"inequality_self_gap", real(r.inequality_self_gap)},
            {"k_shift", real(r.k_shift)},
            {"checks", to_json(r.checks)},
            {"failed_checks", failed},
            {"pass", r.pass()}};
}

json to_json(const ExistenceReport& r) {
    return {{"p", real(r.p)},
            {"lambda1_base", real(r.lambda_base)},
            {"sign_tolerance", real(r.sign_tolerance)},
            {"at_zero", condition_json(r.at_zero)},
            {"at_infinity", condition_json(r.at_infinity)},
            {"verdict", r.verdict}};
}

json to_json(const UniquenessReport& r) {
    json starts = json::array();
    for (const StartReport& s : r.starts) starts.push_back(start_json(s));
    json pairs = json::array();
    for (const PairReport& pr : r.pairs) {
        pairs.push_back({{"first", pr.first},
                         {"second", pr.second},
                         {"distance", real(pr.distance)},
                         {"diaz_saa", pr.diaz_saa ? to_json(*pr.diaz_saa) : json(nullptr)},
                         {"diaz_saa_error", pr.diaz_saa_error},
                         {"contradiction_integral", opt(pr.contradiction)}});
    }
    return {{"p", real(r.p)},
            {"eps", real(r.eps)},
            {"tolerance", real(r.tolerance)},
            {"starts", starts},
            {"pairs", pairs},
            {"converged", r.converged},
            {"conclusive", r.conclusive},
            {"max_distance", real(r.max_distance)},
            {"all_positive", r.all_positive},
            {"min_diaz_saa", real(r.min_diaz_saa)},
            {"eigen_start_value", opt(r.eigen_start_value)}};
}

json to_json(const DiazSaaReport& r) {
    auto gap = [](const std::optional<DiazSaaGap>& g) { return g ? to_json(*g) : json(nullptr); };
    return {{"p", real(r.p)},
            {"eps", real(r.eps)},
            {"first", start_json(r.first)},
            {"second", start_json(r.second)},
            {"gap", gap(r.gap)},
            {"swapped", gap(r.swapped)},
            {"self", gap(r.self)},
            {"scaled", gap(r.scaled)},
            {"checks", to_json(r.checks)},
            {"pass", r.pass()}};
}

void write_history_csv(const std::vector<IterationRecord>& history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "iteration,energy,residual,step\n";
    for (const IterationRecord& r : history)
        out << r.iteration << ',' << format_double(r.value) << ',' << format_double(r.gradient_norm) << ','
            << format_double(r.step) << '\n';
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace heis
