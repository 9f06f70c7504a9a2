#include "heis/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>

#include "heis/eigen.hpp"
#include "heis/experiments.hpp"
#include "heis/grid_io.hpp"
#include "heis/nonlinearity.hpp"
#include "heis/operators.hpp"
#include "heis/oracle.hpp"
#include "heis/picone.hpp"
#include "heis/reports.hpp"
#include "heis/solver.hpp"

namespace heis {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"picone", "solve", "uniqueness", "diaz-saa", "eigen", "existence"};
    return c;
}

ExperimentConfig default_config(const std::string& command) {
    const auto& c = commands();
    if (std::find(c.begin(), c.end(), command) == c.end()) throw ConfigError("unknown command '" + command + "'");
    ExperimentConfig cfg;
    cfg.command = command;
    if (command == "picone") cfg.p = 2.5;
    if (command == "diaz-saa") cfg.p = 2.5;
    if (command == "uniqueness" || command == "existence") cfg.f = "shifted:0.5";
    return cfg;
}

// ------------------------------------------------------------------ config I/O

namespace {

json opt_real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

template <class T>
T get_as(const json& j, const std::string& key) {
    try {
        if constexpr (std::is_same_v<T, double>) {
            return real_from_json(j);
        } else if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
            if (!j.is_number_unsigned()) throw Error("expected a non-negative integer");
            return j.get<T>();
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!j.is_boolean()) throw Error("expected true or false");
            return j.get<bool>();
        } else {
            if (!j.is_string()) throw Error("expected a string");
            return j.get<std::string>();
        }
    } catch (const std::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

template <class T>
std::optional<T> get_optional(const json& j, const std::string& key) {
    if (j.is_null()) return std::nullopt;
    return get_as<T>(j, key);
}

}  // namespace

json to_json(const ExperimentConfig& c) {
    return {{"command", c.command},
            {"n", c.n},
            {"grid", c.grid},
            {"p", real(c.p)},
            {"eps", opt_real(c.eps)},
            {"seed", c.seed},
            {"f", c.f},
            {"f2", c.f2},
            {"g", c.g},
            {"starts", c.starts},
            {"out", c.out},
            {"max_iterations", c.max_iterations},
            {"armijo", real(c.armijo)},
            {"backtrack", real(c.backtrack)},
            {"tol_residual", real(c.tol_residual)},
            {"tol_step", real(c.tol_step)},
            {"init", c.init},
            {"instances", c.instances},
            {"points_per_instance", c.points_per_instance},
            {"a", real(c.a)},
            {"oracle_max_nodes", c.oracle_max_nodes},
            {"a0", opt_real(c.a0)},
            {"a_inf", opt_real(c.a_inf)},
            {"distance_tolerance", opt_real(c.distance_tolerance)},
            {"allow_nonpositive_f", c.allow_nonpositive_f}};
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    using Setter = std::function<void(const json&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"command", [&](const json& v, const std::string& k) { c.command = get_as<std::string>(v, k); }},
        {"n", [&](const json& v, const std::string& k) { c.n = get_as<std::size_t>(v, k); }},
        {"grid", [&](const json& v, const std::string& k) { c.grid = get_as<std::size_t>(v, k); }},
        {"p", [&](const json& v, const std::string& k) { c.p = get_as<double>(v, k); }},
        {"eps", [&](const json& v, const std::string& k) { c.eps = get_optional<double>(v, k); }},
        {"seed", [&](const json& v, const std::string& k) { c.seed = get_as<std::uint64_t>(v, k); }},
        {"f", [&](const json& v, const std::string& k) { c.f = get_as<std::string>(v, k); }},
        {"f2", [&](const json& v, const std::string& k) { c.f2 = get_as<std::string>(v, k); }},
        {"g", [&](const json& v, const std::string& k) { c.g = get_as<std::string>(v, k); }},
        {"starts", [&](const json& v, const std::string& k) { c.starts = get_as<std::size_t>(v, k); }},
        {"out", [&](const json& v, const std::string& k) { c.out = get_as<std::string>(v, k); }},
        {"max_iterations", [&](const json& v, const std::string& k) { c.max_iterations = get_as<std::size_t>(v, k); }},
        {"armijo", [&](const json& v, const std::string& k) { c.armijo = get_as<double>(v, k); }},
        {"backtrack", [&](const json& v, const std::string& k) { c.backtrack = get_as<double>(v, k); }},
        {"tol_residual", [&](const json& v, const std::string& k) { c.tol_residual = get_as<double>(v, k); }},
        {"tol_step", [&](const json& v, const std::string& k) { c.tol_step = get_as<double>(v, k); }},
        {"init", [&](const json& v, const std::string& k) { c.init = get_as<std::string>(v, k); }},
        {"instances", [&](const json& v, const std::string& k) { c.instances = get_as<std::size_t>(v, k); }},
        {"points_per_instance",
         [&](const json& v, const std::string& k) { c.points_per_instance = get_as<std::size_t>(v, k); }},
        {"a", [&](const json& v, const std::string& k) { c.a = get_as<double>(v, k); }},
        {"oracle_max_nodes",
         [&](const json& v, const std::string& k) { c.oracle_max_nodes = get_as<std::size_t>(v, k); }},
        {"a0", [&](const json& v, const std::string& k) { c.a0 = get_optional<double>(v, k); }},
        {"a_inf", [&](const json& v, const std::string& k) { c.a_inf = get_optional<double>(v, k); }},
        {"distance_tolerance",
         [&](const json& v, const std::string& k) { c.distance_tolerance = get_optional<double>(v, k); }},
        {"allow_nonpositive_f",
         [&](const json& v, const std::string& k) { c.allow_nonpositive_f = get_as<bool>(v, k); }},
    };
    for (const auto& [key, value] : j.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(value, key);
    }
    return c;
}

json read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed config file " + path.string() + ": " + e.what());
    }
}

// ------------------------------------------------------------------ validation

namespace {

Initializer parse_init(const std::string& s) {
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    double value = 1.0;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            value = std::stod(s.substr(colon + 1), &used);
            if (used != s.size() - colon - 1) throw Error("");
        } catch (const std::exception&) {
            throw ConfigError("bad initializer '" + s + "'");
        }
    }
    if (!std::isfinite(value) || value <= 0.0) throw ConfigError("initializer value must be positive: '" + s + "'");
    if (head == "constant") return Initializer::constant(value);
    if (head == "random") return Initializer::random(value);
    throw ConfigError("unknown initializer '" + s + "' (constant:<c> or random:<amplitude>)");
}

template <class F>
auto as_config_error(F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

void validate(const ExperimentConfig& c) {
    default_config(c.command);
    if (!(c.p > 1.0) || !std::isfinite(c.p)) throw ConfigError("p must exceed 1");
    const bool experiment = c.command == "uniqueness" || c.command == "diaz-saa" || c.command == "existence";
    if (experiment && (c.p < 1.5 || c.p > 4.0)) throw ConfigError("p must lie in [1.5, 4] for " + c.command);
    if (c.n < 1) throw ConfigError("n must be at least 1");
    if (c.grid < 3) throw ConfigError("grid must have at least 3 nodes per axis");
    if (c.eps && !(*c.eps >= 0.0 && std::isfinite(*c.eps))) throw ConfigError("eps must be finite and non-negative");
    if (c.max_iterations < 1) throw ConfigError("max_iterations must be positive");
    if (!(c.tol_residual > 0.0) || !(c.tol_step > 0.0)) throw ConfigError("tolerances must be positive");
    if (!(c.armijo > 0.0 && c.armijo < 1.0) || !(c.backtrack > 0.0 && c.backtrack < 1.0))
        throw ConfigError("armijo and backtrack must lie in (0, 1)");
    if (c.starts < 2) throw ConfigError("starts must be at least 2");
    if (c.instances < 1 || c.points_per_instance < 1) throw ConfigError("instances must be positive");
    if (!std::isfinite(c.a)) throw ConfigError("a must be finite");
    if (c.distance_tolerance && !(*c.distance_tolerance > 0.0)) throw ConfigError("distance_tolerance must be positive");
    for (const auto& lim : {c.a0, c.a_inf})
        if (lim && (std::isnan(*lim) || *lim == -INFINITY)) throw ConfigError("a0/a_inf must be real or +inf");
    parse_init(c.init);
    as_config_error([&] { return f_from_name(c.f, c.p); });
    as_config_error([&] { return f_from_name(c.f2, c.p); });
    as_config_error([&] { return g_from_name(c.g, c.p); });
}

// ------------------------------------------------------------------ running

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

struct Context {
    const ExperimentConfig& cfg;
    GridPtr grid;
    SolverConfig solver;
    fs::path out;
    std::vector<fs::path> files;
    json outputs = json::object();

    void save(const GridFunction& u, const std::string& stem) {
        save_grid_function(u, out / stem);
        files.push_back(out / (stem + ".csv"));
        files.push_back(out / (stem + ".json"));
        outputs[stem] = {(stem + ".csv"), (stem + ".json")};
    }
    void history(const std::vector<IterationRecord>& h, const std::string& name) {
        write_history_csv(h, out / name);
        files.push_back(out / name);
        outputs[name.substr(0, name.find('.'))] = name;
    }
};

GridPtr make_grid(const ExperimentConfig& c) { return HGrid::unit_box(c.n, c.grid); }

HypothesisReport hypotheses(const NonlinearitySpec& spec, double p, const HGrid& grid) {
    std::vector<GroupPoint> xs;
    for (std::size_t k : grid.interior()) xs.push_back(grid.point(k));
    const auto ladder = default_r_ladder();
    return validate_hypotheses(spec, p, ladder, xs);
}

struct Body {
    json result;
    std::vector<Check> checks;
    std::string message;
};

Body run_picone(Context& ctx) {
    PiconeSuiteConfig pc;
    pc.p = ctx.cfg.p;
    pc.g = ctx.cfg.g;
    pc.instances = ctx.cfg.instances;
    pc.nodes = ctx.cfg.grid;
    pc.points_per_instance = ctx.cfg.points_per_instance;
    pc.seed = ctx.cfg.seed;
    pc.eps = ctx.cfg.eps;
    if (ctx.cfg.n != 1) throw ConfigError("picone runs on n = 1 grids");
    const PiconeReport rep = run_picone_suite(pc);
    Body b{to_json(rep), rep.checks, ""};
    if (!rep.pass()) {
        std::string names;
        for (const auto& n : rep.failed()) names += (names.empty() ? "" : ", ") + n;
        b.message = "failed checks: " + names;
    }
    return b;
}

Body run_solve(Context& ctx) {
    const NonlinearitySpec spec = f_from_name(ctx.cfg.f, ctx.cfg.p);
    const SolveResult r = solve(spec, ctx.solver, ctx.grid);
    ctx.save(r.u, "solution");
    ctx.history(r.history, "history.csv");
    Body b;
    b.result = to_json(r);
    b.result["f"] = spec.label;
    b.result["hypotheses"] = to_json(hypotheses(spec, ctx.cfg.p, *ctx.grid));
    b.checks.push_back(make_check("converged", r.converged ? r.residual : INFINITY, "<=", r.tolerance));
    if (!r.converged) b.message = "no convergence (" + r.stop_reason + "); trace in " + (ctx.out / "history.csv").string();
    return b;
}

Body run_uniqueness(Context& ctx) {
    const double p = ctx.cfg.p;
    const NonlinearitySpec spec = f_from_name(ctx.cfg.f, p);
    const HypothesisReport hyp = hypotheses(spec, p, *ctx.grid);
    const bool hyp_ok = hyp.decreasing && hyp.growth && hyp.antiderivative && (hyp.positive || ctx.cfg.allow_nonpositive_f);
    if (!hyp_ok) throw ConfigError("f '" + ctx.cfg.f + "' violates the hypotheses of the uniqueness theorem");

    const UniquenessReport rep = uniqueness_experiment(spec, ctx.solver, ctx.grid, ctx.cfg.starts);
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) ctx.save(rep.solutions[i], "solution_" + std::to_string(i));

    const double dist_tol = ctx.cfg.distance_tolerance.value_or(p == 2.0 ? 1e-6 : 1e-5);
    double min_u = INFINITY, max_contradiction = 0.0;
    for (const StartReport& s : rep.starts) min_u = std::min(min_u, s.min_interior);
    for (const PairReport& pr : rep.pairs)
        if (pr.contradiction) max_contradiction = std::max(max_contradiction, std::fabs(*pr.contradiction));

    Body b;
    b.result = to_json(rep);
    b.result["f"] = spec.label;
    b.result["hypotheses"] = to_json(hyp);
    b.result["distance_tolerance"] = real(dist_tol);
    b.checks = {
        make_check("all_converged", double(rep.converged), ">=", double(rep.starts.size())),
        make_check("max_pairwise_distance", rep.conclusive ? rep.max_distance : INFINITY, "<=", dist_tol),
        make_check("positivity", min_u, ">", 0.0),
        make_check("diaz_saa_gap", rep.min_diaz_saa, ">=", -1e-10),
        // vanishes with the distance of near-coincident pairs
        make_check("contradiction_integral", max_contradiction, "<=", 1e-10 + rep.max_distance),
    };
    if (!rep.conclusive) b.message = "inconclusive: fewer than two starts converged";
    return b;
}

Body run_diaz_saa(Context& ctx) {
    const NonlinearitySpec mu1 = f_from_name(ctx.cfg.f, ctx.cfg.p);
    const NonlinearitySpec mu2 = f_from_name(ctx.cfg.f2, ctx.cfg.p);
    const DiazSaaReport rep = diaz_saa_experiment(mu1, mu2, ctx.solver, ctx.grid);
    ctx.save(rep.solutions[0], "solution_1");
    ctx.save(rep.solutions[1], "solution_2");
    Body b{to_json(rep), rep.checks, ""};
    b.result["f"] = mu1.label;
    b.result["f2"] = mu2.label;
    return b;
}

Body run_eigen(Context& ctx) {
    const GridFunction a = GridFunction::constant(ctx.grid, ctx.cfg.a, false);
    Body b;
    try {
        const EigenResult r = lambda1(a, ctx.cfg.p, ctx.solver, ctx.grid);
        ctx.save(r.eigenfunction, "eigenfunction");
        ctx.history(r.history, "history.csv");
        b.result = to_json(r);
        b.result["a"] = real(ctx.cfg.a);
        b.checks.push_back(make_check("converged", 1.0, ">=", 1.0));
        if (ctx.cfg.p == 2.0 && ctx.cfg.grid <= ctx.cfg.oracle_max_nodes) {
            const double ref = oracle::smallest_eigenvalue(ctx.grid, a);
            const double rel = std::fabs(r.value - ref) / std::max(1.0, std::fabs(ref));
            b.result["oracle"] = {{"value", real(ref)}, {"relative_difference", real(rel)}};
            b.checks.push_back(make_check("oracle_relative_difference", rel, "<=", 0.02));
        } else {
            b.result["oracle"] = nullptr;
        }
    } catch (const EigenError& e) {
        ctx.history(e.trace(), "history.csv");
        b.result = {{"error", e.what()}, {"a", real(ctx.cfg.a)}};
        b.checks.push_back(make_check("converged", 0.0, ">=", 1.0));
        b.message = std::string("no convergence: ") + e.what() + "; trace in " + (ctx.out / "history.csv").string();
    }
    return b;
}

Body run_existence(Context& ctx) {
    NonlinearitySpec spec = f_from_name(ctx.cfg.f, ctx.cfg.p);
    spec = spec.with_limits(ctx.cfg.a0.value_or(spec.a0), ctx.cfg.a_inf.value_or(spec.a_inf));
    const ExistenceReport rep = existence_check(spec, ctx.cfg.p, ctx.solver, ctx.grid);
    Body b;
    b.result = to_json(rep);
    b.result["f"] = spec.label;
    b.result["a0"] = real(spec.a0);
    b.result["a_inf"] = real(spec.a_inf);
    b.checks.push_back({"verdict_satisfied", rep.verdict == "satisfied", rep.verdict == "satisfied" ? 1.0 : 0.0, ">=", 1.0});
    if (rep.verdict != "satisfied") b.message = "verdict: " + rep.verdict;
    return b;
}

}  // namespace

RunOutcome run(const ExperimentConfig& cfg, const std::string& timestamp) {
    RunOutcome outcome;
    try {
        validate(cfg);
        Context ctx{cfg, make_grid(cfg), {}, fs::path(cfg.out), {}, json::object()};
        ctx.solver.p = cfg.p;
        ctx.solver.eps = cfg.eps;
        ctx.solver.max_iterations = cfg.max_iterations;
        ctx.solver.armijo = cfg.armijo;
        ctx.solver.backtrack = cfg.backtrack;
        ctx.solver.tol_residual = cfg.tol_residual;
        ctx.solver.tol_step = cfg.tol_step;
        ctx.solver.init = parse_init(cfg.init);
        ctx.solver.seed = cfg.seed;

        std::error_code ec;
        fs::create_directories(ctx.out, ec);
        if (ec) throw ConfigError("cannot create output directory " + ctx.out.string() + ": " + ec.message());

        Body body;
        if (cfg.command == "picone") body = run_picone(ctx);
        else if (cfg.command == "solve") body = run_solve(ctx);
        else if (cfg.command == "uniqueness") body = run_uniqueness(ctx);
        else if (cfg.command == "diaz-saa") body = run_diaz_saa(ctx);
        else if (cfg.command == "eigen") body = run_eigen(ctx);
        else body = run_existence(ctx);

        const bool pass = std::all_of(body.checks.begin(), body.checks.end(), [](const Check& c) { return c.pass; });
        json failed = json::array();
        for (const Check& c : body.checks)
            if (!c.pass) failed.push_back(c.name);
        json grid = grid_to_json(*ctx.grid);
        std::vector<double> h;
        for (std::size_t ax = 0; ax < ctx.grid->dim(); ++ax) h.push_back(ctx.grid->spacing(ax));
        grid["h"] = h;

        outcome.report = {{"command", cfg.command},
                          {"version", kVersion},
                          {"timestamp", timestamp},
                          {"config", to_json(cfg)},
                          {"grid", grid},
                          {"p", real(cfg.p)},
                          {"eps", real(ctx.solver.resolved_eps(*ctx.grid))},
                          {"tolerances",
                           {{"residual", real(cfg.tol_residual)},
                            {"residual_absolute", real(cfg.tol_residual * std::sqrt(ctx.grid->volume()))},
                            {"step", real(cfg.tol_step)}}},
                          {"result", body.result},
                          {"checks", to_json(body.checks)},
                          {"failed_checks", failed},
                          {"pass", pass},
                          {"outputs", ctx.outputs}};
        write_json(outcome.report, ctx.out / "report.json");
        ctx.files.push_back(ctx.out / "report.json");
        outcome.files = ctx.files;
        outcome.exit_code = pass ? 0 : 1;
        outcome.message = pass ? cfg.command + ": pass" : cfg.command + ": FAIL" + (body.message.empty() ? "" : " - " + body.message);
        if (!pass && body.message.empty()) {
            std::string names;
            for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n.get<std::string>();
            outcome.message += " - failed checks: " + names;
        }
    } catch (const ConfigError& e) {
        outcome = RunOutcome{2, std::string("error: ") + e.what(), nullptr, {}};
    } catch (const Error& e) {
        outcome = RunOutcome{1, cfg.command + ": FAIL - " + e.what(), nullptr, {}};
    }
    return outcome;
}

}  // namespace heis
