#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "heis/app.hpp"
#include "heis/reports.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::size_t> grid, starts, max_iterations, instances;
    std::optional<double> p, eps, a;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, f, f2, g, init, a0, a_inf;
    bool print_config = false;
};

double parse_limit(const std::string& s) {
    if (s == "inf" || s == "+inf") return INFINITY;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size()) throw heis::ConfigError("expected a real or +inf, got '" + s + "'");
    return v;
}

heis::ExperimentConfig resolve(const std::string& command, const Flags& fl) {
    heis::ExperimentConfig c = heis::default_config(command);
    if (!fl.config.empty()) {
        c = heis::config_from_json(heis::read_config_file(fl.config), c);
        if (c.command != command)
            throw heis::ConfigError("config file is for command '" + c.command + "', not '" + command + "'");
    }
    if (fl.grid) c.grid = *fl.grid;
    if (fl.starts) c.starts = *fl.starts;
    if (fl.max_iterations) c.max_iterations = *fl.max_iterations;
    if (fl.instances) c.instances = *fl.instances;
    if (fl.p) c.p = *fl.p;
    if (fl.eps) c.eps = *fl.eps;
    if (fl.a) c.a = *fl.a;
    if (fl.seed) c.seed = *fl.seed;
    if (fl.out) c.out = *fl.out;
    if (fl.f) c.f = *fl.f;
    if (fl.f2) c.f2 = *fl.f2;
    if (fl.g) c.g = *fl.g;
    if (fl.init) c.init = *fl.init;
    if (fl.a0) c.a0 = parse_limit(*fl.a0);
    if (fl.a_inf) c.a_inf = parse_limit(*fl.a_inf);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group p-sub-Laplacian experiments"};
    app.require_subcommand(1);
    Flags fl;
    for (const std::string& name : heis::commands()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
        sub->add_option("--config", fl.config, "JSON config file (flags override it)");
        sub->add_option("--grid", fl.grid, "nodes per axis");
        sub->add_option("--p", fl.p, "exponent p > 1");
        sub->add_option("--eps", fl.eps, "regulariser");
        sub->add_option("--seed", fl.seed, "random seed");
        sub->add_option("--out", fl.out, "output directory");
        sub->add_option("--f", fl.f, "reaction term: const:<c>, weighted-const, shifted:<q>, weighted:<q>, affine:<a>,<b>, power, exp");
        sub->add_option("--f2", fl.f2, "second right-hand side (diaz-saa)");
        sub->add_option("--g", fl.g, "Picone weight: power[:s], exp[:s], const:<c>, decreasing");
        sub->add_option("--starts", fl.starts, "number of initializers (uniqueness)");
        sub->add_option("--max-iterations", fl.max_iterations, "descent iteration cap");
        sub->add_option("--instances", fl.instances, "random instances (picone)");
        sub->add_option("--init", fl.init, "initializer: constant:<c> or random:<amplitude>");
        sub->add_option("--a", fl.a, "constant potential (eigen)");
        sub->add_option("--a0", fl.a0, "override the limit a0 of f (real or +inf)");
        sub->add_option("--a-inf", fl.a_inf, "override the limit a_inf of f (real or +inf)");
        sub->add_flag("--print-config", fl.print_config, "print the resolved config as JSON and exit");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    heis::ExperimentConfig config;
    try {
        config = resolve(command, fl);
        if (fl.print_config) {
            heis::validate(config);
            std::cout << heis::to_json(config).dump(2) << '\n';
            return 0;
        }
    } catch (const heis::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    const heis::RunOutcome outcome = heis::run(config, heis::utc_timestamp());
    (outcome.exit_code == 0 ? std::cout : std::cerr) << outcome.message << '\n';
    if (!outcome.report.is_null()) std::cout << "report: " << (std::filesystem::path(config.out) / "report.json").string() << '\n';
    return outcome.exit_code;
}
