#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "heis/grid.hpp"

namespace heis {

/// Raised for invalid configurations and user input (exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parameters of one CLI run. Every field serialises; unknown keys are rejected.
struct ExperimentConfig {
    std::string command;          // picone, solve, uniqueness, diaz-saa, eigen, existence
    std::size_t n = 1;            // group dimension
    std::size_t grid = 17;        // nodes per axis on the unit box
    double p = 2.0;
    std::optional<double> eps;    // default 1e-8 / diameter
    std::uint64_t seed = 1;
    std::string f = "const:1";    // reaction term (first right-hand side for diaz-saa)
    std::string f2 = "weighted-const";  // second right-hand side for diaz-saa
    std::string g = "power";      // Picone weight
    std::size_t starts = 5;
    std::string out = "out";

    // solver
    std::size_t max_iterations = 50000;
    double armijo = 1e-4;
    double backtrack = 0.5;
    double tol_residual = 1e-9;
    double tol_step = 1e-10;
    std::string init = "constant:1";  // constant:<c> or random:<amplitude>

    // picone
    std::size_t instances = 25;
    std::size_t points_per_instance = 20;

    // eigen
    double a = 0.0;                      // constant potential
    std::size_t oracle_max_nodes = 17;   // dense p = 2 comparison up to this many nodes per axis

    // existence: overrides of the declared limits of f
    std::optional<double> a0;
    std::optional<double> a_inf;

    // uniqueness
    std::optional<double> distance_tolerance;  // 1e-6 for p = 2, 1e-5 otherwise
    bool allow_nonpositive_f = false;          // waive the positivity hypothesis

    bool operator==(const ExperimentConfig&) const = default;
};

const std::vector<std::string>& commands();

/// Per-command defaults (p, f, ...) for a known command, else ConfigError.
ExperimentConfig default_config(const std::string& command);

nlohmann::json to_json(const ExperimentConfig& c);
/// Overlays the keys of `j` on `base`; ConfigError on unknown keys or bad types.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base);
/// Reads a JSON config file; ConfigError when unreadable or malformed.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// ConfigError unless the configuration is runnable.
void validate(const ExperimentConfig& c);

struct RunOutcome {
    int exit_code = 0;         // 0 pass, 1 check failed or no convergence, 2 configuration error
    std::string message;
    nlohmann::json report;     // null when no report was written
    std::vector<std::filesystem::path> files;
};

/// Validates, runs the command and writes `<out>/report.json` plus the
/// command's CSV files. Configuration errors write nothing.
RunOutcome run(const ExperimentConfig& config, const std::string& timestamp);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace heis
