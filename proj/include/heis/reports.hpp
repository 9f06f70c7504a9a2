#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "heis/descent.hpp"
#include "heis/eigen.hpp"
#include "heis/experiments.hpp"
#include "heis/solver.hpp"

namespace heis {

// JSON views of the result types. Objects use nlohmann::json's default
// (sorted) key order; non-finite reals are written as "+inf", "-inf", "nan".

inline constexpr const char* kVersion = "1.0.0";

nlohmann::json real(double v);
/// Inverse of real(): accepts numbers and the three strings.
double real_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const std::vector<Check>& checks);
nlohmann::json to_json(const SolveResult& r);  // without u and history
nlohmann::json to_json(const EigenResult& r);  // without the eigenfunction and history
nlohmann::json to_json(const PiconeReport& r);
nlohmann::json to_json(const ExistenceReport& r);
nlohmann::json to_json(const UniquenessReport& r);  // without the solutions
nlohmann::json to_json(const DiazSaaReport& r);     // without the solutions
nlohmann::json to_json(const DiazSaaGap& g);
nlohmann::json to_json(const HypothesisReport& r);

/// CSV with header `iteration,energy,residual,step`, 17 significant digits.
void write_history_csv(const std::vector<IterationRecord>& history, const std::filesystem::path& path);

/// Pretty-printed JSON with a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace heis
