#pragma once

#include <filesystem>
#include <iosfwd>

#include "json.hpp"

#include "heis/grid.hpp"

namespace heis {

// CSV layout: header `i,j,k,...,value` (one index column per axis, axis 0
// first), one row per node in storage order (axis 0 fastest), values written
// with 17 significant digits so a reload is bit-exact. The grid itself lives
// in a JSON sidecar.

nlohmann::json grid_to_json(const HGrid& grid);
GridPtr grid_from_json(const nlohmann::json& j);

void write_csv(const GridFunction& u, std::ostream& out);
GridFunction read_csv(std::istream& in, GridPtr grid, bool dirichlet);

/// Writes `<stem>.csv` and `<stem>.json` (grid sidecar plus Dirichlet flag).
void save_grid_function(const GridFunction& u, const std::filesystem::path& stem);
GridFunction load_grid_function(const std::filesystem::path& stem);

/// 17 significant digits; parses back to exactly `v`.
std::string format_double(double v);

}  // namespace heis
