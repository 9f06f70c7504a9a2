#include "heis/grid_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace heis {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json grid_to_json(const HGrid& grid) {
    return {{"n", grid.n()}, {"lower", grid.lower()}, {"upper", grid.upper()}, {"nodes", grid.nodes()},
            {"ordering", "axis0-fastest"}};
}

GridPtr grid_from_json(const nlohmann::json& j) {
    try {
        return std::make_shared<const HGrid>(j.at("n").get<std::size_t>(), j.at("lower").get<std::vector<double>>(),
                                             j.at("upper").get<std::vector<double>>(),
                                             j.at("nodes").get<std::vector<std::size_t>>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("grid sidecar: ") + e.what());
    }
}

namespace {

std::string axis_label(std::size_t a) {
    // i, j, k, l, ... then i10, i11, ... past the alphabet
    if (a < 18) return std::string(1, static_cast<char>('i' + a));
    return "i" + std::to_string(a);
}

}  // namespace

void write_csv(const GridFunction& u, std::ostream& out) {
    const auto& g = *u.grid();
    for (std::size_t a = 0; a < g.dim(); ++a) out << axis_label(a) << ',';
    out << "value\n";
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (std::size_t a = 0; a < g.dim(); ++a) out << g.index(k, a) << ',';
        out << format_double(u[k]) << '\n';
    }
}

GridFunction read_csv(std::istream& in, GridPtr grid, bool dirichlet) {
    const auto& g = *grid;
    std::string line;
    if (!std::getline(in, line)) throw Error("read_csv: missing header");
    std::vector<double> values(g.node_count(), 0.0);
    std::vector<char> seen(g.node_count(), 0);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t node = 0;
        for (std::size_t a = 0; a < g.dim(); ++a) {
            if (!std::getline(ss, cell, ',')) throw Error("read_csv: short row");
            const std::size_t i = std::stoul(cell);
            if (i >= g.nodes()[a]) throw Error("read_csv: node index out of range");
            node += i * g.stride(a);
        }
        if (!std::getline(ss, cell)) throw Error("read_csv: missing value column");
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str()) throw Error("read_csv: unparsable value '" + cell + "'");
        if (seen[node]) throw Error("read_csv: duplicate node row");
        seen[node] = 1;
        values[node] = v;
        ++rows;
    }
    if (rows != g.node_count()) throw Error("read_csv: row count does not match grid");
    return {std::move(grid), std::move(values), dirichlet};
}

void save_grid_function(const GridFunction& u, const std::filesystem::path& stem) {
    std::filesystem::path csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    std::ofstream out(csv);
    if (!out) throw Error("cannot write " + csv.string());
    write_csv(u, out);
    nlohmann::json side = grid_to_json(*u.grid());
    side["dirichlet"] = u.dirichlet();
    std::ofstream js(json);
    if (!js) throw Error("cannot write " + json.string());
    js << side.dump(2) << '\n';
}

GridFunction load_grid_function(const std::filesystem::path& stem) {
    std::filesystem::path csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    std::ifstream js(json);
    if (!js) throw Error("cannot read " + json.string());
    nlohmann::json side;
    try {
        js >> side;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("grid sidecar: ") + e.what());
    }
    std::ifstream in(csv);
    if (!in) throw Error("cannot read " + csv.string());
    return read_csv(in, grid_from_json(side), side.value("dirichlet", false));
}

}  // namespace heis
