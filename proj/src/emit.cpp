#include "tonks/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace tonks {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void require_finite(const Cell& cell, const char* where) {
    if (const double* v = std::get_if<double>(&cell); v && !std::isfinite(*v))
        throw std::domain_error(std::string("non-finite value in ") + where +
                                ", refusing to emit");
}

std::string render_csv(const Dataset& d) {
    std::string out;
    for (const auto& [key, value] : d.meta) {
        out += "# " + key + " = ";
        out += std::holds_alternative<double>(value)
                   ? format_double(std::get<double>(value))
                   : std::get<std::string>(value);
        out += '\n';
    }
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
        if (c) out += ',';
        out += d.columns[c];
    }
    out += '\n';
    for (const auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += std::holds_alternative<double>(row[c])
                       ? format_double(std::get<double>(row[c]))
                       : std::get<std::string>(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Dataset& d) {
    nlohmann::ordered_json j;
    for (const auto& [key, value] : d.meta) {
        if (std::holds_alternative<double>(value))
            j["meta"][key] = std::get<double>(value);
        else
            j["meta"][key] = std::get<std::string>(value);
    }
    j["data"]["columns"] = d.columns;
    auto& rows = j["data"]["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : d.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell))
                jr.push_back(std::get<double>(cell));
            else
                jr.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

} // namespace

const char* species_name(Species species) {
    return species == Species::boson ? "boson" : "fermion";
}

std::vector<std::pair<std::string, Cell>>
standard_meta(const std::string& command, const TrapConfig& config,
              Species species, const SpatialGrid& grid) {
    return {
        {"kappa", Cell{config.kappa}},
        {"n_particles", Cell{static_cast<double>(config.n_particles)}},
        {"species", Cell{std::string(species_name(species))}},
        {"half_width", Cell{grid.half_width}},
        {"grid_points", Cell{static_cast<double>(grid.n_points())}},
        {"command", Cell{command}},
        {"version", Cell{std::string(kToolVersion)}},
    };
}

std::string render(const Dataset& dataset, EmitFormat format) {
    for (const auto& [key, value] : dataset.meta) require_finite(value, "metadata");
    for (const auto& row : dataset.rows) {
        if (row.size() != dataset.columns.size())
            throw std::invalid_argument("row width does not match column count");
        for (const auto& cell : row) require_finite(cell, "data rows");
    }
    return format == EmitFormat::csv ? render_csv(dataset) : render_json(dataset);
}

void emit(const Dataset& dataset, EmitFormat format, const std::string& path) {
    const std::string content = render(dataset, format);
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw std::ios_base::failure("write to stdout failed");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::ios_base::failure("write to " + path + " failed");
}

} // namespace tonks
