#pragma once
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tonks/observables.hpp"

namespace tonks {

inline constexpr const char* kToolVersion = "1.0.0";

// One table cell: numeric values render with 12 significant digits in CSV
// and round-trip exactly through JSON, labels pass through verbatim.
using Cell = std::variant<double, std::string>;

struct Dataset {
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class EmitFormat { csv, json };

const char* species_name(Species species);

// Standard metadata block shared by every command, in the fixed key order
// kappa, n_particles, species, half_width, grid_points, command, version.
std::vector<std::pair<std::string, Cell>>
standard_meta(const std::string& command, const TrapConfig& config,
              Species species, const SpatialGrid& grid);

// Renders the full file content. Deterministic for identical input, so
// emitted files are byte-stable across reruns. Throws std::domain_error
// if any numeric cell is NaN or infinite; nothing is written past that.
std::string render(const Dataset& dataset, EmitFormat format);

// Renders, then writes atomically-in-spirit: the file is only opened after
// the content passed the finiteness check. Path "-" writes to stdout.
void emit(const Dataset& dataset, EmitFormat format, const std::string& path);

} // namespace tonks
