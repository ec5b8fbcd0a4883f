#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vecoff/experiment.hpp"

namespace vecoff {

inline constexpr const char* kCsvHeader =
    "scheme,axis,axis_value,seed,total_energy_j,iterations,gap,wall_time_s";

/// Header plus one LF-terminated line per row; reals carry 17 significant
/// digits so parsing restores them exactly.
std::string format_csv(const std::vector<ResultRow>& rows);

/// Writes format_csv(rows) to `path`. Empty input and I/O failures throw
/// Error naming the path.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

/// Inverse of format_csv for the CSV columns (per-vehicle energies are not
/// part of the file).
std::vector<ResultRow> parse_csv(const std::string& text);

}  // namespace vecoff
