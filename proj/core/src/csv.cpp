#include "vecoff/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vecoff {

namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::string(to_string(r.scheme)) + ',' + std::string(to_string(r.axis)) + ',' +
           real(r.axis_value) + ',' + std::to_string(r.seed) + ',' + real(r.total_energy_j) +
           ',' + std::to_string(r.iterations) + ',' + real(r.gap) + ',' + real(r.wall_time_s) +
           '\n';
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error("refusing to write an empty result set to '" + path.string() + "'");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << format_csv(rows);
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("CSV header mismatch");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 8) {
      throw Error("CSV line " + std::to_string(line_no) + ": expected 8 fields");
    }
    try {
      ResultRow r;
      r.scheme = parse_scheme(cells[0]);
      r.axis = parse_axis(cells[1]);
      r.axis_value = std::stod(cells[2]);
      r.seed = std::stoull(cells[3]);
      r.total_energy_j = std::stod(cells[4]);
      r.iterations = std::stoi(cells[5]);
      r.gap = std::stod(cells[6]);
      r.wall_time_s = std::stod(cells[7]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw Error("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace vecoff
