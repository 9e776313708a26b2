#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "photokin/errors.hpp"

namespace photokin {

// Shortest round-trip decimal representation; keeps CSV and JSON outputs
// byte-stable and re-readable without loss.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Photon-energy grid plus rate/cross-section columns with a metadata block.
struct SpectrumTable {
  std::string grid_name = "photon_energy_eV";
  std::vector<double> grid;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_metadata(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }

  void add_column(const std::string& name, std::vector<double> values) {
    if (values.size() != grid.size())
      throw Error("SpectrumTable: column '" + name + "' length does not match grid");
    columns.emplace_back(name, std::move(values));
  }

  void write_csv(std::ostream& out) const {
    for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
    out << grid_name;
    for (const auto& [name, vals] : columns) out << ',' << name;
    out << "\n";
    for (std::size_t r = 0; r < grid.size(); ++r) {
      out << format_double(grid[r]);
      for (const auto& [name, vals] : columns) out << ',' << format_double(vals[r]);
      out << "\n";
    }
  }

  void write_json(std::ostream& out) const {
    nlohmann::ordered_json j;
    auto& meta = j["metadata"];
    meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    auto& cols = j["columns"];
    cols = nlohmann::ordered_json::object();
    cols[grid_name] = grid;
    for (const auto& [name, vals] : columns) cols[name] = vals;
    out << j.dump(2) << "\n";
  }

  void write_file(const std::string& path, const std::string& format) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    if (format == "csv") write_csv(out);
    else if (format == "json") write_json(out);
    else throw Error("unknown output format '" + format + "'");
    if (!out) throw IoError("write to '" + path + "' failed");
  }

  std::string to_string(const std::string& format) const {
    std::ostringstream ss;
    if (format == "csv") write_csv(ss);
    else write_json(ss);
    return ss.str();
  }
};

} // namespace photokin
