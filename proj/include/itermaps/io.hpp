#pragma once

// CSV and JSON emission for capture runs.
//
// CSV columns: grid_i,grid_j,x0,y0,x2,y2,fnorm,g  (g empty without an
// objective). Numbers use the shortest representation that reads back to the
// same double, so a CSV can be re-clustered without drift. LF line endings.

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "itermaps/capture.hpp"
#include "itermaps/errors.hpp"

namespace itermaps {

inline std::string format_real(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed 6-decimal rendering used in human-readable tables.
inline std::string format_fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline constexpr const char* kCaptureCsvHeader = "grid_i,grid_j,x0,y0,x2,y2,fnorm,g";

inline void write_capture_csv(std::ostream& out, const CaptureResult& res) {
  out << kCaptureCsvHeader << '\n';
  for (const auto& c : res.captured) {
    out << c.grid_i << ',' << c.grid_j << ',' << format_real(c.seed(0)) << ',' << format_real(c.seed(1)) << ','
        << format_real(c.point(0)) << ',' << format_real(c.point(1)) << ',' << format_real(c.fnorm) << ',';
    if (c.g) out << format_real(*c.g);
    out << '\n';
  }
}

/// Inverse of write_capture_csv; `index` is left at 0.
inline std::vector<CapturedPoint> read_capture_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCaptureCsvHeader)
    throw ProblemDefinitionError("capture CSV: missing or unexpected header");
  std::vector<CapturedPoint> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 8)
      throw ProblemDefinitionError("capture CSV line " + std::to_string(line_no) + ": expected 8 columns");
    try {
      CapturedPoint c;
      c.grid_i = std::stoi(cells[0]);
      c.grid_j = std::stoi(cells[1]);
      c.seed = Vector(2);
      c.seed << std::stod(cells[2]), std::stod(cells[3]);
      c.point = Vector(2);
      c.point << std::stod(cells[4]), std::stod(cells[5]);
      c.fnorm = std::stod(cells[6]);
      if (!cells[7].empty()) c.g = std::stod(cells[7]);
      rows.push_back(std::move(c));
    } catch (const std::logic_error&) {
      throw ProblemDefinitionError("capture CSV line " + std::to_string(line_no) + ": bad number");
    }
  }
  return rows;
}

inline nlohmann::json to_json(const Vector& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

inline nlohmann::json to_json(const CaptureCounts& c) {
  return {{"seeded", c.seeded},
          {"skipped_singular", c.skipped_singular},
          {"skipped_outside", c.skipped_outside},
          {"step_failures", c.step_failures},
          {"rejected_tolerance", c.rejected_tolerance},
          {"captured", c.captured}};
}

inline nlohmann::json to_json(const CaptureResult& res, const VectorProblem* problem = nullptr) {
  nlohmann::json j;
  j["counts"] = to_json(res.counts);
  auto captured = nlohmann::json::array();
  for (const auto& c : res.captured) {
    nlohmann::json row = {{"grid_index", c.index}, {"grid_i", c.grid_i}, {"grid_j", c.grid_j},
                          {"seed", to_json(c.seed)},  {"point", to_json(c.point)}, {"fnorm", c.fnorm}};
    row["g"] = c.g ? nlohmann::json(*c.g) : nlohmann::json(nullptr);
    captured.push_back(std::move(row));
  }
  j["captured"] = std::move(captured);
  auto clusters = nlohmann::json::array();
  for (const auto& cl : res.clusters) {
    nlohmann::json row = {{"representative", to_json(cl.representative)}, {"count", cl.count}};
    if (problem && problem->objective) row["g"] = (*problem->objective)(cl.representative);
    clusters.push_back(std::move(row));
  }
  j["clusters"] = std::move(clusters);
  return j;
}

inline nlohmann::json to_json(const CaptureConfig& cfg) {
  return {{"domain", {{"lower", to_json(cfg.grid.domain.lower)}, {"upper", to_json(cfg.grid.domain.upper)}}},
          {"nx", cfg.grid.nx},
          {"ny", cfg.grid.ny},
          {"dx", cfg.grid.dx()},
          {"dy", cfg.grid.dy()},
          {"eps", cfg.tolerance},
          {"map", cfg.map.spec()},
          {"map_label", cfg.map.label()},
          {"cluster_radius", cfg.cluster_radius},
          {"norm", cfg.norm == NormKind::Max ? "max" : "euclidean"},
          {"pivot_threshold", cfg.step.pivot_threshold}};
}

}  // namespace itermaps
