#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "axsym/error.hpp"
#include "axsym/estimator.hpp"
#include "axsym/ingest.hpp"
#include "axsym/peaks.hpp"
#include "axsym/scenarios.hpp"

namespace axsym {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

inline constexpr double kRadToDeg = 180.0 / kPi;

//============================================================================
// Formatting helpers
//============================================================================

namespace detail {

// Shortest-round-trip-ish fixed format for CSV cells: 17 significant digits
// reproduce the double exactly and the text is deterministic.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Full-cell double parse; permits surrounding whitespace, rejects trailing
// garbage. Throws std::invalid_argument on failure.
inline double parse_double_cell(const std::string& cell) {
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  while (used < cell.size() &&
         std::isspace(static_cast<unsigned char>(cell[used])))
    ++used;
  if (used != cell.size()) throw std::invalid_argument(cell);
  return v;
}

}  // namespace detail

//============================================================================
// File helpers
//============================================================================

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw io_error("short write to '" + path + "'");
}

// FNV-1a over raw bytes; used for input digests in manifests.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

//============================================================================
// Point cloud CSV
//============================================================================

inline std::string points_csv(const PointCloud& cloud) {
  std::string out = "x,y\n";
  for (const Point& p : cloud.points) {
    out += detail::fmt_double(p[0]);
    out += ',';
    out += detail::fmt_double(p[1]);
    out += '\n';
  }
  return out;
}

// Two-column CSV of points; a non-numeric first line is treated as a header.
inline PointCloud parse_points_csv(const std::string& text) {
  PointCloud cloud;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
      throw io_error("points CSV: row with fewer than two columns");
    if (std::getline(ls, extra, ','))
      throw io_error("points CSV: row with more than two columns");
    try {
      const double x = detail::parse_double_cell(a);
      const double y = detail::parse_double_cell(b);
      cloud.points.push_back({x, y});
    } catch (const std::exception&) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw io_error("points CSV: malformed row '" + line + "'");
    }
    first = false;
  }
  require(!cloud.points.empty(), "points CSV: no data rows");
  return cloud;
}

//============================================================================
// Profile and axes artifacts
//============================================================================

inline ordered_json json_profile(const SymmetryProfile& prof) {
  ordered_json j;
  j["n"] = prof.n;
  j["k"] = prof.k;
  j["seed"] = prof.seed;
  j["epsilon"] = prof.epsilon;
  ordered_json grid = ordered_json::array();
  for (double a : prof.grid_angles) grid.push_back(a * kRadToDeg);
  j["grid_degrees"] = std::move(grid);
  j["values"] = prof.values;
  return j;
}

inline std::string csv_profile(const SymmetryProfile& prof) {
  std::string out = "angle_degrees,g_hat\n";
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    out += detail::fmt_double(prof.grid_angles[i] * kRadToDeg);
    out += ',';
    out += detail::fmt_double(prof.values[i]);
    out += '\n';
  }
  return out;
}

inline ordered_json json_axes(const PeakResult& peaks) {
  ordered_json j;
  j["lambda"] = peaks.scale_lambda;
  ordered_json minima = ordered_json::array();
  for (std::size_t i = 0; i < peaks.minima_angles.size(); ++i) {
    ordered_json m;
    m["index"] = peaks.axis_indices[i];
    m["angle_degrees"] = peaks.minima_angles[i].degrees();
    m["g_value"] = peaks.axis_values[i];
    minima.push_back(std::move(m));
  }
  j["minima"] = std::move(minima);
  return j;
}

//============================================================================
// Study reports
//============================================================================

inline const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::gaussian_rho: return "gaussian_rho";
    case Scenario::uniform_square: return "uniform_square";
    case Scenario::spherical_gaussian: return "spherical_gaussian";
    case Scenario::custom_mirror: return "custom_mirror";
  }
  return "unknown";
}

inline ordered_json json_report(const SimulationReport& report) {
  ordered_json j;
  const ScenarioConfig& cfg = report.config;
  ordered_json jc;
  jc["scenario"] = scenario_name(cfg.scenario);
  if (cfg.scenario == Scenario::gaussian_rho) jc["rho"] = cfg.rho;
  if (cfg.scenario == Scenario::custom_mirror)
    jc["mirror_angle_degrees"] = cfg.mirror_angle * kRadToDeg;
  jc["n"] = cfg.n;
  jc["k"] = cfg.k;
  jc["grid"] = cfg.grid_size;
  jc["replications"] = cfg.replications;
  jc["seed"] = cfg.base_seed;
  j["config"] = std::move(jc);

  ordered_json freq = ordered_json::object();
  for (const auto& [count, reps] : report.count_frequency)
    freq[std::to_string(count)] = reps;
  j["detected_count_frequency"] = std::move(freq);
  j["correct_replications"] = report.correct_reps;
  if (report.has_mean_error)
    j["mean_error_over_correct_degrees"] =
        report.mean_error_over_correct_rad * kRadToDeg;
  else
    j["mean_error_over_correct_degrees"] = nullptr;

  ordered_json reps = ordered_json::array();
  for (const RepRecord& rec : report.per_replication) {
    ordered_json r;
    r["rep"] = rec.rep;
    if (!rec.failure.empty()) {
      r["failure"] = rec.failure;
      reps.push_back(std::move(r));
      continue;
    }
    r["detected_count"] = rec.detected_count;
    ordered_json axes = ordered_json::array();
    for (double a : rec.axes_rad) axes.push_back(a * kRadToDeg);
    r["axes_degrees"] = std::move(axes);
    if (rec.has_truth) {
      r["correct"] = rec.correct;
      if (rec.has_error)
        r["mean_error_degrees"] = rec.mean_error_rad * kRadToDeg;
      else
        r["mean_error_degrees"] = nullptr;
    } else {
      r["correct"] = nullptr;
      r["mean_error_degrees"] = nullptr;
    }
    reps.push_back(std::move(r));
  }
  j["replications"] = std::move(reps);
  return j;
}

// Frequency table over a batch of studies: one row per (n, k), columns are
// detected-minima counts 0..8 with a 9+ overflow bucket.
inline std::string csv_frequency_table(const std::vector<SimulationReport>& reports) {
  std::string out = "n,k";
  for (int c = 0; c <= 8; ++c) out += ",count_" + std::to_string(c);
  out += ",count_9plus\n";
  for (const SimulationReport& rep : reports) {
    out += std::to_string(rep.config.n);
    out += ',';
    out += std::to_string(rep.config.k);
    std::size_t buckets[10] = {0};
    for (const auto& [count, reps] : rep.count_frequency)
      buckets[count <= 8 ? count : 9] += reps;
    for (std::size_t b = 0; b < 10; ++b) {
      out += ',';
      out += std::to_string(buckets[b]);
    }
    out += '\n';
  }
  return out;
}

// Mean-error table: rows are sample sizes, columns are direction counts.
// Cells without any correct replication print NA.
inline std::string csv_error_table(const std::vector<SimulationReport>& reports) {
  std::set<std::size_t> ns, ks;
  std::map<std::pair<std::size_t, std::size_t>, const SimulationReport*> cell;
  for (const SimulationReport& rep : reports) {
    ns.insert(rep.config.n);
    ks.insert(rep.config.k);
    cell[{rep.config.n, rep.config.k}] = &rep;
  }
  std::string out = "n";
  for (std::size_t k : ks) out += ",k_" + std::to_string(k);
  out += '\n';
  for (std::size_t n : ns) {
    out += std::to_string(n);
    for (std::size_t k : ks) {
      out += ',';
      auto it = cell.find({n, k});
      if (it != cell.end() && it->second->has_mean_error)
        out += detail::fmt_double(it->second->mean_error_over_correct_rad *
                                  kRadToDeg);
      else
        out += "NA";
    }
    out += '\n';
  }
  return out;
}

//============================================================================
// Manifests
//============================================================================

// Run manifest. The timestamp is informational; everything else is a pure
// function of the inputs, and byte-compare checks must exclude this file.
inline ordered_json json_manifest(const std::string& command,
                                  const ordered_json& parameters,
                                  std::uint64_t seed,
                                  const std::map<std::string, std::string>& digests,
                                  const std::string& timestamp_utc) {
  ordered_json j;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  ordered_json d = ordered_json::object();
  for (const auto& [name, digest] : digests) d[name] = digest;
  j["input_digests"] = std::move(d);
  j["timestamp_utc"] = timestamp_utc;
  return j;
}

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace axsym
