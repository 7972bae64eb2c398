#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boxmerge/error.hpp"
#include "boxmerge/estimator.hpp"
#include "boxmerge/point_set.hpp"

namespace boxmerge {

struct ScaleRecord {
  std::uint32_t s = 0;
  std::uint64_t n = 0;
  double log2_s = 0.0;
  double log2_n = 0.0;
  bool kept = false;

  friend bool operator==(const ScaleRecord&, const ScaleRecord&) = default;
};

/// Everything one measurement produced, in serializable form.
struct RunReport {
  std::string input;
  std::vector<std::uint32_t> axes;
  std::uint64_t point_count = 0;
  std::uint64_t reference_size = 0;
  std::vector<ScaleRecord> records;
  double dimension = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double cutoff_fraction = 0.0;
  double threshold = 0.0;
  double wall_ms = 0.0;
};

inline RunReport make_run_report(std::string input, std::span<const AxisSpec> axes,
                                 const DimensionEstimate& estimate, double wall_ms) {
  RunReport report;
  report.input = std::move(input);
  for (const AxisSpec axis : axes) report.axes.push_back(axis.length());
  report.point_count = estimate.series.source_point_count;
  report.reference_size = estimate.series.reference_size;
  const auto& entries = estimate.series.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    report.records.push_back({entries[i].s, entries[i].n,
                              std::log2(static_cast<double>(entries[i].s)),
                              std::log2(static_cast<double>(entries[i].n)),
                              static_cast<bool>(estimate.kept_mask[i])});
  }
  report.dimension = estimate.dimension;
  report.intercept = estimate.intercept;
  report.r_squared = estimate.r_squared;
  report.cutoff_fraction = estimate.cutoff_fraction;
  report.threshold = estimate.threshold;
  report.wall_ms = wall_ms;
  return report;
}

inline constexpr std::string_view kCsvHeader = "s,n,log2_s,log2_n,kept";

/// One line per scale, finest first, logs to six decimals, kept as 0/1.
inline std::string to_csv(std::span<const ScaleRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  char line[128];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%u,%llu,%.6f,%.6f,%d\n", static_cast<unsigned>(r.s),
                  static_cast<unsigned long long>(r.n), r.log2_s, r.log2_n, r.kept ? 1 : 0);
    out += line;
  }
  return out;
}

/// Parses to_csv output. Logs come back at the six-decimal precision they
/// were written with.
inline std::vector<ScaleRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::DecodeError, "CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<ScaleRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    unsigned s = 0;
    unsigned long long n = 0;
    int kept = 0;
    ScaleRecord r;
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%u,%llu,%lf,%lf,%d%n", &s, &n, &r.log2_s, &r.log2_n, &kept,
                    &consumed) != 5 ||
        static_cast<std::size_t>(consumed) != line.size() || (kept != 0 && kept != 1)) {
      throw Error(ErrorCode::DecodeError, "malformed CSV record '" + line + "'");
    }
    r.s = s;
    r.n = n;
    r.kept = kept == 1;
    records.push_back(r);
  }
  return records;
}

inline nlohmann::json to_json(const RunReport& report) {
  using nlohmann::json;
  json scales = json::array();
  json kept = json::array();
  json rejected = json::array();
  for (const auto& r : report.records) {
    scales.push_back({{"s", r.s}, {"n", r.n}, {"log2_s", r.log2_s}, {"log2_n", r.log2_n},
                      {"kept", r.kept}});
    (r.kept ? kept : rejected).push_back(json::array({r.log2_s, r.log2_n}));
  }
  return json{
      {"input", report.input},
      {"axes", report.axes},
      {"point_count", report.point_count},
      {"reference_size", report.reference_size},
      {"cutoff_fraction", report.cutoff_fraction},
      {"log2_n_threshold", report.threshold},
      {"scales", std::move(scales)},
      {"kept", std::move(kept)},
      {"rejected", std::move(rejected)},
      {"dimension", report.dimension},
      {"intercept", report.intercept},
      {"r_squared", report.r_squared},
      {"wall_ms", report.wall_ms},
  };
}

}  // namespace boxmerge
