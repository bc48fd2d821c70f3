#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairsub/dataset.hpp"
#include "fairsub/metrics.hpp"
#include "fairsub/nsga2.hpp"
#include "fairsub/pipeline.hpp"

namespace fairsub {

inline constexpr int kReportSchemaVersion = 1;

/// Mask as a bit value for the first run followed by alternating run lengths.
/// "1110011" is {n = 7, first = 1, runs = {3, 2, 2}}; the empty mask has no runs.
struct RunLengthMask {
  std::size_t n = 0;
  int first = 1;
  std::vector<std::size_t> runs;

  friend bool operator==(const RunLengthMask&, const RunLengthMask&) = default;
};

[[nodiscard]] RunLengthMask encode_rle(const SolutionVector& mask);
/// Throws DataError when the runs do not add up to n.
[[nodiscard]] SolutionVector decode_rle(const RunLengthMask& rle);

/// One JSON object per line:
/// {"mask":{"n","first","runs"},"f1","f2","popcount","missing_groups":[labels]}
void write_front_jsonl(std::ostream& out, const ParetoFront& front, const Dataset& parent);
[[nodiscard]] ParetoFront read_front_jsonl(std::istream& in);

/// Report as pretty-printed JSON (2-space indent, trailing newline). The
/// wall-clock field is included only on request so that reports are
/// byte-reproducible by default.
[[nodiscard]] std::string report_json(const PreprocessReport& report, const std::string& dataset_name,
                                      bool include_timing);

/// Per-group counts and psi values for the `metrics` command.
struct MetricsSummary {
  std::vector<std::string> labels;
  GroupStats stats;
  double psi = 0.0;
  double psi_penalized = 0.0;
  PenaltyConfig penalty;
  std::vector<std::string> missing_groups;
};

[[nodiscard]] MetricsSummary summarize(const Dataset& d, const PenaltyConfig& penalty);
[[nodiscard]] std::string metrics_json(const MetricsSummary& m, const std::string& dataset_name);
[[nodiscard]] std::string metrics_table(const MetricsSummary& m);

/// Fixed-point with `decimals` places.
[[nodiscard]] std::string format_fixed(double value, int decimals);

}  // namespace fairsub
