#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairsub/csv.hpp"
#include "fairsub/solution.hpp"

namespace fairsub {

/// Position of a group label inside a dataset's group universe.
using GroupId = std::size_t;

struct DataPoint {
  std::size_t index = 0;              ///< original 0-based row position
  std::vector<std::string> features;  ///< every column except group and outcome, verbatim
  GroupId group = 0;
  std::uint8_t outcome = 0;  ///< 1 = positive

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

/// Column layout needed to write rows back in their original shape.
struct Schema {
  std::vector<std::string> header;
  std::size_t group_column = 0;
  std::size_t outcome_column = 1;
  std::string positive_label = "1";
  std::string negative_label = "0";

  friend bool operator==(const Schema&, const Schema&) = default;
};

enum class SplitRole { whole, train, test };

/// Rows of (features, group, outcome) over a frozen group universe.
///
/// The universe is fixed when the dataset is loaded or synthesized and is
/// inherited unchanged by subsets and splits, so a group that lost all its
/// rows is still known to be missing.
class Dataset {
 public:
  /// Validates: universe has >= 2 distinct labels, every row's group is in
  /// range, outcomes are 0/1, indices are unique.
  Dataset(std::string name, Schema schema, std::vector<std::string> universe,
          std::vector<DataPoint> rows, SplitRole role = SplitRole::whole);

  [[nodiscard]] const std::vector<DataPoint>& rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
  [[nodiscard]] bool empty() const noexcept { return rows_.empty(); }
  [[nodiscard]] const std::vector<std::string>& group_universe() const noexcept { return universe_; }
  [[nodiscard]] std::size_t group_count() const noexcept { return universe_.size(); }
  [[nodiscard]] const std::string& group_label(GroupId g) const { return universe_.at(g); }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const Schema& schema() const noexcept { return schema_; }
  [[nodiscard]] SplitRole role() const noexcept { return role_; }

  /// Same rows under a different role tag or name.
  [[nodiscard]] Dataset with_role(SplitRole role) const;
  [[nodiscard]] Dataset with_name(std::string name) const;

  /// Equality of content; the name tag is ignored.
  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::string name_;
  Schema schema_;
  std::vector<std::string> universe_;
  std::vector<DataPoint> rows_;
  SplitRole role_;
};

struct LoadOptions {
  std::string group_column;
  std::string outcome_column;
  std::string positive_label = "1";
  /// Literal for the negative outcome. Empty: "0" when the positive label is
  /// "1", otherwise the single other value found in the column.
  std::string negative_label;
  /// Supplies the group universe (in this order) instead of observing it.
  /// Used to evaluate a subset file against its parent's groups.
  std::optional<std::vector<std::string>> universe;
};

/// Builds a dataset from parsed CSV records; records[0] is the header.
[[nodiscard]] Dataset from_records(const std::vector<csv::Record>& records,
                                   const LoadOptions& options, std::string name);

[[nodiscard]] Dataset load_csv(const std::string& path, const LoadOptions& options);

/// Writes header + rows in the original column order. With `index_column`
/// set, appends a column of that name holding each row's original index.
void write_csv(std::ostream& out, const Dataset& d, const std::string& index_column = {});
void write_csv_file(const std::string& path, const Dataset& d, const std::string& index_column = {});

/// Rows whose mask bit is set, in original order, with the parent's universe.
[[nodiscard]] Dataset subset(const Dataset& d, const SolutionVector& mask);

struct SplitPair {
  Dataset train;
  Dataset test;
  double fraction;
};

/// Per group, round_half_up(count * test_fraction) rows (clamped to
/// [1, count - 1]) go to the test side, chosen uniformly under `seed`.
[[nodiscard]] SplitPair stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed);

struct SynthSpec {
  std::size_t n = 1000;
  std::vector<double> group_weights;
  std::vector<double> positive_rates;
  std::uint64_t seed = 0;
};

/// Synthetic dataset: group ~ categorical(weights), outcome ~ Bernoulli(rate of group).
/// Columns: feature (uniform [0,1) printed with 6 decimals), group ("0".."k-1"), outcome.
[[nodiscard]] Dataset synthesize(const SynthSpec& spec);

}  // namespace fairsub
