#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fairsub/dataset.hpp"

namespace fairsub {

/// Per-group row and positive-outcome counts, indexed by GroupId.
struct GroupStats {
  std::vector<std::size_t> total;
  std::vector<std::size_t> positive;

  [[nodiscard]] std::size_t group_count() const noexcept { return total.size(); }
  [[nodiscard]] std::size_t rows() const noexcept;
  /// positive / total; throws UsageError for an empty group.
  [[nodiscard]] double rate(GroupId g) const;
};

enum class Aggregation { max, sum };

[[nodiscard]] std::string_view to_string(Aggregation a) noexcept;
[[nodiscard]] Aggregation parse_aggregation(std::string_view text);

struct PenaltyConfig {
  double epsilon = 0.01;
  Aggregation aggregation = Aggregation::max;
};

[[nodiscard]] GroupStats group_stats(const Dataset& d);

/// |rate(i) - rate(j)|. Both groups must be nonempty.
[[nodiscard]] double statistical_disparity(const GroupStats& s, GroupId i, GroupId j);

/// Aggregated disparity over unordered pairs of nonempty groups, in universe
/// order. Fewer than two nonempty groups gives 0.
[[nodiscard]] double psi(const GroupStats& s, Aggregation aggregation);
[[nodiscard]] double psi(const Dataset& d, Aggregation aggregation = Aggregation::max);

/// Value assigned to a subset that misses at least one group: 1 + eps for max,
/// (number of group pairs) + eps for sum. Both exceed every attainable psi.
[[nodiscard]] double missing_group_penalty(std::size_t group_count, const PenaltyConfig& cfg);

/// psi, raised to the missing-group penalty if any group of the universe is empty.
[[nodiscard]] double psi_penalized(const GroupStats& s, const PenaltyConfig& cfg);
[[nodiscard]] double psi_penalized(const Dataset& d, const PenaltyConfig& cfg = {});

/// 1 - |sub| / |parent|; parent must be nonempty and not smaller than sub.
[[nodiscard]] double data_loss(std::size_t parent_rows, std::size_t subset_rows);
[[nodiscard]] double data_loss(const Dataset& parent, const Dataset& sub);

/// Universe groups with no rows, in universe order.
[[nodiscard]] std::vector<GroupId> coverage_report(const GroupStats& s);
[[nodiscard]] std::vector<GroupId> coverage_report(const Dataset& d);

}  // namespace fairsub

namespace fairsub {

/// Evaluates masks over a fixed parent dataset without materializing subsets.
/// Goes through the same GroupStats path as the Dataset overloads, so its
/// values are bit-identical to evaluating subset(parent, mask).
class SubsetEvaluator {
 public:
  SubsetEvaluator(const Dataset& parent, PenaltyConfig cfg);

  [[nodiscard]] std::size_t size() const noexcept { return groups_.size(); }
  [[nodiscard]] const PenaltyConfig& penalty() const noexcept { return cfg_; }

  [[nodiscard]] GroupStats stats(const SolutionVector& mask) const;
  [[nodiscard]] double psi_penalized(const SolutionVector& mask) const;
  [[nodiscard]] double data_loss(const SolutionVector& mask) const;

 private:
  std::vector<GroupId> groups_;
  std::vector<std::uint8_t> outcomes_;
  std::size_t group_count_;
  PenaltyConfig cfg_;
};

}  // namespace fairsub
