#include "fairsub/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairsub/errors.hpp"

namespace fairsub {

std::size_t GroupStats::rows() const noexcept {
  return std::accumulate(total.begin(), total.end(), std::size_t{0});
}

double GroupStats::rate(GroupId g) const {
  if (total.at(g) == 0) {
    throw UsageError("positive rate undefined for empty group " + std::to_string(g));
  }
  return static_cast<double>(positive[g]) / static_cast<double>(total[g]);
}

std::string_view to_string(Aggregation a) noexcept {
  return a == Aggregation::max ? "max" : "sum";
}

Aggregation parse_aggregation(std::string_view text) {
  if (text == "max") return Aggregation::max;
  if (text == "sum") return Aggregation::sum;
  throw ConfigError("unknown aggregation '" + std::string(text) + "' (expected max or sum)");
}

GroupStats group_stats(const Dataset& d) {
  GroupStats s{std::vector<std::size_t>(d.group_count(), 0), std::vector<std::size_t>(d.group_count(), 0)};
  for (const auto& row : d.rows()) {
    ++s.total[row.group];
    s.positive[row.group] += row.outcome;
  }
  return s;
}

double statistical_disparity(const GroupStats& s, GroupId i, GroupId j) {
  return std::abs(s.rate(i) - s.rate(j));
}

double psi(const GroupStats& s, Aggregation aggregation) {
  double value = 0.0;
  const std::size_t k = s.group_count();
  for (GroupId i = 0; i < k; ++i) {
    if (s.total[i] == 0) continue;
    for (GroupId j = i + 1; j < k; ++j) {
      if (s.total[j] == 0) continue;
      const double delta = statistical_disparity(s, i, j);
      value = aggregation == Aggregation::max ? std::max(value, delta) : value + delta;
    }
  }
  return value;
}

double psi(const Dataset& d, Aggregation aggregation) { return psi(group_stats(d), aggregation); }

double missing_group_penalty(std::size_t group_count, const PenaltyConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const double bound = cfg.aggregation == Aggregation::max
                           ? 1.0
                           : static_cast<double>(group_count * (group_count - 1) / 2);
  return bound + cfg.epsilon;
}

double psi_penalized(const GroupStats& s, const PenaltyConfig& cfg) {
  const double value = psi(s, cfg.aggregation);
  const bool missing = std::any_of(s.total.begin(), s.total.end(), [](std::size_t t) { return t == 0; });
  if (!missing) return value;
  return std::max(value, missing_group_penalty(s.group_count(), cfg));
}

double psi_penalized(const Dataset& d, const PenaltyConfig& cfg) {
  return psi_penalized(group_stats(d), cfg);
}

double data_loss(std::size_t parent_rows, std::size_t subset_rows) {
  if (parent_rows == 0) throw UsageError("data_loss: parent dataset is empty");
  if (subset_rows > parent_rows) throw UsageError("data_loss: subset larger than parent");
  return 1.0 - static_cast<double>(subset_rows) / static_cast<double>(parent_rows);
}

double data_loss(const Dataset& parent, const Dataset& sub) { return data_loss(parent.size(), sub.size()); }

std::vector<GroupId> coverage_report(const GroupStats& s) {
  std::vector<GroupId> missing;
  for (GroupId g = 0; g < s.group_count(); ++g) {
    if (s.total[g] == 0) missing.push_back(g);
  }
  return missing;
}

std::vector<GroupId> coverage_report(const Dataset& d) { return coverage_report(group_stats(d)); }

}  // namespace fairsub

namespace fairsub {

SubsetEvaluator::SubsetEvaluator(const Dataset& parent, PenaltyConfig cfg)
    : group_count_(parent.group_count()), cfg_(cfg) {
  if (parent.empty()) throw UsageError("SubsetEvaluator: parent dataset is empty");
  (void)missing_group_penalty(group_count_, cfg_);  // validates epsilon
  groups_.reserve(parent.size());
  outcomes_.reserve(parent.size());
  for (const auto& row : parent.rows()) {
    groups_.push_back(row.group);
    outcomes_.push_back(row.outcome);
  }
}

GroupStats SubsetEvaluator::stats(const SolutionVector& mask) const {
  if (mask.size() != groups_.size()) {
    throw UsageError("mask length " + std::to_string(mask.size()) + " != dataset size " +
                     std::to_string(groups_.size()));
  }
  GroupStats s{std::vector<std::size_t>(group_count_, 0), std::vector<std::size_t>(group_count_, 0)};
  const auto bits = mask.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    s.total[groups_[i]] += bits[i];
    s.positive[groups_[i]] += bits[i] & outcomes_[i];
  }
  return s;
}

double SubsetEvaluator::psi_penalized(const SolutionVector& mask) const {
  return fairsub::psi_penalized(stats(mask), cfg_);
}

double SubsetEvaluator::data_loss(const SolutionVector& mask) const {
  if (mask.size() != groups_.size()) throw UsageError("mask length does not match dataset size");
  return fairsub::data_loss(groups_.size(), mask.popcount());
}

}  // namespace fairsub
