#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fairsub/dataset.hpp"
#include "fairsub/genetic.hpp"
#include "fairsub/metrics.hpp"

namespace fairsub {

/// (penalized discrimination, data loss); both minimized.
struct ObjectivePoint {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

/// Pareto dominance with exact comparisons: no worse in both, strictly better in one.
[[nodiscard]] constexpr bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

using Front = std::vector<std::size_t>;

/// Fronts by rank, each listing indices into `points` in ascending order.
[[nodiscard]] std::vector<Front> non_dominated_sort(std::span<const ObjectivePoint> points);

/// Crowding distance of each point within one front. Boundary points per
/// objective are infinite; a zero-range objective adds nothing.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const ObjectivePoint> front);

struct RankedMember {
  std::size_t index = 0;
  std::optional<std::size_t> rank;
  double crowding = 0.0;
};

/// less: a is preferred (lower rank, then larger crowding, then lower index).
/// Throws UsageError if either member has no rank.
[[nodiscard]] std::strong_ordering crowded_compare(const RankedMember& a, const RankedMember& b);

struct FrontMember {
  SolutionVector mask;
  ObjectivePoint point;
};

/// Non-dominated solutions ordered by ascending f1 (then f2), no repeated masks.
struct ParetoFront {
  std::vector<FrontMember> members;

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
  [[nodiscard]] bool empty() const noexcept { return members.empty(); }
  [[nodiscard]] std::vector<ObjectivePoint> points() const;
};

using BiObjective = std::function<ObjectivePoint(const SolutionVector&)>;

/// Called after initialization (generation 0) and after each generation with
/// the objective points of the current rank-0 set.
using GenerationObserver = std::function<void(std::size_t generation, std::span<const ObjectivePoint> rank0)>;

/// NSGA-II over masks of length n with a selectable initializer.
///
/// Parents are chosen by crowded comparison: binary tournaments for
/// `tournament`, the two best members for `elitist`. Survivors fill the next
/// population front by front from parents plus offspring; the last front that
/// does not fit is cut by descending crowding distance. Returns the final
/// rank-0 set without duplicate masks.
[[nodiscard]] ParetoFront run_nsga2(std::size_t n, const BiObjective& objectives, const GaConfig& cfg,
                                    const GenerationObserver& observer = {});

/// Objectives (psi_penalized, data_loss) of masks over `d`.
[[nodiscard]] BiObjective fairness_objectives(const Dataset& d, const PenaltyConfig& penalty);

[[nodiscard]] ParetoFront run_nsga2(const Dataset& d, const PenaltyConfig& penalty, const GaConfig& cfg,
                                    const GenerationObserver& observer = {});

}  // namespace fairsub
