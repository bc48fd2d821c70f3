#pragma once

#include <span>

#include "fairsub/nsga2.hpp"

namespace fairsub {

struct ReferencePoint {
  double r1 = 1.0;
  double r2 = 1.0;
};

/// Area dominated by `front` and bounded by `ref`, for two minimized objectives.
///
/// Points beyond the reference box in either objective contribute nothing, so
/// a front may carry penalized points (f1 = 1 + eps) under the nadir (1, 1).
/// Input order and dominated points do not matter.
[[nodiscard]] double hypervolume_2d(std::span<const ObjectivePoint> front, ReferencePoint ref = {});

}  // namespace fairsub
