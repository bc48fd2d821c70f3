#include "fairsub/hypervolume.hpp"

#include <algorithm>
#include <vector>

namespace fairsub {

double hypervolume_2d(std::span<const ObjectivePoint> front, ReferencePoint ref) {
  std::vector<ObjectivePoint> pts;
  pts.reserve(front.size());
  for (const auto& p : front) {
    if (p.f1 <= ref.r1 && p.f2 <= ref.r2) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
  });
  // keep the staircase: strictly decreasing f2 along increasing f1
  std::vector<ObjectivePoint> stairs;
  for (const auto& p : pts) {
    if (stairs.empty() || p.f2 < stairs.back().f2) stairs.push_back(p);
  }
  double volume = 0.0;
  for (std::size_t i = 0; i < stairs.size(); ++i) {
    const double next_x = i + 1 < stairs.size() ? stairs[i + 1].f1 : ref.r1;
    volume += (next_x - stairs[i].f1) * (ref.r2 - stairs[i].f2);
  }
  return volume;
}

}  // namespace fairsub
