#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fairsub/errors.hpp"
#include "fairsub/hypervolume.hpp"
#include "fairsub/nsga2.hpp"
#include "test_support.hpp"

using namespace fairsub;
using fairsub::testing::exhaustive_front;
using fairsub::testing::oracle_objectives;
using fairsub::testing::toy_dataset;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool weakly_dominated_by(const ObjectivePoint& p, const std::vector<ObjectivePoint>& front) {
  for (const auto& q : front) {
    if (q.f1 <= p.f1 && q.f2 <= p.f2) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dominance") {
  CHECK(dominates({0.1, 0.2}, {0.3, 0.2}));
  CHECK_FALSE(dominates({0.1, 0.5}, {0.3, 0.2}));
  CHECK_FALSE(dominates({0.3, 0.2}, {0.1, 0.5}));
  CHECK_FALSE(dominates({0.1, 0.2}, {0.1, 0.2}));
}

TEST_CASE("non-dominated sort examples") {
  const std::vector<ObjectivePoint> pts{{0, 1}, {1, 0}, {0.5, 0.5}, {1, 1}};
  CHECK(non_dominated_sort(pts) == std::vector<Front>{{0, 1, 2}, {3}});
  const std::vector<ObjectivePoint> same(4, ObjectivePoint{0.3, 0.3});
  CHECK(non_dominated_sort(same) == std::vector<Front>{{0, 1, 2, 3}});
  const std::vector<ObjectivePoint> chain{{2, 2}, {0, 0}, {1, 1}};
  CHECK(non_dominated_sort(chain) == std::vector<Front>{{1}, {2}, {0}});
  CHECK(non_dominated_sort(std::vector<ObjectivePoint>{}).empty());
}

TEST_CASE("non-dominated sort satisfies the rank invariants") {
  std::mt19937_64 gen(4);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<ObjectivePoint> pts;
    for (std::size_t i = 0; i < 1 + gen() % 40; ++i) {
      pts.push_back({static_cast<double>(gen() % 6), static_cast<double>(gen() % 6)});
    }
    auto fronts = non_dominated_sort(pts);
    std::vector<std::size_t> rank(pts.size(), 999);
    std::size_t seen = 0;
    for (std::size_t r = 0; r < fronts.size(); ++r) {
      for (auto i : fronts[r]) rank[i] = r;
      seen += fronts[r].size();
      CHECK(std::is_sorted(fronts[r].begin(), fronts[r].end()));
    }
    CHECK(seen == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool has_parent = rank[i] == 0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (dominates(pts[j], pts[i])) {
          CHECK(rank[j] < rank[i]);
          has_parent = has_parent || rank[j] + 1 == rank[i];
        }
      }
      CHECK(has_parent);
    }
  }
}

TEST_CASE("crowding distance examples") {
  auto two = crowding_distance(std::vector<ObjectivePoint>{{0, 1}, {1, 0}});
  CHECK(two == std::vector<double>{kInf, kInf});
  auto three = crowding_distance(std::vector<ObjectivePoint>{{0, 1}, {0.5, 0.5}, {1, 0}});
  CHECK(three == std::vector<double>{kInf, 2.0, kInf});
  auto flat = crowding_distance(std::vector<ObjectivePoint>(4, ObjectivePoint{0.2, 0.2}));
  CHECK(std::count(flat.begin(), flat.end(), 0.0) == 2);
  CHECK(std::count(flat.begin(), flat.end(), kInf) == 2);
  auto four = crowding_distance(std::vector<ObjectivePoint>{{1, 0}, {0, 1}, {0.25, 0.5}, {0.5, 0.25}});
  CHECK(four[2] == doctest::Approx(1.25));
  CHECK(four[3] == doctest::Approx(1.25));
}

TEST_CASE("crowded comparison") {
  CHECK(crowded_compare({5, 0, 0.1}, {1, 1, kInf}) == std::strong_ordering::less);
  CHECK(crowded_compare({5, 2, kInf}, {1, 2, 1.0}) == std::strong_ordering::less);
  CHECK(crowded_compare({1, 2, 1.0}, {5, 2, 1.0}) == std::strong_ordering::less);
  CHECK(crowded_compare({5, 2, 1.0}, {1, 2, 1.0}) == std::strong_ordering::greater);
  CHECK(crowded_compare({3, 2, 1.0}, {3, 2, 1.0}) == std::strong_ordering::equal);
  CHECK_THROWS_AS((void)crowded_compare({0, std::nullopt, 0.0}, {1, 0, 0.0}), UsageError);
}

TEST_CASE("toy front") {
  const Dataset d = toy_dataset();
  const auto truth = exhaustive_front(d, 0.01);
  REQUIRE(truth.size() == 2);
  CHECK(truth[0] == ObjectivePoint{0.0, 0.25});
  CHECK(truth[1] == ObjectivePoint{0.5, 0.0});

  GaConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 30;
  cfg.seed = 1;
  ParetoFront front = run_nsga2(d, PenaltyConfig{}, cfg);
  auto pts = front.points();
  CHECK(std::find(pts.begin(), pts.end(), ObjectivePoint{0.5, 0.0}) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), ObjectivePoint{0.0, 0.25}) != pts.end());
  for (const auto& p : pts) CHECK_FALSE((p.f2 >= 0.5 && p.f1 > 0.0));
}

TEST_CASE("correlated objectives collapse to all zeros") {
  GaConfig cfg;
  cfg.population_size = 20;
  cfg.generations = 60;
  cfg.seed = 2;
  auto obj = [](const SolutionVector& m) {
    const double v = static_cast<double>(m.popcount()) / static_cast<double>(m.size());
    return ObjectivePoint{v, v};
  };
  ParetoFront front = run_nsga2(12, obj, cfg);
  REQUIRE(front.size() == 1);
  CHECK(front.members[0].mask == SolutionVector(12));
}

TEST_CASE("front invariants, determinism and generation monotonicity") {
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 6; ++rep) {
    const Dataset d = fairsub::testing::random_dataset(gen, 8 + gen() % 5, 2 + gen() % 2);
    GaConfig cfg;
    cfg.population_size = 30;
    cfg.generations = 40;
    cfg.seed = gen();
    cfg.operators.selection = rep % 2 ? SelectionMethod::tournament : SelectionMethod::elitist;
    cfg.operators.crossover = rep % 3 ? CrossoverMethod::one_point : CrossoverMethod::uniform;
    std::vector<double> hv;
    ParetoFront front = run_nsga2(d, PenaltyConfig{}, cfg, [&](std::size_t g, std::span<const ObjectivePoint> r0) {
      CHECK(g == hv.size());
      hv.push_back(hypervolume_2d(r0));
    });
    CHECK(hv.size() == cfg.generations + 1);
    for (std::size_t g = 1; g < hv.size(); ++g) CHECK(hv[g] >= hv[g - 1]);

    const auto truth = exhaustive_front(d, 0.01);
    for (std::size_t i = 0; i < front.size(); ++i) {
      const auto& m = front.members[i];
      CHECK(oracle_objectives(d, m.mask, 0.01) == m.point);
      CHECK(weakly_dominated_by(m.point, truth));
      for (std::size_t j = 0; j < front.size(); ++j) {
        CHECK_FALSE(dominates(front.members[j].point, m.point));
        if (i != j) CHECK(front.members[j].mask != m.mask);
      }
      if (i > 0) {
        const auto& prev = front.members[i - 1].point;
        CHECK((prev.f1 < m.point.f1 || (prev.f1 == m.point.f1 && prev.f2 <= m.point.f2)));
      }
    }

    cfg.jobs = 4;
    ParetoFront again = run_nsga2(d, PenaltyConfig{}, cfg);
    REQUIRE(again.size() == front.size());
    for (std::size_t i = 0; i < front.size(); ++i) {
      CHECK(again.members[i].mask == front.members[i].mask);
      CHECK(again.members[i].point == front.members[i].point);
    }
  }
}
