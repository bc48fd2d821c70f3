#include "fairsub/nsga2.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>

#include "fairsub/errors.hpp"
#include "fairsub/parallel.hpp"

namespace fairsub {

std::vector<Front> non_dominated_sort(std::span<const ObjectivePoint> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  Front current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated_by[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated_by[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }
  std::vector<Front> fronts;
  while (!current.empty()) {
    Front next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated_by[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectivePoint> front) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  std::vector<std::size_t> order(n);
  for (auto objective : {&ObjectivePoint::f1, &ObjectivePoint::f2}) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a].*objective < front[b].*objective; });
    const double lo = front[order.front()].*objective;
    const double hi = front[order.back()].*objective;
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (front[order[k + 1]].*objective - front[order[k - 1]].*objective) / range;
    }
  }
  return distance;
}

std::strong_ordering crowded_compare(const RankedMember& a, const RankedMember& b) {
  if (!a.rank || !b.rank) throw UsageError("crowded_compare: member has not been ranked");
  if (*a.rank != *b.rank) return *a.rank <=> *b.rank;
  if (a.crowding > b.crowding) return std::strong_ordering::less;
  if (a.crowding < b.crowding) return std::strong_ordering::greater;
  return a.index <=> b.index;
}

std::vector<ObjectivePoint> ParetoFront::points() const {
  std::vector<ObjectivePoint> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.point);
  return out;
}

namespace {

/// Assigns rank and crowding distance to every point.
std::vector<RankedMember> rank_points(std::span<const ObjectivePoint> points, std::vector<Front>* fronts_out) {
  std::vector<RankedMember> ranked(points.size());
  auto fronts = non_dominated_sort(points);
  std::vector<ObjectivePoint> buffer;
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    buffer.clear();
    for (std::size_t i : fronts[r]) buffer.push_back(points[i]);
    const auto dist = crowding_distance(buffer);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      ranked[fronts[r][k]] = RankedMember{fronts[r][k], r, dist[k]};
    }
  }
  if (fronts_out) *fronts_out = std::move(fronts);
  return ranked;
}

bool preferred(const RankedMember& a, const RankedMember& b) { return crowded_compare(a, b) < 0; }

struct Generation {
  std::vector<SolutionVector> members;
  std::vector<ObjectivePoint> points;
  std::vector<RankedMember> ranked;
};

void report(const GenerationObserver& observer, std::size_t gen, const Generation& g) {
  if (!observer) return;
  std::vector<ObjectivePoint> rank0;
  for (const auto& r : g.ranked) {
    if (*r.rank == 0) rank0.push_back(g.points[r.index]);
  }
  observer(gen, rank0);
}

}  // namespace

ParetoFront run_nsga2(std::size_t n, const BiObjective& objectives, const GaConfig& cfg,
                      const GenerationObserver& observer) {
  cfg.validate();
  const std::size_t m = cfg.population_size;
  const auto& ops = cfg.operators;
  Rng rng(cfg.seed);

  auto evaluate = [&](std::span<const SolutionVector> members, std::span<ObjectivePoint> out) {
    parallel_for(members.size(), cfg.jobs, [&](std::size_t i) { out[i] = objectives(members[i]); });
  };

  Generation pop;
  pop.members = initialize(n, m, ops.initializer, rng).members;
  pop.points.resize(m);
  evaluate(pop.members, pop.points);
  pop.ranked = rank_points(pop.points, nullptr);
  report(observer, 0, pop);

  std::vector<SolutionVector> offspring;
  std::vector<ObjectivePoint> offspring_points(m);
  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    // the elitist pair depends only on the ranking, so compute it once
    ParentPair elite{0, 1};
    if (ops.selection == SelectionMethod::elitist) {
      std::vector<RankedMember> sorted = pop.ranked;
      std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), preferred);
      elite = {sorted[0].index, sorted[1].index};
    }
    auto tournament = [&] {
      const auto& a = pop.ranked[rng.uniform_index(m)];
      const auto& b = pop.ranked[rng.uniform_index(m)];
      return preferred(b, a) ? b.index : a.index;
    };

    offspring.clear();
    while (offspring.size() < m) {
      ParentPair parents = elite;
      if (ops.selection == SelectionMethod::tournament) {
        parents.first = tournament();
        parents.second = tournament();
      }
      auto [c1, c2] = crossover(pop.members[parents.first], pop.members[parents.second], ops.crossover, rng);
      offspring.push_back(mutate(std::move(c1), ops.mutation, cfg.mutation_rate, rng));
      if (offspring.size() < m) offspring.push_back(mutate(std::move(c2), ops.mutation, cfg.mutation_rate, rng));
    }
    evaluate(offspring, offspring_points);

    // parents then offspring
    std::vector<ObjectivePoint> combined_points = pop.points;
    combined_points.insert(combined_points.end(), offspring_points.begin(), offspring_points.end());
    std::vector<Front> fronts;
    const auto combined_ranked = rank_points(combined_points, &fronts);

    std::vector<std::size_t> survivors;
    survivors.reserve(m);
    for (const auto& front : fronts) {
      if (survivors.size() + front.size() <= m) {
        survivors.insert(survivors.end(), front.begin(), front.end());
        if (survivors.size() == m) break;
        continue;
      }
      std::vector<RankedMember> last;
      for (std::size_t i : front) last.push_back(combined_ranked[i]);
      std::stable_sort(last.begin(), last.end(), preferred);
      for (std::size_t k = 0; survivors.size() < m; ++k) survivors.push_back(last[k].index);
      break;
    }

    Generation next;
    next.members.reserve(m);
    next.points.reserve(m);
    next.ranked.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = survivors[k];
      next.members.push_back(i < m ? std::move(pop.members[i]) : std::move(offspring[i - m]));
      next.points.push_back(combined_points[i]);
      RankedMember r = combined_ranked[i];
      r.index = k;
      next.ranked.push_back(r);
    }
    pop = std::move(next);
    report(observer, gen, pop);
  }

  ParetoFront front;
  std::set<SolutionVector> seen;
  for (const auto& r : pop.ranked) {
    if (*r.rank != 0) continue;
    if (!seen.insert(pop.members[r.index]).second) continue;
    front.members.push_back({pop.members[r.index], pop.points[r.index]});
  }
  std::stable_sort(front.members.begin(), front.members.end(), [](const FrontMember& a, const FrontMember& b) {
    if (a.point.f1 != b.point.f1) return a.point.f1 < b.point.f1;
    return a.point.f2 < b.point.f2;
  });
  return front;
}

BiObjective fairness_objectives(const Dataset& d, const PenaltyConfig& penalty) {
  auto evaluator = std::make_shared<const SubsetEvaluator>(d, penalty);
  return [evaluator](const SolutionVector& mask) {
    return ObjectivePoint{evaluator->psi_penalized(mask), evaluator->data_loss(mask)};
  };
}

ParetoFront run_nsga2(const Dataset& d, const PenaltyConfig& penalty, const GaConfig& cfg,
                      const GenerationObserver& observer) {
  return run_nsga2(d.size(), fairness_objectives(d, penalty), cfg, observer);
}

}  // namespace fairsub
