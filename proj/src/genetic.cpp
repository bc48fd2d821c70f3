#include "fairsub/genetic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fairsub/errors.hpp"
#include "fairsub/parallel.hpp"

namespace fairsub {

std::string_view to_string(InitializerKind k) noexcept {
  return k == InitializerKind::random ? "random" : "variable";
}
std::string_view to_string(SelectionMethod s) noexcept {
  return s == SelectionMethod::elitist ? "elitist" : "tournament";
}
std::string_view to_string(CrossoverMethod c) noexcept {
  return c == CrossoverMethod::one_point ? "one_point" : "uniform";
}
std::string_view to_string(MutationMethod m) noexcept {
  return m == MutationMethod::bit_flip ? "bit_flip" : "shuffle";
}

namespace {

[[noreturn]] void unknown(std::string_view what, std::string_view text, std::string_view expected) {
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) + "' (expected " +
                    std::string(expected) + ")");
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

InitializerKind parse_initializer(std::string_view text) {
  if (text == "random") return InitializerKind::random;
  if (text == "variable") return InitializerKind::variable;
  unknown("initializer", text, "random|variable");
}
SelectionMethod parse_selection(std::string_view text) {
  if (text == "elitist") return SelectionMethod::elitist;
  if (text == "tournament") return SelectionMethod::tournament;
  unknown("selection", text, "elitist|tournament");
}
CrossoverMethod parse_crossover(std::string_view text) {
  if (text == "one_point" || text == "1-point" || text == "onepoint") return CrossoverMethod::one_point;
  if (text == "uniform") return CrossoverMethod::uniform;
  unknown("crossover", text, "one_point|uniform");
}
MutationMethod parse_mutation(std::string_view text) {
  if (text == "bit_flip" || text == "bitflip") return MutationMethod::bit_flip;
  if (text == "shuffle") return MutationMethod::shuffle;
  unknown("mutation", text, "bit_flip|shuffle");
}

void GaConfig::validate() const {
  if (population_size < 2) throw ConfigError("population size must be at least 2");
  if (generations < 1) throw ConfigError("generations must be at least 1");
  if (!is_probability(mutation_rate)) throw ConfigError("mutation rate must lie in [0,1]");
  const auto& init = operators.initializer;
  if (!is_probability(init.p)) throw ConfigError("initializer p must lie in [0,1]");
  if (!is_probability(init.p_min) || !is_probability(init.p_max) || init.p_min > init.p_max) {
    throw ConfigError("variable initializer needs 0 <= p_min <= p_max <= 1");
  }
}

Population init_random(std::size_t n, std::size_t m, double p, Rng& rng) {
  if (!is_probability(p)) throw ConfigError("init_random: p must lie in [0,1]");
  Population pop;
  pop.members.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    SolutionVector v(n);
    for (std::size_t j = 0; j < n; ++j) v.set(j, rng.bernoulli(p));
    pop.members.push_back(std::move(v));
  }
  return pop;
}

std::vector<double> variable_probabilities(std::size_t m, double p_min, double p_max) {
  if (!is_probability(p_min) || !is_probability(p_max) || p_min > p_max) {
    throw ConfigError("variable initializer needs 0 <= p_min <= p_max <= 1");
  }
  std::vector<double> probs(m, p_min);
  if (m > 1) {
    const double step = (p_max - p_min) / static_cast<double>(m - 1);
    for (std::size_t i = 1; i + 1 < m; ++i) probs[i] = p_min + static_cast<double>(i) * step;
    probs.back() = p_max;
  }
  return probs;
}

Population init_variable(std::size_t n, std::size_t m, double p_min, double p_max, Rng& rng) {
  const auto probs = variable_probabilities(m, p_min, p_max);
  Population pop;
  pop.members.reserve(m);
  for (double p : probs) {
    SolutionVector v(n);
    for (std::size_t j = 0; j < n; ++j) v.set(j, rng.bernoulli(p));
    pop.members.push_back(std::move(v));
  }
  return pop;
}

Population initialize(std::size_t n, std::size_t m, const Initializer& init, Rng& rng) {
  return init.kind == InitializerKind::random ? init_random(n, m, init.p, rng)
                                              : init_variable(n, m, init.p_min, init.p_max, rng);
}

std::size_t binary_tournament(std::span<const double> fitness, std::size_t a, std::size_t b) {
  if (fitness[b] < fitness[a]) return b;
  if (fitness[a] < fitness[b]) return a;
  return std::min(a, b);
}

ParentPair select_parents(const Population& pop, SelectionMethod method, Rng& rng) {
  if (!pop.evaluated()) throw UsageError("select_parents: population has not been evaluated");
  if (pop.size() < 2) throw UsageError("select_parents: population needs at least 2 members");
  const std::span<const double> fit = pop.fitness;
  if (method == SelectionMethod::elitist) {
    std::size_t best = 0;
    std::size_t second = 1;
    if (fit[1] < fit[0]) std::swap(best, second);
    for (std::size_t i = 2; i < fit.size(); ++i) {
      if (fit[i] < fit[best]) {
        second = best;
        best = i;
      } else if (fit[i] < fit[second]) {
        second = i;
      }
    }
    return {best, second};
  }
  const std::size_t m = pop.size();
  const std::size_t a1 = rng.uniform_index(m);
  const std::size_t b1 = rng.uniform_index(m);
  const std::size_t first = binary_tournament(fit, a1, b1);
  const std::size_t a2 = rng.uniform_index(m);
  const std::size_t b2 = rng.uniform_index(m);
  return {first, binary_tournament(fit, a2, b2)};
}

std::pair<SolutionVector, SolutionVector> one_point_crossover(const SolutionVector& a, const SolutionVector& b,
                                                              std::size_t cut) {
  if (a.size() != b.size()) throw UsageError("crossover: parents differ in length");
  if (cut > a.size()) throw UsageError("crossover: cut beyond vector length");
  SolutionVector c1 = a;
  SolutionVector c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    c1.set(i, b[i]);
    c2.set(i, a[i]);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<SolutionVector, SolutionVector> crossover(const SolutionVector& a, const SolutionVector& b,
                                                    CrossoverMethod method, Rng& rng) {
  if (a.size() != b.size()) throw UsageError("crossover: parents differ in length");
  const std::size_t n = a.size();
  if (method == CrossoverMethod::one_point) {
    if (n < 2) return {a, b};
    return one_point_crossover(a, b, 1 + rng.uniform_index(n - 1));
  }
  SolutionVector c1 = a;
  SolutionVector c2 = b;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(0.5)) {
      c1.set(i, b[i]);
      c2.set(i, a[i]);
    }
  }
  return {std::move(c1), std::move(c2)};
}

SolutionVector mutate(SolutionVector v, MutationMethod method, double rate, Rng& rng) {
  if (!is_probability(rate)) throw ConfigError("mutation rate must lie in [0,1]");
  if (method == MutationMethod::bit_flip) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (rng.bernoulli(rate)) v.flip(i);
    }
    return v;
  }
  if (v.size() > 1) {
    auto bits = v.bits();
    for (std::size_t i = bits.size() - 1; i > 0; --i) {
      std::swap(bits[i], bits[rng.uniform_index(i + 1)]);
    }
  }
  return v;
}

namespace {

void evaluate(std::span<const SolutionVector> members, std::span<double> out, const ScalarObjective& objective,
              std::size_t jobs) {
  parallel_for(members.size(), jobs, [&](std::size_t i) { out[i] = objective(members[i]); });
}

}  // namespace

SingleObjectiveResult run_single_objective(std::size_t n, const ScalarObjective& objective, const GaConfig& cfg) {
  cfg.validate();
  const std::size_t m = cfg.population_size;
  const auto& ops = cfg.operators;
  Rng rng(cfg.seed);

  Population pop = initialize(n, m, ops.initializer, rng);
  pop.fitness.resize(m);
  evaluate(pop.members, pop.fitness, objective, cfg.jobs);

  SingleObjectiveResult result;
  {
    const auto it = std::min_element(pop.fitness.begin(), pop.fitness.end());
    const auto best = static_cast<std::size_t>(it - pop.fitness.begin());
    result.best = pop.members[best];
    result.value = *it;
  }
  result.history.reserve(cfg.generations + 1);
  result.history.push_back(result.value);

  std::vector<SolutionVector> offspring;
  std::vector<double> offspring_fitness(m);
  std::vector<std::size_t> order(2 * m);
  for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
    offspring.clear();
    while (offspring.size() < m) {
      const auto parents = select_parents(pop, ops.selection, rng);
      auto [c1, c2] = crossover(pop.members[parents.first], pop.members[parents.second], ops.crossover, rng);
      offspring.push_back(mutate(std::move(c1), ops.mutation, cfg.mutation_rate, rng));
      if (offspring.size() < m) offspring.push_back(mutate(std::move(c2), ops.mutation, cfg.mutation_rate, rng));
    }
    evaluate(offspring, offspring_fitness, objective, cfg.jobs);

    // truncation survivor selection over parents followed by offspring
    auto fitness_of = [&](std::size_t i) { return i < m ? pop.fitness[i] : offspring_fitness[i - m]; };
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness_of(a) < fitness_of(b); });
    Population next;
    next.members.reserve(m);
    next.fitness.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = order[k];
      next.members.push_back(i < m ? std::move(pop.members[i]) : std::move(offspring[i - m]));
      next.fitness.push_back(fitness_of(i));
    }
    pop = std::move(next);

    if (pop.fitness[0] < result.value) {
      result.value = pop.fitness[0];
      result.best = pop.members[0];
    }
    result.history.push_back(result.value);
  }
  return result;
}

}  // namespace fairsub
