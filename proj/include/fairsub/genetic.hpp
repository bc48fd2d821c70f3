#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fairsub/rng.hpp"
#include "fairsub/solution.hpp"

namespace fairsub {

enum class InitializerKind { random, variable };
enum class SelectionMethod { elitist, tournament };
enum class CrossoverMethod { one_point, uniform };
enum class MutationMethod { bit_flip, shuffle };

[[nodiscard]] std::string_view to_string(InitializerKind k) noexcept;
[[nodiscard]] std::string_view to_string(SelectionMethod s) noexcept;
[[nodiscard]] std::string_view to_string(CrossoverMethod c) noexcept;
[[nodiscard]] std::string_view to_string(MutationMethod m) noexcept;
[[nodiscard]] InitializerKind parse_initializer(std::string_view text);
[[nodiscard]] SelectionMethod parse_selection(std::string_view text);
[[nodiscard]] CrossoverMethod parse_crossover(std::string_view text);
[[nodiscard]] MutationMethod parse_mutation(std::string_view text);

struct Initializer {
  InitializerKind kind = InitializerKind::variable;
  double p = 0.5;       // random
  double p_min = 0.5;   // variable
  double p_max = 0.99;  // variable
};

struct OperatorSuite {
  Initializer initializer;
  SelectionMethod selection = SelectionMethod::elitist;
  CrossoverMethod crossover = CrossoverMethod::one_point;
  MutationMethod mutation = MutationMethod::bit_flip;
};

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 200;
  OperatorSuite operators;
  /// Per-bit flip probability of bit_flip mutation.
  double mutation_rate = 0.05;
  std::uint64_t seed = 0;
  /// Threads used for fitness evaluation. Results do not depend on it.
  std::size_t jobs = 1;

  /// Throws ConfigError on M < 2, G < 1, or probabilities outside [0,1].
  void validate() const;
};

/// M solutions of equal length, with fitness filled in once evaluated.
struct Population {
  std::vector<SolutionVector> members;
  std::vector<double> fitness;

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
  [[nodiscard]] bool evaluated() const noexcept { return !members.empty() && fitness.size() == members.size(); }
};

/// Every bit independently 1 with probability p.
[[nodiscard]] Population init_random(std::size_t n, std::size_t m, double p, Rng& rng);

/// Member i uses p_min + i * (p_max - p_min) / (m - 1); p_min alone when m == 1.
[[nodiscard]] std::vector<double> variable_probabilities(std::size_t m, double p_min, double p_max);
[[nodiscard]] Population init_variable(std::size_t n, std::size_t m, double p_min, double p_max, Rng& rng);

[[nodiscard]] Population initialize(std::size_t n, std::size_t m, const Initializer& init, Rng& rng);

struct ParentPair {
  std::size_t first;
  std::size_t second;
};

/// Winner of a two-member tournament on scalar fitness (lower wins, ties to the lower index).
[[nodiscard]] std::size_t binary_tournament(std::span<const double> fitness, std::size_t a, std::size_t b);

/// elitist: the two lowest-fitness members (ties by index).
/// tournament: each parent wins a binary tournament over two uniform draws with replacement.
[[nodiscard]] ParentPair select_parents(const Population& pop, SelectionMethod method, Rng& rng);

/// Children a[..cut] + b[cut..] and b[..cut] + a[cut..].
[[nodiscard]] std::pair<SolutionVector, SolutionVector> one_point_crossover(const SolutionVector& a,
                                                                            const SolutionVector& b,
                                                                            std::size_t cut);

/// one_point draws the cut from [1, n-1]; uniform swaps each position with probability 1/2.
[[nodiscard]] std::pair<SolutionVector, SolutionVector> crossover(const SolutionVector& a, const SolutionVector& b,
                                                                  CrossoverMethod method, Rng& rng);

/// bit_flip flips each bit with probability `rate`. shuffle applies a uniform
/// permutation to the whole vector; `rate` does not apply to it.
[[nodiscard]] SolutionVector mutate(SolutionVector v, MutationMethod method, double rate, Rng& rng);

using ScalarObjective = std::function<double(const SolutionVector&)>;

struct SingleObjectiveResult {
  SolutionVector best;
  double value = 0.0;
  /// Best-ever value after initialization and after each generation (G + 1 entries).
  std::vector<double> history;
};

/// Generational GA minimizing `objective` over masks of length n.
///
/// Each generation breeds M offspring (parent selection, crossover, mutation)
/// and keeps the best M of parents and offspring. The objective must be a
/// pure function; it may be called from several threads when cfg.jobs > 1.
[[nodiscard]] SingleObjectiveResult run_single_objective(std::size_t n, const ScalarObjective& objective,
                                                         const GaConfig& cfg);

}  // namespace fairsub
