#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairsub/dataset.hpp"
#include "fairsub/genetic.hpp"
#include "fairsub/hypervolume.hpp"
#include "fairsub/metrics.hpp"

namespace fairsub {

/// Operator grid search: every initializer x selection x crossover x mutation
/// combination, `trials` NSGA-II runs each, scored by hypervolume.
struct GridConfig {
  std::size_t population_size = 100;
  std::size_t generations = 200;
  std::size_t trials = 10;
  double mutation_rate = 0.05;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  PenaltyConfig penalty;
  ReferencePoint reference;
  Initializer random_init{InitializerKind::random, 0.5, 0.5, 0.99};
  Initializer variable_init{InitializerKind::variable, 0.5, 0.5, 0.99};
};

/// The 16 suites in table order: initializer, then selection, crossover, mutation.
[[nodiscard]] std::vector<OperatorSuite> operator_grid(const Initializer& random_init,
                                                       const Initializer& variable_init);

struct TrialResult {
  std::size_t cell = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double hypervolume = 0.0;
  std::size_t front_size = 0;
};

struct CellSummary {
  OperatorSuite operators;
  double mean = 0.0;
  double stddev = 0.0;  ///< population standard deviation over trials
};

struct GridResult {
  std::vector<TrialResult> trials;  ///< cell-major, trial-minor
  std::vector<CellSummary> cells;
};

/// Trial t of every cell uses derive_seed(cfg.seed, t). Runs are distributed
/// over cfg.jobs threads; the result does not depend on the thread count.
[[nodiscard]] GridResult run_grid(const Dataset& d, const GridConfig& cfg,
                                  const std::vector<OperatorSuite>& cells);
[[nodiscard]] GridResult run_grid(const Dataset& d, const GridConfig& cfg);

[[nodiscard]] std::string grid_trials_csv(const GridResult& r);
[[nodiscard]] std::string grid_summary_csv(const GridResult& r);
/// Aligned text in the "mean ± std" layout, 4 decimals.
[[nodiscard]] std::string grid_summary_table(const GridResult& r);

}  // namespace fairsub
