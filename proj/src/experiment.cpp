#include "fairsub/experiment.hpp"

#include <cmath>
#include <sstream>

#include "fairsub/errors.hpp"
#include "fairsub/formats.hpp"
#include "fairsub/parallel.hpp"

namespace fairsub {

std::vector<OperatorSuite> operator_grid(const Initializer& random_init, const Initializer& variable_init) {
  std::vector<OperatorSuite> cells;
  for (const Initializer& init : {random_init, variable_init}) {
    for (auto sel : {SelectionMethod::elitist, SelectionMethod::tournament}) {
      for (auto cx : {CrossoverMethod::one_point, CrossoverMethod::uniform}) {
        for (auto mut : {MutationMethod::bit_flip, MutationMethod::shuffle}) {
          cells.push_back(OperatorSuite{init, sel, cx, mut});
        }
      }
    }
  }
  return cells;
}

GridResult run_grid(const Dataset& d, const GridConfig& cfg, const std::vector<OperatorSuite>& cells) {
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  const BiObjective objectives = fairness_objectives(d, cfg.penalty);

  GridResult result;
  result.trials.resize(cells.size() * cfg.trials);
  parallel_for(result.trials.size(), cfg.jobs, [&](std::size_t task) {
    const std::size_t cell = task / cfg.trials;
    const std::size_t trial = task % cfg.trials;
    GaConfig ga;
    ga.population_size = cfg.population_size;
    ga.generations = cfg.generations;
    ga.operators = cells[cell];
    ga.mutation_rate = cfg.mutation_rate;
    ga.seed = derive_seed(cfg.seed, trial);
    ga.jobs = 1;
    const ParetoFront front = run_nsga2(d.size(), objectives, ga);
    const auto points = front.points();
    result.trials[task] = TrialResult{cell, trial, ga.seed, hypervolume_2d(points, cfg.reference), front.size()};
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    double sum = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) sum += result.trials[c * cfg.trials + t].hypervolume;
    const double mean = sum / static_cast<double>(cfg.trials);
    double sq = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const double dev = result.trials[c * cfg.trials + t].hypervolume - mean;
      sq += dev * dev;
    }
    result.cells.push_back(CellSummary{cells[c], mean, std::sqrt(sq / static_cast<double>(cfg.trials))});
  }
  return result;
}

GridResult run_grid(const Dataset& d, const GridConfig& cfg) {
  return run_grid(d, cfg, operator_grid(cfg.random_init, cfg.variable_init));
}

std::string grid_trials_csv(const GridResult& r) {
  std::ostringstream out;
  out << "initializer,selection,crossover,mutation,trial,seed,hypervolume,front_size\n";
  for (const auto& t : r.trials) {
    const auto& ops = r.cells.at(t.cell).operators;
    out << to_string(ops.initializer.kind) << ',' << to_string(ops.selection) << ',' << to_string(ops.crossover)
        << ',' << to_string(ops.mutation) << ',' << t.trial << ',' << t.seed << ','
        << format_fixed(t.hypervolume, 6) << ',' << t.front_size << '\n';
  }
  return out.str();
}

std::string grid_summary_csv(const GridResult& r) {
  std::ostringstream out;
  out << "initializer,selection,crossover,mutation,hv_mean,hv_std\n";
  for (const auto& c : r.cells) {
    const auto& ops = c.operators;
    out << to_string(ops.initializer.kind) << ',' << to_string(ops.selection) << ',' << to_string(ops.crossover)
        << ',' << to_string(ops.mutation) << ',' << format_fixed(c.mean, 4) << ',' << format_fixed(c.stddev, 4)
        << '\n';
  }
  return out.str();
}

std::string grid_summary_table(const GridResult& r) {
  std::ostringstream out;
  auto col = [](std::string_view s, std::size_t w) {
    std::string out(s);
    out.resize(std::max(w, out.size()), ' ');
    return out;
  };
  out << col("initializer", 12) << col("selection", 12) << col("crossover", 11) << col("mutation", 10)
      << "hypervolume\n";
  for (const auto& c : r.cells) {
    const auto& ops = c.operators;
    out << col(to_string(ops.initializer.kind), 12) << col(to_string(ops.selection), 12)
        << col(to_string(ops.crossover), 11) << col(to_string(ops.mutation), 10) << format_fixed(c.mean, 4)
        << " ± " << format_fixed(c.stddev, 4) << '\n';
  }
  return out.str();
}

}  // namespace fairsub
