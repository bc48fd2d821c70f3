#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fairsub/csv.hpp"
#include "fairsub/experiment.hpp"
#include "fairsub/parallel.hpp"
#include "test_support.hpp"

using namespace fairsub;
using fairsub::testing::toy_dataset;

TEST_CASE("operator grid has sixteen distinct cells in table order") {
  auto cells = operator_grid(GridConfig{}.random_init, GridConfig{}.variable_init);
  REQUIRE(cells.size() == 16);
  std::set<std::tuple<int, int, int, int>> seen;
  for (const auto& c : cells) {
    seen.insert({static_cast<int>(c.initializer.kind), static_cast<int>(c.selection),
                 static_cast<int>(c.crossover), static_cast<int>(c.mutation)});
  }
  CHECK(seen.size() == 16);
  CHECK(cells[0].initializer.kind == InitializerKind::random);
  CHECK(cells[0].selection == SelectionMethod::elitist);
  CHECK(cells[1].mutation == MutationMethod::shuffle);
  CHECK(cells[2].crossover == CrossoverMethod::uniform);
  CHECK(cells[4].selection == SelectionMethod::tournament);
  CHECK(cells[8].initializer.kind == InitializerKind::variable);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<int> hits(37, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("toy grid: rows, seeds, summary and spread") {
  GridConfig cfg;
  cfg.trials = 10;
  cfg.seed = 5;
  GridResult r = run_grid(toy_dataset(), cfg);
  REQUIRE(r.trials.size() == 160);
  REQUIRE(r.cells.size() == 16);
  for (const auto& t : r.trials) CHECK(t.seed == derive_seed(5, t.trial));
  for (std::size_t c = 0; c < 16; ++c) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < 10; ++t) sum += r.trials[c * 10 + t].hypervolume;
    const double mean = sum / 10;
    for (std::size_t t = 0; t < 10; ++t) sq += std::pow(r.trials[c * 10 + t].hypervolume - mean, 2);
    CHECK(r.cells[c].mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(r.cells[c].stddev == doctest::Approx(std::sqrt(sq / 10)).epsilon(1e-12));
    CHECK(r.cells[c].stddev <= 0.05);
  }
  auto trials = csv::parse(grid_trials_csv(r));
  CHECK(trials.size() == 161);
  auto summary = csv::parse(grid_summary_csv(r));
  CHECK(summary.size() == 17);
  CHECK(grid_summary_table(r).find("±") != std::string::npos);
}

TEST_CASE("grid results do not depend on the thread count") {
  const Dataset d = synthesize(SynthSpec{60, {0.5, 0.5}, {0.7, 0.3}, 3});
  GridConfig cfg;
  cfg.population_size = 12;
  cfg.generations = 8;
  cfg.trials = 3;
  cfg.seed = 9;
  GridResult one = run_grid(d, cfg);
  cfg.jobs = 4;
  GridResult four = run_grid(d, cfg);
  CHECK(grid_trials_csv(one) == grid_trials_csv(four));
  CHECK(grid_summary_csv(one) == grid_summary_csv(four));
}
