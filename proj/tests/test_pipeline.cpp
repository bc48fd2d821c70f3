#include <doctest.h>

#include <random>

#include "fairsub/errors.hpp"
#include "fairsub/pipeline.hpp"
#include "test_support.hpp"

using namespace fairsub;
using fairsub::testing::mask_of;
using fairsub::testing::toy_dataset;

namespace {

ParetoFront front_of(std::vector<ObjectivePoint> pts) {
  ParetoFront f;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    SolutionVector m(8);
    m.set(i, true);
    f.members.push_back({m, pts[i]});
  }
  return f;
}

Dataset fair_dataset() {
  return fairsub::testing::make_dataset(2, {{0, 1}, {0, 0}, {1, 1}, {1, 0}});
}

Dataset biased_synthetic() { return synthesize(SynthSpec{500, {0.5, 0.5}, {0.8, 0.3}, 7}); }

}  // namespace

TEST_CASE("beta resolution") {
  CHECK(resolve_beta(toy_dataset(), BetaMode::absolute, 0.01).value == 1.01);
  auto rel = resolve_beta(toy_dataset(), BetaMode::relative, 0.01);
  CHECK(rel.value == 0.5);
  CHECK_FALSE(rel.fell_back);
  auto fb = resolve_beta(fair_dataset(), BetaMode::relative, 0.01);
  CHECK(fb.value == 1.01);
  CHECK(fb.fell_back);
  CHECK(resolve_beta(toy_dataset(), BetaMode::absolute, 0.01, Aggregation::sum).value == 3.01);
}

TEST_CASE("scalarization") {
  CHECK(scalarize(0.0, 0.25, 0.5, 1.01) == 0.125);
  CHECK(scalarize(0.4, 0.9, 1.0, 0.8) == 0.5);
  CHECK(scalarize(0.4, 0.9, 0.0, 0.8) == 0.9);
  Scalarization s;
  s.alpha = 1.2;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("front selection") {
  const ParetoFront toy = front_of({{0, 0.25}, {0.5, 0}});
  CHECK(select_from_front(toy, 0.5) == 0);
  CHECK(select_from_front(toy, 1.01) == 0);
  CHECK(select_from_front(front_of({{0.3, 0.3}}), 1.01) == 0);
  CHECK_THROWS_AS((void)select_from_front(ParetoFront{}, 1.0), UsageError);
  // equal scores: smaller loss wins
  CHECK(select_from_front(front_of({{0.0, 0.5}, {0.5, 0.0}}), 1.0) == 1);
}

TEST_CASE("front selection is invariant under positive rescaling of both scores") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const ObjectivePoint a{u(gen), u(gen)}, b{u(gen), u(gen)};
    const double beta = 0.1 + u(gen);
    const std::size_t pick = select_from_front(front_of({a, b}), beta);
    // scaling both scores by c is the same as scaling beta by 1/c and both losses by c
    const double c = 0.25 + 4 * u(gen);
    const double sa = c * (a.f1 / beta + a.f2), sb = c * (b.f1 / beta + b.f2);
    if (sa != sb) CHECK(pick == (sa < sb ? 0U : 1U));
  }
}

TEST_CASE("toy single-objective preprocess") {
  GaConfig cfg;
  cfg.population_size = 50;
  cfg.generations = 100;
  cfg.seed = 4;
  auto r = preprocess(toy_dataset(), SolverMode::single, Scalarization{}, cfg);
  CHECK(r.mask == mask_of({1, 1, 0, 1}));
  CHECK(r.report.psi_original == 0.5);
  CHECK(r.report.psi_fair == 0.0);
  CHECK(r.report.retained == 0.75);
  CHECK(r.report.objective == 0.125);
  CHECK(r.report.missing_groups.empty());
  CHECK_FALSE(r.front.has_value());
  CHECK(r.subset.size() == 3);
}

TEST_CASE("toy multi-objective preprocess") {
  GaConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 30;
  cfg.seed = 1;
  for (auto beta : {BetaMode::absolute, BetaMode::relative}) {
    Scalarization s;
    s.beta_mode = beta;
    auto r = preprocess(toy_dataset(), SolverMode::multi, s, cfg);
    CHECK(r.mask == mask_of({1, 1, 0, 1}));
    REQUIRE(r.front.has_value());
    CHECK(r.report.front_size == r.front->size());
    CHECK(r.report.beta == (beta == BetaMode::absolute ? 1.01 : 0.5));
  }
}

TEST_CASE("test split is refused") {
  const Dataset t = toy_dataset().with_role(SplitRole::test);
  CHECK_THROWS_AS((void)preprocess(t, SolverMode::multi, Scalarization{}, GaConfig{}), UsageError);
}

TEST_CASE("relative beta on fair data falls back with a warning") {
  GaConfig cfg;
  cfg.population_size = 10;
  cfg.generations = 5;
  Scalarization s;
  s.beta_mode = BetaMode::relative;
  auto r = preprocess(fair_dataset(), SolverMode::multi, s, cfg);
  CHECK(r.report.beta_fell_back);
  CHECK(r.report.beta == 1.01);
  CHECK_FALSE(r.report.warnings.empty());
}

TEST_CASE("report invariants and reproducibility on synthetic data") {
  const Dataset d = biased_synthetic();
  GaConfig cfg;
  cfg.population_size = 40;
  cfg.generations = 30;
  cfg.seed = 8;
  for (auto mode : {SolverMode::single, SolverMode::multi}) {
    auto r = preprocess(d, mode, Scalarization{}, cfg);
    CHECK(r.report.retained == static_cast<double>(r.mask.popcount()) / static_cast<double>(d.size()));
    CHECK(r.report.retained == 1.0 - r.report.data_loss);
    CHECK(r.report.rows_fair == r.subset.size());
    CHECK(r.subset == subset(d, r.mask));
    CHECK(r.report.psi_fair == psi_penalized(r.subset));
    if (mode == SolverMode::multi) {
      bool found = false;
      for (const auto& m : r.front->members) {
        if (m.mask == r.mask) {
          found = true;
          CHECK(m.point.f1 == r.report.psi_fair);
          CHECK(m.point.f2 == r.report.data_loss);
        }
      }
      CHECK(found);
    }
    cfg.jobs = 3;
    auto again = preprocess(d, mode, Scalarization{}, cfg);
    CHECK(again.mask == r.mask);
    cfg.jobs = 1;
  }
}

TEST_CASE("synthetic relative and absolute beta directions") {
  const Dataset d = biased_synthetic();
  GaConfig cfg;
  cfg.population_size = 200;
  cfg.generations = 400;
  cfg.seed = 2;
  Scalarization rel;
  rel.beta_mode = BetaMode::relative;
  auto r = preprocess(d, SolverMode::multi, rel, cfg);
  CHECK(r.report.psi_fair < r.report.psi_original);
  CHECK(r.report.retained >= 0.4);
  CHECK(r.report.retained <= 0.7);
  auto a = preprocess(d, SolverMode::multi, Scalarization{}, cfg);
  CHECK(a.report.retained >= 0.9);
}
