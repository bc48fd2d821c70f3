#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fairsub/errors.hpp"
#include "fairsub/metrics.hpp"
#include "test_support.hpp"

using namespace fairsub;
using fairsub::testing::make_dataset;
using fairsub::testing::mask_of;
using fairsub::testing::random_dataset;
using fairsub::testing::toy_dataset;

namespace {

Dataset table2() { return subset(toy_dataset(), mask_of({1, 1, 0, 0})); }
Dataset table3() { return subset(toy_dataset(), mask_of({1, 1, 0, 1})); }

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

bool less(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

Rational abs_diff(std::int64_t p1, std::int64_t t1, std::int64_t p2, std::int64_t t2) {
  std::int64_t num = p1 * t2 - p2 * t1;
  return {num < 0 ? -num : num, t1 * t2};
}

}  // namespace

TEST_CASE("group stats of the toy tables") {
  GroupStats s = group_stats(toy_dataset());
  CHECK(s.total == std::vector<std::size_t>{1, 1, 2});
  CHECK(s.positive == std::vector<std::size_t>{1, 1, 1});
  GroupStats c = group_stats(table3());
  CHECK(c.total == std::vector<std::size_t>{1, 1, 1});
  CHECK(c.positive == std::vector<std::size_t>{1, 1, 1});
  GroupStats e = group_stats(subset(toy_dataset(), SolutionVector(4)));
  CHECK(e.total == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("statistical disparity") {
  GroupStats s = group_stats(toy_dataset());
  CHECK(statistical_disparity(s, 0, 2) == 0.5);
  CHECK(statistical_disparity(s, 2, 0) == 0.5);
  CHECK(statistical_disparity(s, 1, 1) == 0.0);
  CHECK_THROWS_AS((void)statistical_disparity(group_stats(table2()), 0, 2), UsageError);
}

TEST_CASE("psi on the toy tables") {
  CHECK(psi(toy_dataset(), Aggregation::max) == 0.5);
  CHECK(psi(toy_dataset(), Aggregation::sum) == 1.0);
  CHECK(psi(table3()) == 0.0);
  CHECK(psi(table2()) == 0.0);
  CHECK(psi(subset(toy_dataset(), mask_of({1, 0, 0, 0}))) == 0.0);
}

TEST_CASE("penalized psi and coverage") {
  CHECK(psi_penalized(table2(), PenaltyConfig{0.01}) == 1.01);
  CHECK(psi_penalized(table3()) == 0.0);
  CHECK(psi_penalized(subset(toy_dataset(), SolutionVector(4))) == 1.01);
  CHECK(psi_penalized(table2(), PenaltyConfig{0.01, Aggregation::sum}) == 3.01);
  CHECK(coverage_report(table2()) == std::vector<GroupId>{2});
  CHECK(coverage_report(table3()).empty());
  CHECK(coverage_report(subset(toy_dataset(), SolutionVector(4))) == std::vector<GroupId>{0, 1, 2});
  CHECK_THROWS_AS((void)missing_group_penalty(3, PenaltyConfig{0.0}), ConfigError);
}

TEST_CASE("data loss") {
  CHECK(data_loss(toy_dataset(), table2()) == 0.5);
  CHECK(data_loss(toy_dataset(), toy_dataset()) == 0.0);
  CHECK(data_loss(toy_dataset(), subset(toy_dataset(), SolutionVector(4))) == 1.0);
  CHECK_THROWS_AS((void)data_loss(0, 0), UsageError);
  CHECK_THROWS_AS((void)data_loss(3, 4), UsageError);
}

TEST_CASE("aggregation names") {
  CHECK(parse_aggregation("max") == Aggregation::max);
  CHECK(parse_aggregation("sum") == Aggregation::sum);
  CHECK(to_string(Aggregation::sum) == "sum");
  CHECK_THROWS_AS((void)parse_aggregation("mean"), ConfigError);
}

TEST_CASE("psi bounds and penalty properties on random subsets") {
  std::mt19937_64 gen(17);
  const PenaltyConfig cfg{0.01};
  for (int rep = 0; rep < 300; ++rep) {
    Dataset d = random_dataset(gen, 5 + gen() % 30, 2 + gen() % 3);
    SolutionVector m(d.size());
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, gen() % 3 != 0);
    Dataset s = subset(d, m);
    const double p = psi(s);
    const double pp = psi_penalized(s, cfg);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    if (coverage_report(s).empty()) {
      CHECK(pp == p);
    } else {
      CHECK(pp != p);
      CHECK(pp >= 1.01);
    }
  }
}

TEST_CASE("psi is invariant under permutation and duplication") {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::pair<std::size_t, int>> rows;
    const std::size_t groups = 2 + gen() % 3;
    for (std::size_t i = 0; i < 6 + gen() % 20; ++i) rows.emplace_back(i < groups ? i : gen() % groups, gen() % 2);
    const double base_max = psi(make_dataset(groups, rows), Aggregation::max);
    const double base_sum = psi(make_dataset(groups, rows), Aggregation::sum);
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(psi(make_dataset(groups, shuffled), Aggregation::max) == base_max);
    CHECK(psi(make_dataset(groups, shuffled), Aggregation::sum) == doctest::Approx(base_sum).epsilon(1e-12));
    std::vector<std::pair<std::size_t, int>> tripled;
    for (int k = 0; k < 3; ++k) tripled.insert(tripled.end(), rows.begin(), rows.end());
    CHECK(psi(make_dataset(groups, tripled), Aggregation::max) == base_max);
  }
}

TEST_CASE("psi matches a rational brute-force oracle") {
  std::mt19937_64 gen(29);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t groups = 2 + gen() % 3;
    const std::size_t n = 1 + gen() % 20;
    std::vector<std::pair<std::size_t, int>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.emplace_back(gen() % groups, gen() % 2);
    if (n < 2) continue;
    Dataset d = make_dataset(groups, rows);
    std::vector<std::int64_t> t(groups, 0), p(groups, 0);
    for (auto [g, y] : rows) {
      ++t[g];
      p[g] += y;
    }
    Rational best{0, 1};
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < groups; ++i) {
      for (std::size_t j = i + 1; j < groups; ++j) {
        if (t[i] == 0 || t[j] == 0) continue;
        Rational r = abs_diff(p[i], t[i], p[j], t[j]);
        if (less(best, r)) {
          best = r;
          bi = i;
          bj = j;
        }
      }
    }
    const double value = psi(d, Aggregation::max);
    if (best.num == 0) {
      CHECK(value == 0.0);
    } else {
      const double via_pair = std::abs(static_cast<double>(p[bi]) / static_cast<double>(t[bi]) -
                                       static_cast<double>(p[bj]) / static_cast<double>(t[bj]));
      CHECK(value == via_pair);
      CHECK(std::abs(value - static_cast<double>(best.num) / static_cast<double>(best.den)) < 1e-15);
    }
  }
}

TEST_CASE("subset evaluator agrees with materialized subsets") {
  std::mt19937_64 gen(99);
  for (int rep = 0; rep < 200; ++rep) {
    Dataset d = random_dataset(gen, 3 + gen() % 40, 2 + gen() % 3);
    const PenaltyConfig cfg{0.01, rep % 2 ? Aggregation::sum : Aggregation::max};
    SubsetEvaluator eval(d, cfg);
    SolutionVector m(d.size());
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, gen() & 1U);
    Dataset s = subset(d, m);
    CHECK(eval.psi_penalized(m) == psi_penalized(s, cfg));
    CHECK(eval.data_loss(m) == data_loss(d, s));
    auto o = fairsub::testing::oracle_objectives(d, m, 0.01);
    if (cfg.aggregation == Aggregation::max) CHECK(eval.psi_penalized(m) == o.f1);
    CHECK(eval.data_loss(m) == o.f2);
  }
}
