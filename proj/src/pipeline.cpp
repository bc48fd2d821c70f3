#include "fairsub/pipeline.hpp"

#include <chrono>
#include <string>
#include <tuple>

#include "fairsub/errors.hpp"

namespace fairsub {

std::string_view to_string(BetaMode m) noexcept { return m == BetaMode::absolute ? "absolute" : "relative"; }
std::string_view to_string(SolverMode m) noexcept { return m == SolverMode::single ? "single" : "multi"; }

BetaMode parse_beta_mode(std::string_view text) {
  if (text == "absolute") return BetaMode::absolute;
  if (text == "relative") return BetaMode::relative;
  throw ConfigError("unknown beta mode '" + std::string(text) + "' (expected absolute|relative)");
}

SolverMode parse_solver_mode(std::string_view text) {
  if (text == "single") return SolverMode::single;
  if (text == "multi") return SolverMode::multi;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected single|multi)");
}

void Scalarization::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

ResolvedBeta resolve_beta(const Dataset& d, BetaMode mode, double epsilon, Aggregation aggregation) {
  const PenaltyConfig penalty{epsilon, aggregation};
  const double absolute = missing_group_penalty(d.group_count(), penalty);
  if (mode == BetaMode::absolute) return {absolute, false};
  const double value = psi_penalized(d, penalty);
  if (value > 0.0) return {value, false};
  return {absolute, true};
}

double scalarize(double psi_hat, double loss, double alpha, double beta) {
  if (!(beta > 0.0)) throw UsageError("scalarize: beta must be positive");
  return alpha * psi_hat / beta + (1.0 - alpha) * loss;
}

std::size_t select_from_front(const ParetoFront& front, double beta) {
  if (front.empty()) throw UsageError("select_from_front: empty front");
  if (!(beta > 0.0)) throw UsageError("select_from_front: beta must be positive");
  auto key = [&](std::size_t i) {
    const auto& p = front.members[i].point;
    return std::tuple{p.f1 / beta + p.f2, p.f2, p.f1, i};
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < front.size(); ++i) {
    if (key(i) < key(best)) best = i;
  }
  return best;
}

PreprocessResult preprocess(const Dataset& d, SolverMode mode, const Scalarization& s, const GaConfig& cfg,
                            Aggregation aggregation) {
  const auto started = std::chrono::steady_clock::now();
  if (d.role() == SplitRole::test) throw UsageError("refusing to preprocess a test split");
  if (d.empty()) throw DataError("cannot preprocess an empty dataset");
  s.validate();
  cfg.validate();

  const PenaltyConfig penalty{s.epsilon, aggregation};
  const SubsetEvaluator evaluator(d, penalty);
  const ResolvedBeta beta = resolve_beta(d, s.beta_mode, s.epsilon, aggregation);

  PreprocessReport report;
  report.mode = mode;
  report.alpha = s.alpha;
  report.beta_mode = s.beta_mode;
  report.beta = beta.value;
  report.beta_fell_back = beta.fell_back;
  report.epsilon = s.epsilon;
  report.aggregation = aggregation;
  report.config = cfg;
  if (beta.fell_back) {
    report.warnings.push_back("dataset discrimination is 0; relative beta fell back to absolute");
  }

  SolutionVector mask;
  std::optional<ParetoFront> front;
  if (mode == SolverMode::single) {
    const double alpha = s.alpha;
    const double b = beta.value;
    auto objective = [&evaluator, alpha, b](const SolutionVector& v) {
      return scalarize(evaluator.psi_penalized(v), evaluator.data_loss(v), alpha, b);
    };
    auto result = run_single_objective(d.size(), objective, cfg);
    mask = std::move(result.best);
    report.objective = result.value;
  } else {
    front = run_nsga2(d, penalty, cfg);
    const std::size_t chosen = select_from_front(*front, beta.value);
    mask = front->members[chosen].mask;
    const auto& p = front->members[chosen].point;
    report.objective = p.f1 / beta.value + p.f2;
    report.front_size = front->size();
  }

  Dataset fair = subset(d, mask);
  report.rows_original = d.size();
  report.rows_fair = fair.size();
  report.psi_original = psi_penalized(d, penalty);
  report.psi_fair = psi_penalized(fair, penalty);
  report.data_loss = data_loss(d, fair);
  report.retained = static_cast<double>(fair.size()) / static_cast<double>(d.size());
  for (GroupId g : coverage_report(fair)) report.missing_groups.push_back(d.group_label(g));
  if (!report.missing_groups.empty()) report.warnings.push_back("chosen subset does not cover every group");
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return PreprocessResult{std::move(fair), std::move(mask), std::move(report), std::move(front)};
}

}  // namespace fairsub
