#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairsub/dataset.hpp"
#include "fairsub/genetic.hpp"
#include "fairsub/metrics.hpp"
#include "fairsub/nsga2.hpp"

namespace fairsub {

/// absolute: beta = the missing-group penalty (1 + eps under max aggregation).
/// relative: beta = psi_hat of the dataset being processed.
enum class BetaMode { absolute, relative };
enum class SolverMode { single, multi };

[[nodiscard]] std::string_view to_string(BetaMode m) noexcept;
[[nodiscard]] std::string_view to_string(SolverMode m) noexcept;
[[nodiscard]] BetaMode parse_beta_mode(std::string_view text);
[[nodiscard]] SolverMode parse_solver_mode(std::string_view text);

struct Scalarization {
  double alpha = 0.5;
  BetaMode beta_mode = BetaMode::absolute;
  double epsilon = 0.01;

  void validate() const;
};

struct ResolvedBeta {
  double value = 1.0;
  /// Relative mode on a dataset with psi_hat = 0 falls back to absolute.
  bool fell_back = false;
};

[[nodiscard]] ResolvedBeta resolve_beta(const Dataset& d, BetaMode mode, double epsilon,
                                        Aggregation aggregation = Aggregation::max);

/// alpha * psi_hat / beta + (1 - alpha) * loss
[[nodiscard]] double scalarize(double psi_hat, double loss, double alpha, double beta);

/// Index of the front member minimizing psi_hat / beta + loss. Alpha plays no
/// part here; it only weights the single-objective fitness. Ties go to the
/// smaller loss, then the smaller psi_hat, then the lower index.
[[nodiscard]] std::size_t select_from_front(const ParetoFront& front, double beta);

struct PreprocessReport {
  SolverMode mode = SolverMode::multi;
  double psi_original = 0.0;  ///< psi_hat of the input
  double psi_fair = 0.0;      ///< psi_hat of the chosen subset
  double data_loss = 0.0;
  double retained = 1.0;  ///< |subset| / |input|
  std::size_t rows_original = 0;
  std::size_t rows_fair = 0;
  std::vector<std::string> missing_groups;
  double alpha = 0.5;
  BetaMode beta_mode = BetaMode::absolute;
  double beta = 1.0;
  bool beta_fell_back = false;
  double epsilon = 0.01;
  Aggregation aggregation = Aggregation::max;
  double objective = 0.0;  ///< single: scalarized fitness; multi: front selection score
  std::size_t front_size = 0;  ///< multi only
  GaConfig config;
  std::vector<std::string> warnings;
  double wall_clock_seconds = 0.0;
};

struct PreprocessResult {
  Dataset subset;
  SolutionVector mask;
  PreprocessReport report;
  std::optional<ParetoFront> front;  ///< multi only
};

/// Removes rows of `d` to trade discrimination against data loss.
///
/// single: GA on the scalarized objective. multi: NSGA-II on
/// (psi_hat, loss), then select_from_front. Beta is resolved on `d` itself.
/// Refuses a dataset tagged as a test split.
[[nodiscard]] PreprocessResult preprocess(const Dataset& d, SolverMode mode, const Scalarization& s,
                                          const GaConfig& cfg, Aggregation aggregation = Aggregation::max);

}  // namespace fairsub
