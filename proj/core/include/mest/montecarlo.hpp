#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mest/estimators.hpp"
#include "mest/moments.hpp"
#include "mest/theory.hpp"

namespace mest {

enum class TrueLaw { BivariateNormal };
enum class ErrorLaw { Normal };

/// Generative model: (X, Y) from `law` with the params' means, variances and
/// correlation; independent zero-mean errors u, v from `error_law`.
struct PopulationModel {
  PopulationParams params;
  TrueLaw law = TrueLaw::BivariateNormal;
  ErrorLaw error_law = ErrorLaw::Normal;
};

/// Sample means of one replication, both of the observed values and of the
/// underlying true values.
struct ReplicationDraw {
  SampleSummary observed;
  SampleSummary truth;
  bool rejected = false;  ///< observed.xbar <= 0
};

/// Draws replication `index` of the stream rooted at `seed`. The result only
/// depends on (model, seed, index).
ReplicationDraw draw_replication_detail(const PopulationModel& model, std::uint64_t seed,
                                        std::uint64_t index);

/// One sampled unit: true values and their observed (error-contaminated) counterparts.
struct UnitDraw {
  double X = 0.0, Y = 0.0, x = 0.0, y = 0.0;
};

/// The individual units behind draw_replication_detail(model, seed, index).
std::vector<UnitDraw> draw_units(const PopulationModel& model, std::uint64_t seed, std::uint64_t index);

/// Observed means, or nullopt when the draw is rejected (xbar <= 0).
std::optional<SampleSummary> draw_replication(const PopulationModel& model, std::uint64_t seed,
                                              std::uint64_t index);

enum class WeightPolicy { Fixed, OracleOptimal };

struct SimulationConfig {
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  EstimatorId estimator = EstimatorId::Mean;
  std::optional<WeightPair> weights;  ///< required iff weighted and policy is Fixed
  WeightPolicy weight_policy = WeightPolicy::Fixed;
  TpMode tp_mode = TpMode::Corrected;  ///< quadratic used for oracle-optimal tp weights
  unsigned workers = 0;                ///< 0 = hardware concurrency
};

struct SimulationResult {
  double mean_estimate = 0.0;
  double empirical_bias = 0.0;
  double empirical_mse = 0.0;
  double mc_standard_error_of_mse = 0.0;
  std::size_t replications_used = 0;
  std::size_t rejected_replications = 0;
  std::optional<WeightPair> weights_used;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Weights a config will run with: the fixed pair, the oracle-optimal pair
/// from the true params, or nullopt for unweighted estimators. Throws
/// InvalidParameter for inconsistent configs.
std::optional<WeightPair> resolve_weights(const PopulationModel& model,
                                          const SimulationConfig& config);

/// Per-replication estimates in replication order; nullopt marks rejected draws.
std::vector<std::optional<double>> replication_estimates(const PopulationModel& model,
                                                         const SimulationConfig& config);

/// Throws SimulationFailure when every replication is rejected.
SimulationResult run_simulation(const PopulationModel& model, const SimulationConfig& config);

struct TheoryVerdict {
  double z = 0.0;  ///< (empirical_mse - mse_total) / mc_standard_error_of_mse
  double k = 0.0;
  bool pass = false;  ///< |z| <= k
};

/// Throws DegenerateComparison when the standard error is zero and the values differ.
TheoryVerdict compare_with_theory(const SimulationResult& result, const MseBreakdown& breakdown,
                                  double k);

/// Same as above against a bare theoretical MSE value.
TheoryVerdict compare_with_theory(const SimulationResult& result, double theoretical_mse, double k);

}  // namespace mest
