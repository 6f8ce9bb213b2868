#pragma once

#include <optional>
#include <string_view>

#include "mest/estimators.hpp"
#include "mest/moments.hpp"

namespace mest {

/// How the tp family's MSE quadratic is built.
///  - Corrected: the first-order error of tp is term-identical to t4's, so the
///    quadratic is t4's (cross term R_m V_xm - 2 V_yxm).
///  - AsPrinted: the published tp quadratic with cross term -2 V_yxm.
enum class TpMode { Corrected, AsPrinted };

std::string_view to_string(TpMode mode) noexcept;
std::optional<TpMode> parse_tp_mode(std::string_view name) noexcept;

/// Named coefficients the quadratic was assembled from. Only the ones that
/// belong to the family are populated; the rest stay zero.
struct NamedCoefficients {
  // t3
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
  // t4 (and corrected tp)
  double A1 = 0.0, A2 = 0.0;
  // tp
  double q1 = 0.0;
};

/// First-order MSE of a weighted family as a quadratic in the weights:
///   MSE(w) = c0 + c11 w1^2 + c22 w2^2 + c12 w1 w2 + c1 w1
struct WeightQuadratic {
  double c0 = 0.0;
  double c11 = 0.0;
  double c22 = 0.0;
  double c12 = 0.0;
  double c1 = 0.0;
  EstimatorId family = EstimatorId::T3;
  TpMode mode = TpMode::Corrected;
  NamedCoefficients named;
};

struct OptimalWeights {
  WeightPair weights;
  double min_mse = 0.0;
  /// c11 > 0 and 4 c11 c22 - c12^2 > 0: the stationary point is the global minimum.
  bool hessian_pd = false;
  /// hessian_pd and min_mse >= 0. A quadratic that dips below zero cannot be
  /// the MSE of any estimator, even if it is convex.
  bool nonnegative_minimum = false;
  TpMode mode = TpMode::Corrected;
};

/// One row of the comparison table.
struct MseBreakdown {
  EstimatorId estimator = EstimatorId::Mean;
  double mse_error_free = 0.0;
  double me_contribution = 0.0;
  double mse_total = 0.0;
  /// 100 * V_ym / mse_total. NaN when mse_total <= 0 (invalid quadratic).
  double pre = 0.0;
  double bias = 0.0;
  std::optional<WeightPair> weights_used;
  /// False when either optimization behind a weighted row was not a proper
  /// minimum (non-PD Hessian or negative value).
  bool valid_minimum = true;
};

/// 100 * mse_reference / mse. DomainError unless both are > 0.
double pre(double mse_reference, double mse);

/// Sample mean: error-free sigma2_y/n, contribution sigma2_u/n, PRE 100.
MseBreakdown analyze_mean(const PopulationParams& params);

/// Ratio estimator.
MseBreakdown analyze_t1(const PopulationParams& params);

/// Exponential ratio estimator. DomainError when mu_y == 0.
MseBreakdown analyze_t2(const PopulationParams& params);

/// Quadratic for family in {T3, T4, TP}. `mode` only matters for TP.
WeightQuadratic build_quadratic(EstimatorId family, const PopulationParams& params,
                                TpMode mode = TpMode::Corrected);

double mse_at_weights(const WeightQuadratic& q, const WeightPair& w) noexcept;

/// Gradient of mse_at_weights with respect to (w1, w2).
WeightPair mse_gradient(const WeightQuadratic& q, const WeightPair& w) noexcept;

/// Solves the 2x2 stationarity system
///   2 c11 w1 +   c12 w2 = -c1
///     c12 w1 + 2 c22 w2 = 0
/// Throws DegenerateQuadratic when 4 c11 c22 - c12^2 == 0. A non-PD Hessian is
/// reported, not thrown.
OptimalWeights optimize_weights(const WeightQuadratic& q);

/// First-order bias of a weighted family at given weights. TP uses the
/// published bias expression, whose trailing 3 V_xm R_m/(8 mu_x) term carries
/// no weight factor.
double bias_at_weights(EstimatorId family, const PopulationParams& params, const WeightPair& w);

/// TP bias with the trailing term scaled by w1, as a direct second-order
/// expansion of the estimator gives it.
double tp_bias_expanded(const PopulationParams& params, const WeightPair& w);

/// Weighted-family row: weights optimized on the full-error quadratic; the
/// error-free part re-optimizes the same family at sigma2_u = sigma2_v = 0.
MseBreakdown analyze_weighted(EstimatorId family, const PopulationParams& params,
                              TpMode mode = TpMode::Corrected);

/// Dispatches to the analyze_* routine for id.
MseBreakdown analyze(EstimatorId id, const PopulationParams& params,
                     TpMode mode = TpMode::Corrected);

}  // namespace mest
