#pragma once

#include <optional>
#include <string_view>

#include "mest/moments.hpp"

namespace mest {

enum class EstimatorId { Mean, T1, T2, T3, T4, TP };

inline constexpr EstimatorId kAllEstimators[] = {EstimatorId::Mean, EstimatorId::T1,
                                                 EstimatorId::T2,   EstimatorId::T3,
                                                 EstimatorId::T4,   EstimatorId::TP};

/// True for the families carrying a free weight pair (t3, t4, tp).
constexpr bool is_weighted(EstimatorId id) noexcept {
  return id == EstimatorId::T3 || id == EstimatorId::T4 || id == EstimatorId::TP;
}

/// "mean", "t1", ..., "tp".
std::string_view to_string(EstimatorId id) noexcept;

/// Inverse of to_string; also accepts "ybar" for the sample mean.
std::optional<EstimatorId> parse_estimator_id(std::string_view name) noexcept;

/// Observed sample means of one draw.
struct SampleSummary {
  double ybar = 0.0;
  double xbar = 0.0;
  int n = 1;

  double k1(const PopulationParams& params) const noexcept { return ybar - params.mu_y; }
  double k2(const PopulationParams& params) const noexcept { return xbar - params.mu_x; }

  friend bool operator==(const SampleSummary&, const SampleSummary&) = default;
};

/// Free constants of a weighted family: (omega1, omega2) for t3,
/// (m1, m2) for t4, (m11, m12) for tp.
struct WeightPair {
  double w1 = 1.0;
  double w2 = 0.0;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

// Point estimates. Every form that divides by xbar (or xbar + mu_x) throws
// DomainError when xbar <= 0.

/// ybar * mu_x / xbar
double ratio_point(const SampleSummary& sample, double mu_x);

/// ybar * exp((mu_x - xbar)/(mu_x + xbar))
double exp_ratio_point(const SampleSummary& sample, double mu_x);

/// w1 ybar + w2 (mu_x - xbar)
double regression_point(const SampleSummary& sample, double mu_x, const WeightPair& w);

/// [w1 ybar + w2 (mu_x - xbar)] exp((mu_x - xbar)/(mu_x + xbar))
double grover_kaur_point(const SampleSummary& sample, double mu_x, const WeightPair& w);

/// Ratio/product-exponential average blended with a difference term:
///   { w1 (ybar/2) [ (xbar/mu_x) e^{+d} + (mu_x/xbar) e^{-d} ] + w2 (mu_x - xbar) } e^{-d}
/// where d = (xbar - mu_x)/(xbar + mu_x).
double proposed_point(const SampleSummary& sample, double mu_x, const WeightPair& w);

/// Dispatch on id. Weighted families require `w`; unweighted ones ignore it.
double evaluate(EstimatorId id, const SampleSummary& sample, double mu_x,
                const std::optional<WeightPair>& w = std::nullopt);

}  // namespace mest
