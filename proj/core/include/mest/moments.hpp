#pragma once

#include <optional>

namespace mest {

/// Population constants of the additive measurement-error model
///   y_i = Y_i + u_i,  x_i = X_i + v_i
/// with (X, Y) the true values and u, v independent zero-mean errors.
/// All variances enter the theory with a 1/n factor (no finite-population
/// correction).
struct PopulationParams {
  double mu_y = 0.0;      ///< mean of the study variable
  double mu_x = 0.0;      ///< mean of the auxiliary variable, > 0
  double sigma2_y = 0.0;  ///< variance of true Y, > 0
  double sigma2_x = 0.0;  ///< variance of true X, > 0
  double rho = 0.0;       ///< correlation of X and Y, in [-1, 1]
  double sigma2_u = 0.0;  ///< measurement-error variance on y, >= 0
  double sigma2_v = 0.0;  ///< measurement-error variance on x, >= 0
  int n = 2;              ///< sample size, >= 2

  friend bool operator==(const PopulationParams&, const PopulationParams&) = default;
};

/// Throws InvalidParameter naming the first offending field.
void validate(const PopulationParams& params);

/// Same population with both error variances set to zero.
PopulationParams without_measurement_error(PopulationParams params);

/// Same population at a different sample size.
PopulationParams with_sample_size(PopulationParams params, int n);

/// Second moments of the sample-mean deviations k1 = ybar - mu_y and
/// k2 = xbar - mu_x, plus the ratios the estimator formulas use.
struct DerivedMoments {
  double v_ym = 0.0;   ///< E(k1^2) = (sigma2_y + sigma2_u)/n
  double v_xm = 0.0;   ///< E(k2^2) = (sigma2_x + sigma2_v)/n
  double v_yxm = 0.0;  ///< E(k1 k2) = rho sigma_y sigma_x / n
  double r_m = 0.0;    ///< mu_y / mu_x
  double c_x = 0.0;    ///< sigma_x / mu_x
  std::optional<double> c_y;  ///< sigma_y / |mu_y|; empty when mu_y == 0

  /// C_y, or DomainError when mu_y == 0.
  double require_c_y() const;
};

DerivedMoments derive_moments(const PopulationParams& params);

}  // namespace mest
