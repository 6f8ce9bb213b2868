#include "mest/theory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mest/error.hpp"

namespace mest {

std::string_view to_string(TpMode mode) noexcept {
  return mode == TpMode::Corrected ? "corrected" : "as-printed";
}

std::optional<TpMode> parse_tp_mode(std::string_view name) noexcept {
  if (name == "corrected") return TpMode::Corrected;
  if (name == "as-printed" || name == "as_printed") return TpMode::AsPrinted;
  return std::nullopt;
}

double pre(double mse_reference, double mse) {
  if (!(mse_reference > 0.0) || !(mse > 0.0)) {
    throw DomainError("PRE needs positive MSE values, got reference " +
                      std::to_string(mse_reference) + " and " + std::to_string(mse));
  }
  return 100.0 * mse_reference / mse;
}

MseBreakdown analyze_mean(const PopulationParams& params) {
  validate(params);
  const double n = params.n;
  MseBreakdown row;
  row.estimator = EstimatorId::Mean;
  row.mse_error_free = params.sigma2_y / n;
  row.me_contribution = params.sigma2_u / n;
  row.mse_total = row.mse_error_free + row.me_contribution;
  row.pre = 100.0;
  row.bias = 0.0;
  return row;
}

namespace {

double reference_mse(const PopulationParams& params) { return analyze_mean(params).mse_total; }

}  // namespace

MseBreakdown analyze_t1(const PopulationParams& params) {
  const DerivedMoments m = derive_moments(params);
  const double n = params.n;
  const double r = m.r_m;
  const double sd_prod = std::sqrt(params.sigma2_y * params.sigma2_x);

  MseBreakdown row;
  row.estimator = EstimatorId::T1;
  row.mse_error_free = (params.sigma2_y + r * r * params.sigma2_x - 2.0 * r * params.rho * sd_prod) / n;
  row.me_contribution = (r * r * params.sigma2_v + params.sigma2_u) / n;
  row.mse_total = row.mse_error_free + row.me_contribution;
  row.pre = pre(reference_mse(params), row.mse_total);
  row.bias = (r * m.v_xm - m.v_yxm) / params.mu_x;
  return row;
}

MseBreakdown analyze_t2(const PopulationParams& params) {
  const DerivedMoments m = derive_moments(params);
  const double n = params.n;
  const double r = m.r_m;
  // C_y is defined on |mu_y|; the ratio C_x/C_y carries the sign of mu_y so the
  // expression stays equal to V_y - R V_yx + R^2 V_x / 4 for negative means.
  const double cv_ratio = std::copysign(m.c_x / m.require_c_y(), params.mu_y);
  const double cv_half = cv_ratio / 4.0;

  MseBreakdown row;
  row.estimator = EstimatorId::T2;
  row.mse_error_free = (params.sigma2_y / n) * (1.0 - cv_ratio * (params.rho - cv_half));
  row.me_contribution = (r * r * params.sigma2_v / 4.0 + params.sigma2_u) / n;
  row.mse_total = row.mse_error_free + row.me_contribution;
  row.pre = pre(reference_mse(params), row.mse_total);
  row.bias = (0.375 * r * m.v_xm - 0.5 * m.v_yxm) / params.mu_x;
  return row;
}

WeightQuadratic build_quadratic(EstimatorId family, const PopulationParams& params, TpMode mode) {
  if (!is_weighted(family)) {
    throw InvalidParameter("family", std::string(to_string(family)) + " has no weight quadratic");
  }
  const DerivedMoments m = derive_moments(params);
  const double mu_y2 = params.mu_y * params.mu_y;
  const double r = m.r_m;

  WeightQuadratic q;
  q.family = family;
  q.mode = family == EstimatorId::TP ? mode : TpMode::Corrected;
  q.c0 = mu_y2;
  q.c1 = -2.0 * mu_y2;

  if (family == EstimatorId::T3) {
    NamedCoefficients& k = q.named;
    k.a1 = m.v_ym;
    k.a2 = m.v_xm;
    k.a3 = m.v_yxm;
    k.b1 = mu_y2 + k.a1;
    k.b2 = -k.a3;
    k.b3 = k.a2;
    k.b4 = mu_y2;
    q.c11 = k.b1;
    q.c22 = k.b3;
    q.c12 = 2.0 * k.b2;
    q.c1 = -2.0 * k.b4;
    return q;
  }

  NamedCoefficients& k = q.named;
  k.A1 = mu_y2 + m.v_ym - r * m.v_yxm + r * r * m.v_xm / 4.0;
  k.A2 = r * m.v_xm - 2.0 * m.v_yxm;
  q.c11 = k.A1;
  q.c22 = m.v_xm;
  q.c12 = k.A2;
  if (family == EstimatorId::TP) {
    k.q1 = k.A1;
    if (q.mode == TpMode::AsPrinted) q.c12 = -2.0 * m.v_yxm;
  }
  return q;
}

double mse_at_weights(const WeightQuadratic& q, const WeightPair& w) noexcept {
  return q.c0 + q.c11 * w.w1 * w.w1 + q.c22 * w.w2 * w.w2 + q.c12 * w.w1 * w.w2 + q.c1 * w.w1;
}

WeightPair mse_gradient(const WeightQuadratic& q, const WeightPair& w) noexcept {
  return {2.0 * q.c11 * w.w1 + q.c12 * w.w2 + q.c1, q.c12 * w.w1 + 2.0 * q.c22 * w.w2};
}

OptimalWeights optimize_weights(const WeightQuadratic& q) {
  const double det = 4.0 * q.c11 * q.c22 - q.c12 * q.c12;
  const double scale = 4.0 * std::abs(q.c11 * q.c22) + q.c12 * q.c12;
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale) {
    throw DegenerateQuadratic("stationarity system is singular (4 c11 c22 - c12^2 = " +
                              std::to_string(det) + ")");
  }
  OptimalWeights out;
  out.mode = q.mode;
  // Cramer's rule on [[2 c11, c12], [c12, 2 c22]] w = [-c1, 0].
  out.weights.w1 = -2.0 * q.c22 * q.c1 / det;
  out.weights.w2 = q.c12 * q.c1 / det;
  // At a stationary point the quadratic part equals -c1 w1 / 2.
  out.min_mse = q.c0 + q.c1 * out.weights.w1 / 2.0;
  out.hessian_pd = q.c11 > 0.0 && det > 0.0;
  out.nonnegative_minimum = out.hessian_pd && out.min_mse >= 0.0;
  return out;
}

double bias_at_weights(EstimatorId family, const PopulationParams& params, const WeightPair& w) {
  const DerivedMoments m = derive_moments(params);
  const double mu_x = params.mu_x;
  const double r = m.r_m;
  switch (family) {
    case EstimatorId::T3:
      return params.mu_y * (w.w1 - 1.0);
    case EstimatorId::T4:
      return (3.0 * r * w.w1 * m.v_xm / 8.0 - w.w1 * m.v_yxm / 2.0 + w.w2 * m.v_xm / 2.0) / mu_x;
    case EstimatorId::TP:
      return (w.w1 - 1.0) * params.mu_y + 9.0 * w.w1 * r * m.v_xm / (8.0 * mu_x) -
             w.w1 * m.v_yxm / (2.0 * mu_x) + w.w2 * m.v_xm / (2.0 * mu_x) +
             3.0 * m.v_xm * r / (8.0 * mu_x);
    default:
      throw InvalidParameter("family", std::string(to_string(family)) + " is not a weighted family");
  }
}

double tp_bias_expanded(const PopulationParams& params, const WeightPair& w) {
  const DerivedMoments m = derive_moments(params);
  const double trailing = 3.0 * m.v_xm * m.r_m / (8.0 * params.mu_x);
  return bias_at_weights(EstimatorId::TP, params, w) + (w.w1 - 1.0) * trailing;
}

MseBreakdown analyze_weighted(EstimatorId family, const PopulationParams& params, TpMode mode) {
  const OptimalWeights full = optimize_weights(build_quadratic(family, params, mode));
  const OptimalWeights clean =
      optimize_weights(build_quadratic(family, without_measurement_error(params), mode));

  MseBreakdown row;
  row.estimator = family;
  row.mse_error_free = clean.min_mse;
  row.me_contribution = full.min_mse - clean.min_mse;
  row.mse_total = row.mse_error_free + row.me_contribution;
  row.valid_minimum = full.nonnegative_minimum && clean.nonnegative_minimum;
  row.pre = row.mse_total > 0.0 ? pre(reference_mse(params), row.mse_total)
                                : std::numeric_limits<double>::quiet_NaN();
  row.bias = bias_at_weights(family, params, full.weights);
  row.weights_used = full.weights;
  return row;
}

MseBreakdown analyze(EstimatorId id, const PopulationParams& params, TpMode mode) {
  switch (id) {
    case EstimatorId::Mean: return analyze_mean(params);
    case EstimatorId::T1: return analyze_t1(params);
    case EstimatorId::T2: return analyze_t2(params);
    default: return analyze_weighted(id, params, mode);
  }
}

}  // namespace mest
