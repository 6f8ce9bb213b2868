#include "mest/moments.hpp"

#include <cmath>

#include "mest/error.hpp"

namespace mest {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw InvalidParameter(field, what);
}

}  // namespace

void validate(const PopulationParams& p) {
  require(std::isfinite(p.mu_y), "mu_y", "must be finite");
  require(std::isfinite(p.mu_x) && p.mu_x > 0.0, "mu_x", "must be finite and > 0");
  require(std::isfinite(p.sigma2_y) && p.sigma2_y > 0.0, "sigma2_y", "must be finite and > 0");
  require(std::isfinite(p.sigma2_x) && p.sigma2_x > 0.0, "sigma2_x", "must be finite and > 0");
  require(std::isfinite(p.rho) && p.rho >= -1.0 && p.rho <= 1.0, "rho", "must lie in [-1, 1]");
  require(std::isfinite(p.sigma2_u) && p.sigma2_u >= 0.0, "sigma2_u", "must be finite and >= 0");
  require(std::isfinite(p.sigma2_v) && p.sigma2_v >= 0.0, "sigma2_v", "must be finite and >= 0");
  require(p.n >= 2, "n", "must be >= 2");
}

PopulationParams without_measurement_error(PopulationParams params) {
  params.sigma2_u = 0.0;
  params.sigma2_v = 0.0;
  return params;
}

PopulationParams with_sample_size(PopulationParams params, int n) {
  params.n = n;
  return params;
}

double DerivedMoments::require_c_y() const {
  if (!c_y) throw DomainError("C_y is undefined for mu_y = 0");
  return *c_y;
}

DerivedMoments derive_moments(const PopulationParams& p) {
  validate(p);
  const double n = p.n;
  DerivedMoments m;
  m.v_ym = (p.sigma2_y + p.sigma2_u) / n;
  m.v_xm = (p.sigma2_x + p.sigma2_v) / n;
  m.v_yxm = p.rho * std::sqrt(p.sigma2_y * p.sigma2_x) / n;
  m.r_m = p.mu_y / p.mu_x;
  m.c_x = std::sqrt(p.sigma2_x) / p.mu_x;
  if (p.mu_y != 0.0) m.c_y = std::sqrt(p.sigma2_y) / std::abs(p.mu_y);
  return m;
}

}  // namespace mest
