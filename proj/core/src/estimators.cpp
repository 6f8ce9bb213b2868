#include "mest/estimators.hpp"

#include <cmath>
#include <string>

#include "mest/error.hpp"

namespace mest {

namespace {

void require_positive_xbar(const SampleSummary& s) {
  if (!(s.xbar > 0.0)) {
    throw DomainError("xbar must be > 0, got " + std::to_string(s.xbar));
  }
}

// exp((mu_x - xbar)/(mu_x + xbar))
double shrink_factor(double xbar, double mu_x) { return std::exp((mu_x - xbar) / (mu_x + xbar)); }

}  // namespace

std::string_view to_string(EstimatorId id) noexcept {
  switch (id) {
    case EstimatorId::Mean: return "mean";
    case EstimatorId::T1: return "t1";
    case EstimatorId::T2: return "t2";
    case EstimatorId::T3: return "t3";
    case EstimatorId::T4: return "t4";
    case EstimatorId::TP: return "tp";
  }
  return "?";
}

std::optional<EstimatorId> parse_estimator_id(std::string_view name) noexcept {
  if (name == "ybar") return EstimatorId::Mean;
  for (EstimatorId id : kAllEstimators) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

double ratio_point(const SampleSummary& s, double mu_x) {
  require_positive_xbar(s);
  return s.ybar * mu_x / s.xbar;
}

double exp_ratio_point(const SampleSummary& s, double mu_x) {
  require_positive_xbar(s);
  return s.ybar * shrink_factor(s.xbar, mu_x);
}

double regression_point(const SampleSummary& s, double mu_x, const WeightPair& w) {
  return w.w1 * s.ybar + w.w2 * (mu_x - s.xbar);
}

double grover_kaur_point(const SampleSummary& s, double mu_x, const WeightPair& w) {
  require_positive_xbar(s);
  return regression_point(s, mu_x, w) * shrink_factor(s.xbar, mu_x);
}

double proposed_point(const SampleSummary& s, double mu_x, const WeightPair& w) {
  require_positive_xbar(s);
  const double shrink = shrink_factor(s.xbar, mu_x);
  const double grow = std::exp((s.xbar - mu_x) / (s.xbar + mu_x));
  const double blend = (s.xbar / mu_x) * grow + (mu_x / s.xbar) * shrink;
  return (w.w1 * (s.ybar / 2.0) * blend + w.w2 * (mu_x - s.xbar)) * shrink;
}

double evaluate(EstimatorId id, const SampleSummary& s, double mu_x,
                const std::optional<WeightPair>& w) {
  if (is_weighted(id) && !w) {
    throw InvalidParameter("weights", std::string(to_string(id)) + " requires a weight pair");
  }
  switch (id) {
    case EstimatorId::Mean: return s.ybar;
    case EstimatorId::T1: return ratio_point(s, mu_x);
    case EstimatorId::T2: return exp_ratio_point(s, mu_x);
    case EstimatorId::T3: return regression_point(s, mu_x, *w);
    case EstimatorId::T4: return grover_kaur_point(s, mu_x, *w);
    case EstimatorId::TP: return proposed_point(s, mu_x, *w);
  }
  throw DomainError("unknown estimator");
}

}  // namespace mest
