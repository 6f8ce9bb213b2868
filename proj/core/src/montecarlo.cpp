#include "mest/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "mest/error.hpp"

namespace mest {

namespace {

// Independent engine per (root seed, replication index), so the draw of a
// replication never depends on which worker ran it or on what ran before.
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

unsigned effective_workers(unsigned requested, std::size_t jobs) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

namespace {

// Calls fn(X, Y, x, y) for each of the n units of a replication.
template <typename Fn>
void for_each_unit(const PopulationModel& model, std::uint64_t seed, std::uint64_t index, Fn&& fn) {
  const PopulationParams& p = model.params;
  const double sd_y = std::sqrt(p.sigma2_y);
  const double sd_x = std::sqrt(p.sigma2_x);
  const double sd_u = std::sqrt(p.sigma2_u);
  const double sd_v = std::sqrt(p.sigma2_v);
  const double residual = std::sqrt(std::max(0.0, 1.0 - p.rho * p.rho));

  auto engine = replication_engine(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < p.n; ++i) {
    const double z1 = normal(engine);
    const double z2 = normal(engine);
    const double z3 = normal(engine);
    const double z4 = normal(engine);
    const double true_y = p.mu_y + sd_y * z1;
    const double true_x = p.mu_x + sd_x * (p.rho * z1 + residual * z2);
    fn(true_x, true_y, true_x + sd_v * z4, true_y + sd_u * z3);
  }
}

}  // namespace

ReplicationDraw draw_replication_detail(const PopulationModel& model, std::uint64_t seed,
                                        std::uint64_t index) {
  double sum_true_y = 0.0, sum_true_x = 0.0;
  double sum_obs_y = 0.0, sum_obs_x = 0.0;
  for_each_unit(model, seed, index, [&](double X, double Y, double x, double y) {
    sum_true_x += X;
    sum_true_y += Y;
    sum_obs_x += x;
    sum_obs_y += y;
  });

  const int count = model.params.n;
  const double n = count;
  ReplicationDraw draw;
  draw.truth = {sum_true_y / n, sum_true_x / n, count};
  draw.observed = {sum_obs_y / n, sum_obs_x / n, count};
  draw.rejected = !(draw.observed.xbar > 0.0);
  return draw;
}

std::vector<UnitDraw> draw_units(const PopulationModel& model, std::uint64_t seed, std::uint64_t index) {
  std::vector<UnitDraw> units;
  units.reserve(static_cast<std::size_t>(std::max(model.params.n, 0)));
  for_each_unit(model, seed, index,
                [&](double X, double Y, double x, double y) { units.push_back({X, Y, x, y}); });
  return units;
}

std::optional<SampleSummary> draw_replication(const PopulationModel& model, std::uint64_t seed,
                                              std::uint64_t index) {
  ReplicationDraw draw = draw_replication_detail(model, seed, index);
  if (draw.rejected) return std::nullopt;
  return draw.observed;
}

std::optional<WeightPair> resolve_weights(const PopulationModel& model,
                                          const SimulationConfig& config) {
  validate(model.params);
  if (config.replications < 1) throw InvalidParameter("replications", "must be >= 1");

  if (!is_weighted(config.estimator)) {
    if (config.weights) {
      throw InvalidParameter("weights", std::string(to_string(config.estimator)) +
                                            " takes no weights");
    }
    return std::nullopt;
  }
  if (config.weight_policy == WeightPolicy::OracleOptimal) {
    return optimize_weights(build_quadratic(config.estimator, model.params, config.tp_mode)).weights;
  }
  if (!config.weights) {
    throw InvalidParameter("weights", std::string(to_string(config.estimator)) +
                                          " needs fixed weights or the oracle-optimal policy");
  }
  if (!std::isfinite(config.weights->w1) || !std::isfinite(config.weights->w2)) {
    throw InvalidParameter("weights", "must be finite");
  }
  return config.weights;
}

std::vector<std::optional<double>> replication_estimates(const PopulationModel& model,
                                                         const SimulationConfig& config) {
  const std::optional<WeightPair> weights = resolve_weights(model, config);
  const std::size_t reps = config.replications;
  std::vector<std::optional<double>> out(reps);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (auto s = draw_replication(model, config.seed, i)) {
        out[i] = evaluate(config.estimator, *s, model.params.mu_x, weights);
      }
    }
  };

  const unsigned workers = effective_workers(config.workers, reps);
  if (workers == 1) {
    run_range(0, reps);
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (reps + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(reps, w * chunk);
      const std::size_t end = std::min(reps, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

SimulationResult run_simulation(const PopulationModel& model, const SimulationConfig& config) {
  const auto estimates = replication_estimates(model, config);
  const double mu_y = model.params.mu_y;

  // Two passes in replication order; the result is independent of how the
  // estimates were produced.
  SimulationResult result;
  result.weights_used = resolve_weights(model, config);
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& e : estimates) {
    if (!e) {
      ++result.rejected_replications;
      continue;
    }
    ++result.replications_used;
    const double err = *e - mu_y;
    sum += *e;
    sum_sq += err * err;
  }
  if (result.replications_used == 0) {
    throw SimulationFailure("all " + std::to_string(estimates.size()) +
                            " replications rejected (xbar <= 0)");
  }
  const double count = static_cast<double>(result.replications_used);
  result.mean_estimate = sum / count;
  result.empirical_bias = result.mean_estimate - mu_y;
  result.empirical_mse = sum_sq / count;

  if (result.replications_used > 1) {
    double ss = 0.0;
    for (const auto& e : estimates) {
      if (!e) continue;
      const double err = *e - mu_y;
      const double d = err * err - result.empirical_mse;
      ss += d * d;
    }
    result.mc_standard_error_of_mse = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  return result;
}

TheoryVerdict compare_with_theory(const SimulationResult& result, double theoretical_mse, double k) {
  if (!(k > 0.0)) throw InvalidParameter("k", "must be > 0");
  TheoryVerdict v;
  v.k = k;
  const double diff = result.empirical_mse - theoretical_mse;
  if (result.mc_standard_error_of_mse == 0.0) {
    if (diff != 0.0) {
      throw DegenerateComparison("zero Monte Carlo standard error with empirical MSE " +
                                 std::to_string(result.empirical_mse) + " != theory " +
                                 std::to_string(theoretical_mse));
    }
    v.z = 0.0;
  } else {
    v.z = diff / result.mc_standard_error_of_mse;
  }
  v.pass = std::abs(v.z) <= k;
  return v;
}

TheoryVerdict compare_with_theory(const SimulationResult& result, const MseBreakdown& breakdown,
                                  double k) {
  return compare_with_theory(result, breakdown.mse_total, k);
}

}  // namespace mest
