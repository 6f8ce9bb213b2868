#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mest/dataset.hpp"
#include "mest/error.hpp"
#include "mest/montecarlo.hpp"
#include "mest/param_file.hpp"
#include "mest/report.hpp"
#include "mest/theory.hpp"

namespace mest::cli {

namespace {

struct AnalyzeOptions {
  std::string params_path;
  std::string data_path;
  std::string divisor = "n-1";
  std::string tp_mode = "corrected";
  std::string format = "text";
  std::string out_path;
  std::string reference = fmt::format("{}", kPublishedTpMinimum);
};

struct SimulateOptions {
  std::string params_path;
  std::string estimator;
  std::string weights;
  bool oracle_weights = false;
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  int n_override = 0;
  std::string tp_mode = "corrected";
  unsigned workers = 0;
  double k = 3.0;
  std::string format = "text";
};

struct WeightsOptions {
  std::string params_path;
  std::string family;
  std::string tp_mode = "corrected";
};

TpMode require_tp_mode(const std::string& text) {
  if (auto m = parse_tp_mode(text)) return *m;
  throw InvalidParameter("--tp-mode", "expected corrected or as-printed, got '" + text + "'");
}

WeightPair parse_weight_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidParameter("--weights", "expected W1,W2");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    WeightPair w{std::stod(a, &used1), std::stod(b, &used2)};
    if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing");
    return w;
  } catch (const std::exception&) {
    throw InvalidParameter("--weights", "expected W1,W2, got '" + text + "'");
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + out_path + "'");
  file << text;
}

int do_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const TpMode mode = require_tp_mode(o.tp_mode);
  const auto format = parse_report_format(o.format);
  if (!format) throw InvalidParameter("--format", "expected csv, json or text");

  std::optional<double> reference;
  if (o.reference != "none") {
    try {
      reference = std::stod(o.reference);
    } catch (const std::exception&) {
      throw InvalidParameter("--reference-tp-mse", "expected a number or 'none'");
    }
  }

  PopulationParams params;
  std::optional<VarianceDivisor> divisor;
  if (!o.params_path.empty()) {
    params = load_params(o.params_path);
  } else {
    divisor = parse_divisor(o.divisor);
    if (!divisor) throw InvalidParameter("--divisor", "expected n or n-1");
    params = estimate_params(load_dataset(o.data_path), *divisor);
  }

  ReportTable table = build_report(params, mode, reference);
  table.metadata.divisor = divisor;
  emit(render_report(table, *format), o.out_path, out);
  return kSuccess;
}

int do_simulate(const SimulateOptions& o, std::ostream& out) {
  const auto id = parse_estimator_id(o.estimator);
  if (!id) throw InvalidParameter("--estimator", "unknown estimator '" + o.estimator + "'");

  PopulationModel model{load_params(o.params_path)};
  if (o.n_override != 0) model.params = with_sample_size(model.params, o.n_override);

  SimulationConfig config;
  config.replications = o.reps;
  config.seed = o.seed;
  config.estimator = *id;
  config.tp_mode = require_tp_mode(o.tp_mode);
  config.workers = o.workers;
  if (o.oracle_weights) {
    config.weight_policy = WeightPolicy::OracleOptimal;
  } else if (!o.weights.empty()) {
    config.weights = parse_weight_pair(o.weights);
  }

  const SimulationResult result = run_simulation(model, config);

  // Theory at the weights actually simulated.
  double theory = 0.0;
  if (result.weights_used) {
    theory = mse_at_weights(build_quadratic(*id, model.params, config.tp_mode), *result.weights_used);
  } else {
    theory = analyze(*id, model.params).mse_total;
  }
  const TheoryVerdict verdict = compare_with_theory(result, theory, o.k);

  if (o.format == "json") {
    nlohmann::json j = {{"estimator", to_string(*id)},
                        {"n", model.params.n},
                        {"seed", o.seed},
                        {"replications_used", result.replications_used},
                        {"rejected_replications", result.rejected_replications},
                        {"mean_estimate", result.mean_estimate},
                        {"empirical_bias", result.empirical_bias},
                        {"empirical_mse", result.empirical_mse},
                        {"mc_standard_error_of_mse", result.mc_standard_error_of_mse},
                        {"theory_mse", theory},
                        {"z", verdict.z},
                        {"k", verdict.k},
                        {"pass", verdict.pass}};
    j["weights_used"] = result.weights_used
                            ? nlohmann::json{{"w1", result.weights_used->w1}, {"w2", result.weights_used->w2}}
                            : nlohmann::json(nullptr);
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  if (o.format != "text") throw InvalidParameter("--format", "expected text or json");

  out << fmt::format("estimator:         {}\n", to_string(*id));
  out << fmt::format("n:                 {}\n", model.params.n);
  out << fmt::format("replications:      {} used, {} rejected\n", result.replications_used,
                     result.rejected_replications);
  out << fmt::format("seed:              {}\n", o.seed);
  if (result.weights_used) {
    out << fmt::format("weights:           {:.8g}, {:.8g}\n", result.weights_used->w1,
                       result.weights_used->w2);
  }
  out << fmt::format("mean estimate:     {:.6f}\n", result.mean_estimate);
  out << fmt::format("empirical bias:    {:.6f}\n", result.empirical_bias);
  out << fmt::format("empirical MSE:     {:.6f} +/- {:.6f}\n", result.empirical_mse,
                     result.mc_standard_error_of_mse);
  out << fmt::format("first-order MSE:   {:.6f}\n", theory);
  out << fmt::format("z:                 {:.3f} ({} at k = {})\n", verdict.z,
                     verdict.pass ? "within" : "outside", verdict.k);
  return kSuccess;
}

int do_weights(const WeightsOptions& o, std::ostream& out) {
  const auto id = parse_estimator_id(o.family);
  if (!id || !is_weighted(*id)) throw InvalidParameter("--family", "expected t3, t4 or tp");
  const PopulationParams params = load_params(o.params_path);
  const WeightQuadratic q = build_quadratic(*id, params, require_tp_mode(o.tp_mode));
  const OptimalWeights opt = optimize_weights(q);

  out << fmt::format("family:              {}\n", to_string(*id));
  if (*id == EstimatorId::TP) out << fmt::format("tp mode:             {}\n", to_string(q.mode));
  out << fmt::format("quadratic:           c0={:.10g} c11={:.10g} c22={:.10g} c12={:.10g} c1={:.10g}\n",
                     q.c0, q.c11, q.c22, q.c12, q.c1);
  out << fmt::format("w1:                  {:.10g}\n", opt.weights.w1);
  out << fmt::format("w2:                  {:.10g}\n", opt.weights.w2);
  out << fmt::format("min_mse:             {:.6f}\n", opt.min_mse);
  out << fmt::format("hessian_pd:          {}\n", opt.hessian_pd);
  out << fmt::format("nonnegative_minimum: {}\n", opt.nonnegative_minimum);
  out << fmt::format("bias at optimum:     {:.6f}\n", bias_at_weights(*id, params, opt.weights));
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Population-mean estimators under additive measurement error"};
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "MSE decomposition and PRE table for all estimators");
  auto* params_opt = analyze->add_option("--params", ao.params_path, "key=value parameter file");
  auto* data_opt = analyze->add_option("--data", ao.data_path, "CSV with X,Y,x,y columns");
  params_opt->excludes(data_opt);
  analyze->add_option("--divisor", ao.divisor, "variance divisor for --data (n | n-1)")
      ->check(CLI::IsMember({"n", "n-1"}));
  analyze->add_option("--tp-mode", ao.tp_mode, "corrected | as-printed")
      ->check(CLI::IsMember({"corrected", "as-printed"}));
  analyze->add_option("--format", ao.format, "csv | json | text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  analyze->add_option("--out", ao.out_path, "write the report here instead of stdout");
  analyze->add_option("--reference-tp-mse", ao.reference,
                      "externally reported tp minimum for the errata note, or 'none'");

  SimulateOptions so;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of one estimator");
  simulate->add_option("--params", so.params_path, "key=value parameter file")->required();
  simulate->add_option("--estimator", so.estimator, "mean | t1 | t2 | t3 | t4 | tp")->required();
  auto* weights_opt = simulate->add_option("--weights", so.weights, "fixed weights W1,W2");
  auto* oracle_opt = simulate->add_flag("--oracle-weights", so.oracle_weights,
                                        "use first-order optimal weights from the true params");
  weights_opt->excludes(oracle_opt);
  simulate->add_option("--reps", so.reps, "replications")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", so.seed, "root seed")->required();
  simulate->add_option("--n-override", so.n_override, "simulate at this sample size")
      ->check(CLI::Range(2, 1 << 30));
  simulate->add_option("--tp-mode", so.tp_mode, "quadratic used for tp oracle weights")
      ->check(CLI::IsMember({"corrected", "as-printed"}));
  simulate->add_option("--workers", so.workers, "worker threads (0 = all cores)");
  simulate->add_option("--k", so.k, "pass threshold in Monte Carlo standard errors");
  simulate->add_option("--format", so.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  WeightsOptions wo;
  auto* weights = app.add_subcommand("weights", "Optimal weights of a weighted family");
  weights->add_option("--params", wo.params_path, "key=value parameter file")->required();
  weights->add_option("--family", wo.family, "t3 | t4 | tp")
      ->required()
      ->check(CLI::IsMember({"t3", "t4", "tp"}));
  weights->add_option("--tp-mode", wo.tp_mode, "corrected | as-printed")
      ->check(CLI::IsMember({"corrected", "as-printed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*analyze) {
      if (ao.params_path.empty() && ao.data_path.empty()) {
        throw InvalidParameter("analyze", "one of --params or --data is required");
      }
      return do_analyze(ao, out);
    }
    if (*simulate) return do_simulate(so, out);
    return do_weights(wo, out);
  } catch (const DegenerateQuadratic& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerateMath;
  } catch (const SimulationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationFailure;
  } catch (const DegenerateComparison& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace mest::cli
