#include "mest/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mest/error.hpp"

namespace mest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

nlohmann::json params_json(const PopulationParams& p) {
  return {{"mu_y", p.mu_y},         {"mu_x", p.mu_x},         {"sigma2_y", p.sigma2_y},
          {"sigma2_x", p.sigma2_x}, {"rho", p.rho},           {"sigma2_u", p.sigma2_u},
          {"sigma2_v", p.sigma2_v}, {"n", p.n}};
}

bool readings_disagree(const TpErrata& e, double tolerance) {
  if (!std::isfinite(e.as_printed_min)) return true;
  const double scale = std::max(std::abs(e.corrected_min), std::abs(e.as_printed_min));
  return std::abs(e.corrected_min - e.as_printed_min) > tolerance * scale;
}

std::string render_csv(const ReportTable& table) {
  std::string out = "estimator,mse_error_free,me_contribution,mse_total,pre\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{},{}\n", to_string(r.estimator), fixed3(r.mse_error_free),
                       fixed3(r.me_contribution), fixed3(r.mse_total), fixed3(r.pre));
  }
  return out;
}

std::string render_json(const ReportTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row = {{"estimator", to_string(r.estimator)},
                          {"mse_error_free", r.mse_error_free},
                          {"me_contribution", r.me_contribution},
                          {"mse_total", r.mse_total},
                          {"pre", r.pre},
                          {"bias", r.bias},
                          {"valid_minimum", r.valid_minimum}};
    row["weights_used"] = r.weights_used
                              ? nlohmann::json{{"w1", r.weights_used->w1}, {"w2", r.weights_used->w2}}
                              : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }

  const ReportMetadata& m = table.metadata;
  nlohmann::json meta = {{"tp_mode", to_string(m.mode)},
                         {"tolerances",
                          {{"reproduction_relative", m.reproduction_tolerance},
                           {"identity_relative", m.identity_tolerance}}}};
  meta["params"] = m.params ? params_json(*m.params) : nlohmann::json(nullptr);
  meta["divisor"] = m.divisor ? nlohmann::json(to_string(*m.divisor)) : nlohmann::json(nullptr);
  if (m.errata) {
    const TpErrata& e = *m.errata;
    meta["tp_errata"] = {{"corrected_min", e.corrected_min},
                         {"as_printed_min", e.as_printed_min},
                         {"as_printed_hessian_pd", e.as_printed_hessian_pd},
                         {"as_printed_nonnegative", e.as_printed_nonnegative},
                         {"bias_printed", e.bias_printed},
                         {"bias_expanded", e.bias_expanded}};
    meta["tp_errata"]["reference_min"] =
        e.reference_min ? nlohmann::json(*e.reference_min) : nlohmann::json(nullptr);
  }
  return nlohmann::json{{"metadata", meta}, {"rows", rows}}.dump(2) + "\n";
}

std::string render_text(const ReportTable& table) {
  const ReportMetadata& m = table.metadata;
  std::string out;
  if (m.params) {
    const PopulationParams& p = *m.params;
    out += fmt::format(
        "params: mu_y={} mu_x={} sigma2_y={} sigma2_x={} rho={} sigma2_u={} sigma2_v={} n={}\n",
        p.mu_y, p.mu_x, p.sigma2_y, p.sigma2_x, p.rho, p.sigma2_u, p.sigma2_v, p.n);
    out += fmt::format("tp mode: {}", to_string(m.mode));
    if (m.divisor) out += fmt::format(", variance divisor: {}", to_string(*m.divisor));
    out += "\n\n";
  }

  out += fmt::format("{:<10}{:>16}{:>17}{:>12}{:>12}\n", "estimator", "mse_error_free",
                     "me_contribution", "mse_total", "pre");
  for (const auto& r : table.rows) {
    out += fmt::format("{:<10}{:>16}{:>17}{:>12}{:>12}{}\n", to_string(r.estimator),
                       fixed3(r.mse_error_free), fixed3(r.me_contribution), fixed3(r.mse_total),
                       fixed3(r.pre), r.valid_minimum ? "" : "  (not a valid minimum)");
  }

  if (m.errata && readings_disagree(*m.errata, m.identity_tolerance)) {
    const TpErrata& e = *m.errata;
    out += "\nnote: the two tp readings disagree.\n";
    out += fmt::format("  corrected first-order minimum (t4 form): {:.3f}\n", e.corrected_min);
    out += fmt::format("  literal tp quadratic stationary value:   {:.3f} (Hessian PD: {}, nonnegative: {})\n",
                       e.as_printed_min, e.as_printed_hessian_pd ? "yes" : "no",
                       e.as_printed_nonnegative ? "yes" : "no");
    if (e.reference_min) {
      out += fmt::format("  printed tp minimum {:.3f} is reproduced by neither reading\n", *e.reference_min);
    }
    out += fmt::format("  tp bias at corrected weights: {:.5f} (printed form), {:.5f} (trailing term weighted)\n",
                       e.bias_printed, e.bias_expanded);
  }
  return out;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  return std::nullopt;
}

TpErrata compute_tp_errata(const PopulationParams& params, std::optional<double> reference_min) {
  TpErrata e;
  e.reference_min = reference_min;
  const OptimalWeights corrected =
      optimize_weights(build_quadratic(EstimatorId::TP, params, TpMode::Corrected));
  e.corrected_min = corrected.min_mse;
  e.bias_printed = bias_at_weights(EstimatorId::TP, params, corrected.weights);
  e.bias_expanded = tp_bias_expanded(params, corrected.weights);
  try {
    const OptimalWeights printed =
        optimize_weights(build_quadratic(EstimatorId::TP, params, TpMode::AsPrinted));
    e.as_printed_min = printed.min_mse;
    e.as_printed_hessian_pd = printed.hessian_pd;
    e.as_printed_nonnegative = printed.nonnegative_minimum;
  } catch (const DegenerateQuadratic&) {
    e.as_printed_min = kNaN;
  }
  return e;
}

ReportTable build_report(const PopulationParams& params, TpMode mode,
                         std::optional<double> reference_tp_min) {
  ReportTable table;
  for (EstimatorId id : kAllEstimators) table.rows.push_back(analyze(id, params, mode));
  table.metadata.params = params;
  table.metadata.mode = mode;
  table.metadata.errata = compute_tp_errata(params, reference_tp_min);
  return table;
}

std::string render_report(const ReportTable& table, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return render_csv(table);
    case ReportFormat::Json: return render_json(table);
    case ReportFormat::Text: return render_text(table);
  }
  return {};
}

}  // namespace mest
