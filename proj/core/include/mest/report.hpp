#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mest/dataset.hpp"
#include "mest/moments.hpp"
#include "mest/theory.hpp"

namespace mest {

/// tp minimum MSE reported in the published empirical study.
inline constexpr double kPublishedTpMinimum = 12.357;

/// Both tp readings side by side, for the errata footnote.
struct TpErrata {
  double corrected_min = 0.0;     ///< t4-form first-order minimum
  double as_printed_min = 0.0;    ///< stationary value of the literal tp quadratic
  bool as_printed_hessian_pd = false;
  bool as_printed_nonnegative = false;
  double bias_printed = 0.0;      ///< tp bias at the corrected weights, published form
  double bias_expanded = 0.0;     ///< same, with the trailing term weighted
  std::optional<double> reference_min;  ///< externally reported value to compare against
};

struct ReportMetadata {
  std::optional<PopulationParams> params;
  TpMode mode = TpMode::Corrected;
  std::optional<VarianceDivisor> divisor;  ///< set when params were estimated from data
  double reproduction_tolerance = 0.0025;  ///< relative, against published values
  double identity_tolerance = 1e-12;
  std::optional<TpErrata> errata;
};

struct ReportTable {
  std::vector<MseBreakdown> rows;
  ReportMetadata metadata;
};

enum class ReportFormat { Csv, Json, Text };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;

TpErrata compute_tp_errata(const PopulationParams& params,
                           std::optional<double> reference_min = kPublishedTpMinimum);

/// All six rows (mean, t1, t2, t3, t4, tp) plus errata for `params`.
ReportTable build_report(const PopulationParams& params, TpMode mode = TpMode::Corrected,
                         std::optional<double> reference_tp_min = kPublishedTpMinimum);

/// csv: `estimator,mse_error_free,me_contribution,mse_total,pre`, 3 decimals.
/// json: rows mirror MseBreakdown field names, plus metadata.
/// text: aligned table, with an errata footnote when the two tp readings disagree.
std::string render_report(const ReportTable& table, ReportFormat format);

}  // namespace mest
