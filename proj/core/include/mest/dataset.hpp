#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mest/moments.hpp"

namespace mest {

/// Paired observations, optionally with the true values behind them.
struct PairedDataset {
  struct Row {
    std::optional<double> X;  ///< true auxiliary value
    std::optional<double> Y;  ///< true study value
    double x = 0.0;           ///< observed auxiliary value
    double y = 0.0;           ///< observed study value

    friend bool operator==(const Row&, const Row&) = default;
  };

  std::vector<Row> rows;
  bool has_truth = false;
};

/// CSV with header `X,Y,x,y` or `x,y`. Throws FormatError on a bad header or
/// cell (row and column are named) and when fewer than 2 rows are present.
PairedDataset parse_dataset(std::istream& in);
PairedDataset load_dataset(const std::filesystem::path& path);

/// Writes the dataset back as CSV with shortest round-trip number formatting.
std::string render_dataset(const PairedDataset& data);

enum class VarianceDivisor { N, NMinus1 };

std::string to_string(VarianceDivisor divisor);
std::optional<VarianceDivisor> parse_divisor(std::string_view text) noexcept;

/// Moment estimates from true and observed columns: means, variances and
/// correlation from (X, Y); sigma2_u, sigma2_v as the variances of y - Y and
/// x - X. Throws InvalidParameter when the dataset carries no true values.
PopulationParams estimate_params(const PairedDataset& data,
                                 VarianceDivisor divisor = VarianceDivisor::NMinus1);

}  // namespace mest
