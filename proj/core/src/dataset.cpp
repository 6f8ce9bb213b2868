#include "mest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "mest/error.hpp"
#include "text_util.hpp"

namespace mest {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(detail::trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Centered co-moment sum / divisor.
double comoment(const std::vector<double>& a, const std::vector<double>& b, double divisor) {
  const double ma = mean(a), mb = mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / divisor;
}

}  // namespace

PairedDataset parse_dataset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  std::string header_line;
  while (std::getline(in, header_line)) {
    ++line_no;
    if (!detail::trim(header_line).empty()) break;
  }
  const auto header = split_csv(detail::trim(header_line));
  PairedDataset data;
  if (header == std::vector<std::string_view>{"X", "Y", "x", "y"}) {
    data.has_truth = true;
  } else if (header == std::vector<std::string_view>{"x", "y"}) {
    data.has_truth = false;
  } else {
    throw FormatError("unrecognized header '" + std::string(detail::trim(header_line)) +
                      "' (expected 'X,Y,x,y' or 'x,y')");
  }

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto cells = split_csv(trimmed);
    if (cells.size() != header.size()) {
      throw FormatError("row " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) {
        throw FormatError("row " + std::to_string(line_no) + ", column " + std::string(header[c]) +
                          ": not a finite number: '" + std::string(cells[c]) + "'");
      }
      values.push_back(*v);
    }
    PairedDataset::Row row;
    if (data.has_truth) {
      row.X = values[0];
      row.Y = values[1];
      row.x = values[2];
      row.y = values[3];
    } else {
      row.x = values[0];
      row.y = values[1];
    }
    data.rows.push_back(row);
  }

  if (data.rows.size() < 2) {
    throw FormatError("dataset needs at least 2 rows, got " + std::to_string(data.rows.size()));
  }
  return data;
}

PairedDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open data file '" + path.string() + "'");
  return parse_dataset(in);
}

std::string render_dataset(const PairedDataset& data) {
  std::ostringstream out;
  out << (data.has_truth ? "X,Y,x,y\n" : "x,y\n");
  for (const auto& r : data.rows) {
    if (data.has_truth) {
      out << detail::format_roundtrip(r.X.value_or(NAN)) << ','
          << detail::format_roundtrip(r.Y.value_or(NAN)) << ',';
    }
    out << detail::format_roundtrip(r.x) << ',' << detail::format_roundtrip(r.y) << '\n';
  }
  return out.str();
}

std::string to_string(VarianceDivisor divisor) {
  return divisor == VarianceDivisor::N ? "n" : "n-1";
}

std::optional<VarianceDivisor> parse_divisor(std::string_view text) noexcept {
  if (text == "n") return VarianceDivisor::N;
  if (text == "n-1") return VarianceDivisor::NMinus1;
  return std::nullopt;
}

PopulationParams estimate_params(const PairedDataset& data, VarianceDivisor divisor) {
  if (!data.has_truth) {
    throw InvalidParameter("data",
                           "true X,Y columns are required to estimate the error variances; "
                           "supply the population parameters directly (--params)");
  }
  if (data.rows.size() < 2) throw InvalidParameter("data", "need at least 2 rows");

  std::vector<double> tx, ty, ex, ey;
  for (const auto& r : data.rows) {
    tx.push_back(*r.X);
    ty.push_back(*r.Y);
    ex.push_back(r.x - *r.X);
    ey.push_back(r.y - *r.Y);
  }
  const double n = static_cast<double>(data.rows.size());
  const double d = divisor == VarianceDivisor::N ? n : n - 1.0;

  PopulationParams p;
  p.n = static_cast<int>(data.rows.size());
  p.mu_y = mean(ty);
  p.mu_x = mean(tx);
  p.sigma2_y = comoment(ty, ty, d);
  p.sigma2_x = comoment(tx, tx, d);
  p.rho = std::clamp(comoment(tx, ty, d) / std::sqrt(p.sigma2_x * p.sigma2_y), -1.0, 1.0);
  p.sigma2_u = comoment(ey, ey, d);
  p.sigma2_v = comoment(ex, ex, d);
  validate(p);
  return p;
}

}  // namespace mest
