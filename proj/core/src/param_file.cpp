#include "mest/param_file.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "mest/error.hpp"
#include "text_util.hpp"

namespace mest {

namespace {

constexpr std::array<std::string_view, 8> kKeys = {"mu_y",     "mu_x",     "sigma2_y", "sigma2_x",
                                                   "rho",      "sigma2_u", "sigma2_v", "n"};

}  // namespace

PopulationParams parse_params(std::istream& in) {
  std::array<std::optional<std::string>, kKeys.size()> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;

    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = detail::trim(view.substr(0, eq));
    const std::string_view value = detail::trim(view.substr(eq + 1));

    std::size_t slot = kKeys.size();
    for (std::size_t i = 0; i < kKeys.size(); ++i) {
      if (kKeys[i] == key) slot = i;
    }
    if (slot == kKeys.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (values[slot]) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    values[slot] = std::string(value);
  }

  auto real = [&](std::size_t i) {
    if (!values[i]) throw FormatError("missing key '" + std::string(kKeys[i]) + "'");
    const auto v = detail::parse_double(*values[i]);
    if (!v) throw FormatError(std::string(kKeys[i]) + ": not a number: '" + *values[i] + "'");
    return *v;
  };

  PopulationParams p;
  p.mu_y = real(0);
  p.mu_x = real(1);
  p.sigma2_y = real(2);
  p.sigma2_x = real(3);
  p.rho = real(4);
  p.sigma2_u = real(5);
  p.sigma2_v = real(6);
  if (!values[7]) throw FormatError("missing key 'n'");
  const auto n = detail::parse_int(*values[7]);
  if (!n) throw FormatError("n: not an integer: '" + *values[7] + "'");
  p.n = *n;

  validate(p);
  return p;
}

PopulationParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open parameter file '" + path.string() + "'");
  return parse_params(in);
}

std::string format_params(const PopulationParams& p) {
  std::ostringstream out;
  out << "mu_y = " << detail::format_roundtrip(p.mu_y) << '\n'
      << "mu_x = " << detail::format_roundtrip(p.mu_x) << '\n'
      << "sigma2_y = " << detail::format_roundtrip(p.sigma2_y) << '\n'
      << "sigma2_x = " << detail::format_roundtrip(p.sigma2_x) << '\n'
      << "rho = " << detail::format_roundtrip(p.rho) << '\n'
      << "sigma2_u = " << detail::format_roundtrip(p.sigma2_u) << '\n'
      << "sigma2_v = " << detail::format_roundtrip(p.sigma2_v) << '\n'
      << "n = " << p.n << '\n';
  return out.str();
}

}  // namespace mest
