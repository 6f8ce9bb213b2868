#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mest/moments.hpp"

namespace mest {

// key=value parameter files:
//
//   # comment
//   mu_y = 127
//   mu_x = 170
//   ...
//
// Keys are exactly mu_y, mu_x, sigma2_y, sigma2_x, rho, sigma2_u, sigma2_v, n;
// each must appear once. The parsed params are validated.

PopulationParams parse_params(std::istream& in);
PopulationParams load_params(const std::filesystem::path& path);

/// Inverse of parse_params; values written with round-trip precision.
std::string format_params(const PopulationParams& params);

}  // namespace mest
