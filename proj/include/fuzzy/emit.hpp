#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fuzzy/cutcore.hpp"

namespace fuzzy {

// %.17g, with "-0" printed as "0".
std::string fmt17(double v);

// `alpha,lo,hi` rows for sample(fz, grid).
std::string cuts_csv(const FuzzyNum& fz, const std::vector<double>& grid);

// `x,mu` rows at n uniform abscissae over the support plus every junction.
std::string membership_csv(const FuzzyNum& fz, std::size_t n);

// Membership curves as SVG polylines, each sampled at >= min_points
// abscissae including junctions; jumps are drawn as vertical strokes.
std::string membership_svg(const std::vector<std::pair<std::string, FuzzyNum>>& curves,
                           std::size_t min_points = 512);

}  // namespace fuzzy
