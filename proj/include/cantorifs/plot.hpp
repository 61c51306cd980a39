#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantorifs/axioms.hpp"
#include "cantorifs/ifs.hpp"

namespace cantorifs {

struct PlotLayers {
  std::optional<HolePair> hole;
  std::optional<RuinationRegions> regions;
  std::vector<Interval> blocks;  ///< squares on the diagonal, e.g. I_-1, I_0, I_1
  std::string title;
};

/// 800x800 SVG: graphs of f and g over the diagonal, with W, F_1, G_1 and
/// the optional layers shaded. Output depends only on the inputs.
std::string plot_pair_svg(const IFSPair& p, const PlotLayers& layers = {});

/// 800x80 SVG strip with one rectangle per part of `s`.
std::string plot_strip_svg(const IntervalSet& s, const std::string& title = {});

}  // namespace cantorifs
