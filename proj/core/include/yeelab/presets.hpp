#pragma once

// Named sweep families that regenerate the datasets behind the figures of the
// discrete-Fresnel study.

#include <string>
#include <string_view>
#include <vector>

#include "yeelab/sweep.hpp"

namespace yeelab {

struct FigureCurve {
  std::string name;  ///< file stem, e.g. "dielectric_eps3-4_standard"
  SweepSpec spec;
};

struct FigurePreset {
  std::string id;
  std::string description;
  std::vector<FigureCurve> curves;
};

[[nodiscard]] std::vector<std::string> figure_ids();

/// Throws ConfigError for an unknown id.
[[nodiscard]] FigurePreset figure_preset(std::string_view id);

/// lo, lo + step, ... up to hi inclusive (within rounding).
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace yeelab
