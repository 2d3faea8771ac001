#include "yeelab/presets.hpp"

#include <cmath>
#include <sstream>

#include "yeelab/errors.hpp"

namespace yeelab {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string label(const InterfaceCase& ic) {
  const Medium& a = ic.medium1();
  const Medium& b = ic.medium2();
  if (ic.kind() == InterfaceKind::DielectricPair) {
    return "dielectric_eps" + num(a.epsilon_r()) + "-" + num(b.epsilon_r()) + "_mu" +
           num(a.mu_r());
  }
  return "magnetic_mu" + num(a.mu_r()) + "-" + num(b.mu_r()) + "_eps" + num(a.epsilon_r());
}

FigureCurve curve(const InterfaceCase& ic, const std::vector<double>& n_lambda, CourantMode mode,
                  const std::string& suffix = {}) {
  SweepSpec spec{.ic_template = ic,
                 .axis = SweepAxis::NLambda,
                 .axis_values = n_lambda,
                 .courant_mode = mode};
  return {label(ic) + "_" + std::string(to_string(mode)) + suffix, spec};
}

// The weak-contrast pairs: eta1/eta2 = sqrt(4/3) and sqrt(3/4) for each kind.
std::vector<InterfaceCase> weak_contrast_pairs() {
  return {InterfaceCase::dielectric(3, 4, 2), InterfaceCase::dielectric(4, 3, 2),
          InterfaceCase::magnetic(4, 3, 2), InterfaceCase::magnetic(3, 4, 2)};
}

FigurePreset fresnel_curves(std::string id, std::string description) {
  FigurePreset p{std::move(id), std::move(description), {}};
  const auto grid = uniform_grid(10, 40, 0.5);
  for (const InterfaceCase& ic : weak_contrast_pairs()) {
    for (CourantMode mode : {CourantMode::Standard, CourantMode::Optimal}) {
      p.curves.push_back(curve(ic, grid, mode));
    }
  }
  return p;
}

FigurePreset fig8() {
  FigurePreset p{"fig8", "R~ and T~ against N_lambda, weak impedance contrast", {}};
  const auto grid = uniform_grid(10, 40, 0.5);
  for (const InterfaceCase& ic : weak_contrast_pairs()) {
    p.curves.push_back(curve(ic, grid, CourantMode::Standard));
  }
  return p;
}

FigurePreset fig9() {
  FigurePreset p{"fig9", "delta_R and delta_T against N_lambda for dielectric pairs, S_c = 1", {}};
  const auto left = uniform_grid(10, 40, 0.5);
  const auto right = uniform_grid(40, 70, 0.5);
  std::vector<InterfaceCase> cases;
  // a) and c): mu = 1, weaker and stronger contrast in both orderings
  for (double e2 : {2.0, 4.0}) {
    cases.push_back(InterfaceCase::dielectric(1, e2, 1));
    cases.push_back(InterfaceCase::dielectric(e2, 1, 1));
  }
  // b) and d): eps = (1, 4) and (4, 1) with growing shared mu
  for (double mu : {2.0, 4.0, 16.0}) {
    cases.push_back(InterfaceCase::dielectric(1, 4, mu));
    cases.push_back(InterfaceCase::dielectric(4, 1, mu));
  }
  for (const InterfaceCase& ic : cases) {
    p.curves.push_back(curve(ic, left, CourantMode::Standard, "_n10-40"));
    p.curves.push_back(curve(ic, right, CourantMode::Standard, "_n40-70"));
  }
  return p;
}

FigurePreset figA() {
  FigurePreset p{"figA", "Delta_R and Delta_T (standard minus optimal) for dielectric pairs", {}};
  const auto grid = uniform_grid(10, 70, 0.5);
  for (double mu : {2.0, 4.0, 16.0}) {
    p.curves.push_back(curve(InterfaceCase::dielectric(1, 4, mu), grid, CourantMode::Both));
    p.curves.push_back(curve(InterfaceCase::dielectric(4, 1, mu), grid, CourantMode::Both));
  }
  return p;
}

FigurePreset figB() {
  FigurePreset p{"figB", "R~, T~ and their errors at eta1/eta2 = 10 and 0.1", {}};
  const auto grid = uniform_grid(50, 150, 1);
  for (const InterfaceCase& ic :
       {InterfaceCase::dielectric(1, 100, 2), InterfaceCase::dielectric(100, 1, 2),
        InterfaceCase::magnetic(100, 1, 2), InterfaceCase::magnetic(1, 100, 2)}) {
    p.curves.push_back(curve(ic, grid, CourantMode::Both));
  }
  return p;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw ConfigError("grid needs step > 0 and hi >= lo");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + static_cast<double>(i) * step;
  }
  return v;
}

std::vector<std::string> figure_ids() { return {"fig5", "fig6", "fig8", "fig9", "figA", "figB"}; }

FigurePreset figure_preset(std::string_view id) {
  if (id == "fig5") {
    return fresnel_curves("fig5", "r~ against N_lambda, weak impedance contrast");
  }
  if (id == "fig6") {
    return fresnel_curves("fig6", "t~ against N_lambda, weak impedance contrast");
  }
  if (id == "fig8") {
    return fig8();
  }
  if (id == "fig9") {
    return fig9();
  }
  if (id == "figA") {
    return figA();
  }
  if (id == "figB") {
    return figB();
  }
  throw ConfigError("unknown figure id '" + std::string(id) +
                    "' (expected fig5, fig6, fig8, fig9, figA or figB)");
}

}  // namespace yeelab
