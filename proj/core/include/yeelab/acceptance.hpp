#pragma once

// The acceptance suite: one self-contained check per criterion, shared by the
// `verify` subcommand and the acceptance test binary.

#include <string>
#include <string_view>
#include <vector>

#include "yeelab/fresnel.hpp"

namespace yeelab::acceptance {

struct CheckResult {
  std::string id;
  std::string criterion;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// The stability check runs at this multiple of min(n_r) and expects divergence.
  double stability_factor = 1.05;
};

/// Realization of one impedance ratio as an interface of each kind.
struct GridInterface {
  double eta_ratio;
  InterfaceCase dielectric;
  InterfaceCase magnetic;
};

/// eta1/eta2 in {0.87, 1.16, 2, 10}, each realized as a dielectric and a magnetic pair.
[[nodiscard]] std::vector<GridInterface> crosscheck_interfaces();
[[nodiscard]] std::vector<double> crosscheck_n_lambdas();

[[nodiscard]] std::vector<std::string> check_ids();

/// Throws ConfigError for an unknown id.
[[nodiscard]] CheckResult run_check(std::string_view id, const Options& options = {});

/// Runs the given ids (all when empty) in suite order.
[[nodiscard]] std::vector<CheckResult> run_checks(const std::vector<std::string>& ids,
                                                  const Options& options = {});

}  // namespace yeelab::acceptance
