#pragma once

// Parameter sweeps over N_lambda or a shared material parameter, producing
// one row of exact, discrete and (optionally) simulated quantities per point.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yeelab/fresnel.hpp"

namespace yeelab {

enum class SweepAxis {
  NLambda,
  /// Shared mu of a DielectricPair.
  SharedMu,
  /// Shared eps of a MagneticPair.
  SharedEps,
};

enum class CourantMode {
  Standard,  ///< S_c = 1
  Optimal,   ///< S_c = min(n_r1, n_r2)
  /// Primary columns in the standard mode plus the standard-minus-optimal deltas.
  Both,
};

enum class RowStatus { Ok, Evanescent, Diverged, NotSettled, SimMismatch };

[[nodiscard]] std::string_view to_string(SweepAxis axis) noexcept;
[[nodiscard]] std::string_view to_string(CourantMode mode) noexcept;
[[nodiscard]] std::string_view to_string(RowStatus status) noexcept;

struct SweepSpec {
  InterfaceCase ic_template;
  SweepAxis axis = SweepAxis::NLambda;
  std::vector<double> axis_values;
  CourantMode courant_mode = CourantMode::Standard;
  bool with_simulation = false;
  /// N_lambda for material-parameter axes; ignored on the NLambda axis.
  double n_lambda = 20.0;

  /// Throws ConfigError for empty or non-increasing axis values, or an axis
  /// that does not fit the interface kind.
  void validate() const;

  /// Interface at one axis value.
  [[nodiscard]] InterfaceCase interface_at(double axis_value) const;
  [[nodiscard]] double n_lambda_at(double axis_value) const;
};

/// Simulations are skipped above this N_lambda; closed forms are always produced.
inline constexpr double kMaxSimulatedNLambda = 200.0;
inline constexpr double kSimulationTolerance = 1e-5;

struct SweepRow {
  double axis_value = 0.0;
  double n_lambda = 0.0;
  double courant = 0.0;
  double eta_ratio = 0.0;
  double r = 0.0;
  double t = 0.0;
  double R = 0.0;
  double T = 0.0;
  std::optional<double> r_tilde;
  std::optional<double> t_tilde;
  std::optional<double> R_tilde;
  std::optional<double> T_tilde;
  std::optional<double> delta_R;
  std::optional<double> delta_T;
  std::optional<double> Delta_R;
  std::optional<double> Delta_T;
  std::optional<double> r_meas;
  std::optional<double> t_meas;
  /// max(|r_meas - r~|, |t_meas - t~|)
  std::optional<double> sim_residual;
  RowStatus status = RowStatus::Ok;
  std::string message;
};

/// Evaluates one point; failures are recorded in the row.
[[nodiscard]] SweepRow evaluate_point(const SweepSpec& spec, double axis_value);

/// Rows in axis order. Points run on up to `threads` workers (0 picks the
/// hardware concurrency); the result does not depend on the thread count.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t threads = 0);

/// True iff delta_R > delta_T on every row that has both. Rows must come from
/// a weak-contrast interface (eta1/eta2 within [0.8, 1.25]); ConfigError otherwise.
[[nodiscard]] bool weak_contrast_ordering_check(const std::vector<SweepRow>& rows);

[[nodiscard]] std::vector<std::string> csv_columns();
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace yeelab
