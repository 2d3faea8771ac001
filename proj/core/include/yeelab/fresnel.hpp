#pragma once

// Continuum and Yee-discrete Fresnel coefficients for normal incidence on a
// planar interface, plus the relative-error metrics built on them.

#include <complex>
#include <string_view>

#include "yeelab/dispersion.hpp"

namespace yeelab {

enum class InterfaceKind {
  /// Shared mu; eps jumps between E nodes b-1 and b (H node b sits on the interface).
  DielectricPair,
  /// Shared eps; mu jumps between H nodes b and b+1 (E node b sits on the interface).
  MagneticPair,
};

[[nodiscard]] std::string_view to_string(InterfaceKind kind) noexcept;

class InterfaceCase {
 public:
  InterfaceCase(InterfaceKind kind, Medium medium1, Medium medium2);

  static InterfaceCase dielectric(double eps1, double eps2, double mu);
  static InterfaceCase magnetic(double mu1, double mu2, double eps);

  [[nodiscard]] InterfaceKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Medium& medium1() const noexcept { return medium1_; }
  [[nodiscard]] const Medium& medium2() const noexcept { return medium2_; }

  /// eta1 / eta2
  [[nodiscard]] double impedance_ratio() const noexcept;
  [[nodiscard]] bool identical_media() const noexcept { return medium1_ == medium2_; }
  /// Media exchanged, same kind.
  [[nodiscard]] InterfaceCase swapped() const;

  friend bool operator==(const InterfaceCase&, const InterfaceCase&) = default;

 private:
  InterfaceKind kind_;
  Medium medium1_;
  Medium medium2_;
};

struct FresnelPair {
  double r;
  double t;
};

struct PowerPair {
  double R;
  double T;
};

/// Relative errors of the discrete R and T, in percent (50.0 means 50%).
struct ErrorReport {
  double delta_R;
  double delta_T;
};

struct CourantModeComparison {
  double delta_R_diff;  ///< delta_R(S_c = 1) - delta_R(optimal), percentage points
  double delta_T_diff;
  ErrorReport standard;
  ErrorReport optimal;
};

/// Residuals of the two discrete continuity conditions at the interface.
struct BoundaryResiduals {
  std::complex<double> first;
  std::complex<double> second;
  double scale;  ///< max(1, largest term magnitude)
};

/// Courant number of the optimal mode, S_c = min(n_r1, n_r2).
[[nodiscard]] double optimal_courant(const InterfaceCase& ic) noexcept;

[[nodiscard]] FresnelPair exact_fresnel(const InterfaceCase& ic) noexcept;
[[nodiscard]] PowerPair exact_power(const InterfaceCase& ic) noexcept;

/// Throws ConfigError when ic is not a DielectricPair, EvanescentRegime when
/// either medium has no propagating discrete wave.
[[nodiscard]] FresnelPair fdtd_fresnel_dielectric(const InterfaceCase& ic,
                                                  const WaveDiscretization& wd);
[[nodiscard]] FresnelPair fdtd_fresnel_magnetic(const InterfaceCase& ic,
                                                const WaveDiscretization& wd);
/// Dispatches on ic.kind().
[[nodiscard]] FresnelPair fdtd_fresnel(const InterfaceCase& ic, const WaveDiscretization& wd);

[[nodiscard]] PowerPair fdtd_power(const InterfaceCase& ic, const WaveDiscretization& wd);

/// R = r^2, T = (eta1/eta2) t^2 for an arbitrary coefficient pair.
[[nodiscard]] PowerPair power_from_fresnel(const InterfaceCase& ic, const FresnelPair& f) noexcept;

/// Throws DegenerateInterface for identical media (R = 0).
[[nodiscard]] ErrorReport error_report(const InterfaceCase& ic, const WaveDiscretization& wd);

[[nodiscard]] CourantModeComparison compare_courant_modes(const InterfaceCase& ic,
                                                          double n_lambda);

/// Substitutes (r, t) into the complex discrete continuity conditions of the
/// interface kind. Both residuals vanish for the closed-form discrete pair.
[[nodiscard]] BoundaryResiduals boundary_residuals(const InterfaceCase& ic,
                                                   const WaveDiscretization& wd,
                                                   const FresnelPair& coefficients);

}  // namespace yeelab
