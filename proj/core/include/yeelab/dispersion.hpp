#pragma once

// Yee-grid dispersion in natural units: c = 1, eta0 = 1, dx = 1, so dt = S_c.

#include <numbers>

namespace yeelab {

inline constexpr double kPi = std::numbers::pi;

/// Lossless right-handed medium described by relative permittivity and permeability.
class Medium {
 public:
  Medium(double epsilon_r, double mu_r);

  [[nodiscard]] double epsilon_r() const noexcept { return epsilon_r_; }
  [[nodiscard]] double mu_r() const noexcept { return mu_r_; }
  /// n_r = sqrt(eps_r * mu_r)
  [[nodiscard]] double refractive_index() const noexcept;
  /// eta_r = sqrt(mu_r / eps_r), relative to the vacuum impedance
  [[nodiscard]] double impedance() const noexcept;

  friend bool operator==(const Medium&, const Medium&) = default;

 private:
  double epsilon_r_;
  double mu_r_;
};

/// Drive frequency and time step expressed through grid points per vacuum
/// wavelength (N_lambda) and the Courant number S_c = c dt / dx.
class WaveDiscretization {
 public:
  WaveDiscretization(double n_lambda, double courant);

  [[nodiscard]] double n_lambda() const noexcept { return n_lambda_; }
  [[nodiscard]] double courant() const noexcept { return courant_; }

  /// w dt / 2 = pi S_c / N_lambda
  [[nodiscard]] double half_omega_dt() const noexcept { return kPi * courant_ / n_lambda_; }
  [[nodiscard]] double time_step() const noexcept { return courant_; }
  [[nodiscard]] double angular_frequency() const noexcept {
    return 2.0 * half_omega_dt() / time_step();
  }
  /// Time steps per drive period; not necessarily an integer.
  [[nodiscard]] double steps_per_period() const noexcept { return n_lambda_ / courant_; }

  friend bool operator==(const WaveDiscretization&, const WaveDiscretization&) = default;

 private:
  double n_lambda_;
  double courant_;
};

/// Half the discrete phase advance per cell, k~ dx / 2, from
/// sin(k~ dx / 2) = (n_r / S_c) sin(w dt / 2). Principal branch in [0, pi/2].
/// Throws EvanescentRegime when the sine argument exceeds 1.
[[nodiscard]] double solve_k_tilde(const Medium& medium, const WaveDiscretization& wd);

/// Same relation, for callers that only have the refractive index.
[[nodiscard]] double solve_k_tilde(double refractive_index, const WaveDiscretization& wd);

/// Eigenvalue of the centered time difference on a harmonic: (2 / dt) sin(w dt / 2).
[[nodiscard]] double big_omega(const WaveDiscretization& wd, double dt);

/// Eigenvalue of the centered space difference, K = (2 / dx) sin(k~ dx / 2).
[[nodiscard]] double big_k(const Medium& medium, const WaveDiscretization& wd);

/// Continuum wavenumber k = w n_r / c.
[[nodiscard]] double continuum_k(const Medium& medium, double omega);

/// Discrete group velocity dw/dk~ of the carrier, in cells per time step.
[[nodiscard]] double group_velocity_cells_per_step(const Medium& medium,
                                                   const WaveDiscretization& wd);

}  // namespace yeelab
