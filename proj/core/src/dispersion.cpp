#include "yeelab/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "yeelab/errors.hpp"

namespace yeelab {

Medium::Medium(double epsilon_r, double mu_r) : epsilon_r_(epsilon_r), mu_r_(mu_r) {
  if (!(epsilon_r > 0.0) || !(mu_r > 0.0) || !std::isfinite(epsilon_r) || !std::isfinite(mu_r)) {
    std::ostringstream msg;
    msg << "medium requires eps_r > 0 and mu_r > 0 (got eps_r=" << epsilon_r << ", mu_r=" << mu_r
        << ")";
    throw ConfigError(msg.str());
  }
}

double Medium::refractive_index() const noexcept { return std::sqrt(epsilon_r_ * mu_r_); }

double Medium::impedance() const noexcept { return std::sqrt(mu_r_ / epsilon_r_); }

WaveDiscretization::WaveDiscretization(double n_lambda, double courant)
    : n_lambda_(n_lambda), courant_(courant) {
  if (!(n_lambda > 2.0) || !std::isfinite(n_lambda)) {
    std::ostringstream msg;
    msg << "N_lambda must exceed 2 grid points per wavelength (got " << n_lambda << ")";
    throw ConfigError(msg.str());
  }
  if (!(courant > 0.0) || !std::isfinite(courant)) {
    std::ostringstream msg;
    msg << "Courant number must be positive (got " << courant << ")";
    throw ConfigError(msg.str());
  }
}

double solve_k_tilde(double refractive_index, const WaveDiscretization& wd) {
  const double arg = refractive_index / wd.courant() * std::sin(wd.half_omega_dt());
  if (arg > 1.0) {
    std::ostringstream msg;
    msg << "evanescent regime: (n_r/S_c) sin(w dt/2) = " << arg << " > 1 for n_r="
        << refractive_index << ", S_c=" << wd.courant() << ", N_lambda=" << wd.n_lambda()
        << "; reduce S_c or increase N_lambda";
    throw EvanescentRegime(arg, msg.str());
  }
  return std::asin(arg);
}

double solve_k_tilde(const Medium& medium, const WaveDiscretization& wd) {
  return solve_k_tilde(medium.refractive_index(), wd);
}

double big_omega(const WaveDiscretization& wd, double dt) {
  return 2.0 / dt * std::sin(wd.half_omega_dt());
}

double big_k(const Medium& medium, const WaveDiscretization& wd) {
  return 2.0 * std::sin(solve_k_tilde(medium, wd));
}

double continuum_k(const Medium& medium, double omega) {
  return omega * medium.refractive_index();
}

double group_velocity_cells_per_step(const Medium& medium, const WaveDiscretization& wd) {
  // Differentiating sin(k dx/2) = (n/S_c) sin(w dt/2):
  // dw/dk = (dx/dt) (S_c/n) cos(k dx/2) / cos(w dt/2), times dt for cells per step.
  const double half_k = solve_k_tilde(medium, wd);
  return wd.courant() / medium.refractive_index() * std::cos(half_k) /
         std::cos(wd.half_omega_dt());
}

}  // namespace yeelab
