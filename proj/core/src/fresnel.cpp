#include "yeelab/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "yeelab/errors.hpp"

namespace yeelab {

std::string_view to_string(InterfaceKind kind) noexcept {
  switch (kind) {
    case InterfaceKind::DielectricPair:
      return "dielectric";
    case InterfaceKind::MagneticPair:
      return "magnetic";
  }
  return "unknown";
}

InterfaceCase::InterfaceCase(InterfaceKind kind, Medium medium1, Medium medium2)
    : kind_(kind), medium1_(medium1), medium2_(medium2) {
  if (kind == InterfaceKind::DielectricPair && medium1.mu_r() != medium2.mu_r()) {
    std::ostringstream msg;
    msg << "dielectric pair requires a shared mu_r (got " << medium1.mu_r() << " and "
        << medium2.mu_r() << ")";
    throw ConfigError(msg.str());
  }
  if (kind == InterfaceKind::MagneticPair && medium1.epsilon_r() != medium2.epsilon_r()) {
    std::ostringstream msg;
    msg << "magnetic pair requires a shared eps_r (got " << medium1.epsilon_r() << " and "
        << medium2.epsilon_r() << ")";
    throw ConfigError(msg.str());
  }
}

InterfaceCase InterfaceCase::dielectric(double eps1, double eps2, double mu) {
  return {InterfaceKind::DielectricPair, Medium(eps1, mu), Medium(eps2, mu)};
}

InterfaceCase InterfaceCase::magnetic(double mu1, double mu2, double eps) {
  return {InterfaceKind::MagneticPair, Medium(eps, mu1), Medium(eps, mu2)};
}

double InterfaceCase::impedance_ratio() const noexcept {
  return medium1_.impedance() / medium2_.impedance();
}

InterfaceCase InterfaceCase::swapped() const { return {kind_, medium2_, medium1_}; }

double optimal_courant(const InterfaceCase& ic) noexcept {
  return std::min(ic.medium1().refractive_index(), ic.medium2().refractive_index());
}

FresnelPair exact_fresnel(const InterfaceCase& ic) noexcept {
  const double eta1 = ic.medium1().impedance();
  const double eta2 = ic.medium2().impedance();
  const double den = eta2 + eta1;
  return {(eta2 - eta1) / den, 2.0 * eta2 / den};
}

PowerPair power_from_fresnel(const InterfaceCase& ic, const FresnelPair& f) noexcept {
  return {f.r * f.r, ic.impedance_ratio() * f.t * f.t};
}

PowerPair exact_power(const InterfaceCase& ic) noexcept {
  return power_from_fresnel(ic, exact_fresnel(ic));
}

namespace {

struct HalfPhases {
  double cos1;
  double cos2;
};

HalfPhases half_phase_cosines(const InterfaceCase& ic, const WaveDiscretization& wd) {
  return {std::cos(solve_k_tilde(ic.medium1(), wd)), std::cos(solve_k_tilde(ic.medium2(), wd))};
}

void require_kind(const InterfaceCase& ic, InterfaceKind expected) {
  if (ic.kind() != expected) {
    std::ostringstream msg;
    msg << "expected a " << to_string(expected) << " interface, got " << to_string(ic.kind());
    throw ConfigError(msg.str());
  }
}

}  // namespace

FresnelPair fdtd_fresnel_dielectric(const InterfaceCase& ic, const WaveDiscretization& wd) {
  require_kind(ic, InterfaceKind::DielectricPair);
  const auto [c1, c2] = half_phase_cosines(ic, wd);
  const double eta1 = ic.medium1().impedance();
  const double eta2 = ic.medium2().impedance();
  const double den = eta2 * c2 + eta1 * c1;
  return {(eta2 * c2 - eta1 * c1) / den, 2.0 * eta2 * c1 / den};
}

FresnelPair fdtd_fresnel_magnetic(const InterfaceCase& ic, const WaveDiscretization& wd) {
  require_kind(ic, InterfaceKind::MagneticPair);
  const auto [c1, c2] = half_phase_cosines(ic, wd);
  const double eta1 = ic.medium1().impedance();
  const double eta2 = ic.medium2().impedance();
  // The cosines trade places relative to the dielectric case.
  const double den = eta2 * c1 + eta1 * c2;
  return {(eta2 * c1 - eta1 * c2) / den, 2.0 * eta2 * c1 / den};
}

FresnelPair fdtd_fresnel(const InterfaceCase& ic, const WaveDiscretization& wd) {
  return ic.kind() == InterfaceKind::DielectricPair ? fdtd_fresnel_dielectric(ic, wd)
                                                    : fdtd_fresnel_magnetic(ic, wd);
}

PowerPair fdtd_power(const InterfaceCase& ic, const WaveDiscretization& wd) {
  return power_from_fresnel(ic, fdtd_fresnel(ic, wd));
}

ErrorReport error_report(const InterfaceCase& ic, const WaveDiscretization& wd) {
  const PowerPair exact = exact_power(ic);
  if (exact.R == 0.0) {
    throw DegenerateInterface("relative reflection error undefined: identical media give R = 0");
  }
  const PowerPair discrete = fdtd_power(ic, wd);
  return {std::abs(discrete.R - exact.R) / exact.R * 100.0,
          std::abs(discrete.T - exact.T) / exact.T * 100.0};
}

CourantModeComparison compare_courant_modes(const InterfaceCase& ic, double n_lambda) {
  const ErrorReport standard = error_report(ic, WaveDiscretization(n_lambda, 1.0));
  const ErrorReport optimal = error_report(ic, WaveDiscretization(n_lambda, optimal_courant(ic)));
  return {standard.delta_R - optimal.delta_R, standard.delta_T - optimal.delta_T, standard,
          optimal};
}

BoundaryResiduals boundary_residuals(const InterfaceCase& ic, const WaveDiscretization& wd,
                                     const FresnelPair& coefficients) {
  using cplx = std::complex<double>;
  constexpr cplx i{0.0, 1.0};
  const double a1 = solve_k_tilde(ic.medium1(), wd);
  const double a2 = solve_k_tilde(ic.medium2(), wd);
  const double eta1 = ic.medium1().impedance();
  const double eta2 = ic.medium2().impedance();
  const double omega = big_omega(wd, wd.time_step());
  const double r = coefficients.r;
  const double t = coefficients.t;
  const cplx e1p = std::polar(1.0, a1);
  const cplx e1m = std::polar(1.0, -a1);
  const cplx e2m = std::polar(1.0, -a2);

  BoundaryResiduals out{};
  double largest = 1.0;
  auto track = [&largest](auto... terms) { ((largest = std::max(largest, std::abs(terms))), ...); };

  if (ic.kind() == InterfaceKind::DielectricPair) {
    // H continuous at the H node on the interface.
    out.first = -1.0 / eta1 + r / eta1 + t / eta2;
    track(1.0 / eta1, r / eta1, t / eta2);
    // E nodes b-1 and b straddle the interface; Faraday at the interface closes the system.
    const double mu = ic.medium1().mu_r();
    const cplx rhs = (e2m + i * omega * mu / eta2) * t;
    out.second = e1p + r * e1m - rhs;
    track(e1p, r * e1m, rhs);
  } else {
    out.first = 1.0 + r - t;
    track(1.0, r, t);
    const double eps = ic.medium1().epsilon_r();
    const cplx rhs = eta1 * (e2m / eta2 + i * omega * eps) * t;
    out.second = e1p - r * e1m - rhs;
    track(e1p, r * e1m, rhs);
  }
  out.scale = largest;
  return out;
}

}  // namespace yeelab
