#pragma once

// Independent reference for the discrete interface problem. It works directly
// on the frequency-domain Yee recurrence
//   -W^2 eps_m E_m = (E_{m+1} - E_m) / mu_{m+1} - (E_m - E_{m-1}) / mu_m,
// W = (2 / dt) sin(w dt / 2), with mu_m the permeability of the H node
// between E_{m-1} and E_m. Plane waves are substituted on each side and the
// two equations that touch the interface are solved for (r, t). Everything is
// carried in long double and the wavenumber comes from bisection, so no code
// path is shared with the library.

#include <cmath>
#include <complex>
#include <array>
#include <optional>

namespace oracle {

using real = long double;
using cplx = std::complex<real>;

inline constexpr real kPi = 3.141592653589793238462643383279502884L;

struct Coefficients {
  cplx r;
  cplx t;
};

// Phase advance per cell k for a medium with eps*mu = n2; nullopt when evanescent.
inline std::optional<real> wavenumber(real n2, real n_lambda, real courant) {
  const real dt = courant;
  const real w = 2 * std::sin(kPi * courant / n_lambda) / dt;
  const real target = w * w * n2;
  if (target > 4) {
    return std::nullopt;
  }
  real lo = 0;
  real hi = kPi;
  for (int i = 0; i < 200; ++i) {
    const real mid = (lo + hi) / 2;
    if (2 - 2 * std::cos(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

inline real omega_sq(real n_lambda, real courant) {
  const real w = 2 * std::sin(kPi * courant / n_lambda) / courant;
  return w * w;
}

// Waves exp(-i k x) (incident), r exp(+i k x), t exp(-i k x), x measured from
// the interface plane.
inline cplx wave(real k, real x) { return std::polar<real>(1, -k * x); }

// Solves a 2x2 complex system [a b; c d] (r, t) = (e, f).
inline Coefficients solve2(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f) {
  const cplx det = a * d - b * c;
  return {(e * d - b * f) / det, (a * f - e * c) / det};
}

// eps jumps between E nodes b-1 and b; the plane sits at the H node b - 1/2.
inline std::optional<Coefficients> dielectric(real eps1, real eps2, real mu, real n_lambda,
                                              real courant) {
  const auto k1 = wavenumber(eps1 * mu, n_lambda, courant);
  const auto k2 = wavenumber(eps2 * mu, n_lambda, courant);
  if (!k1 || !k2) {
    return std::nullopt;
  }
  const real w2 = omega_sq(n_lambda, courant);
  // Node offsets from the plane: b-2 -> -3/2, b-1 -> -1/2, b -> 1/2, b+1 -> 3/2.
  const auto inc = [&](real x) { return wave(*k1, x); };
  const auto ref = [&](real x) { return wave(-*k1, x); };
  const auto tra = [&](real x) { return wave(*k2, x); };
  // Residual of the recurrence at node m written as sum over unknowns.
  // Node b-1 (eps1): neighbours b-2 (left wave) and b (transmitted).
  const real c_left = 1 / mu;
  // -w2 eps1 E_{b-1} - (E_b - E_{b-1})/mu + (E_{b-1} - E_{b-2})/mu = 0
  const auto row1 = [&](real x_self, real x_left, real x_right) {
    const cplx r_coef = (-w2 * eps1 + 2 * c_left) * ref(x_self) - c_left * ref(x_left);
    const cplx t_coef = -c_left * tra(x_right);
    const cplx rhs = -((-w2 * eps1 + 2 * c_left) * inc(x_self) - c_left * inc(x_left));
    return std::array<cplx, 3>{r_coef, t_coef, rhs};
  };
  // Node b (eps2): neighbours b-1 (left waves) and b+1 (transmitted).
  const auto row2 = [&](real x_self, real x_left, real x_right) {
    const cplx r_coef = -c_left * ref(x_left);
    const cplx t_coef = (-w2 * eps2 + 2 * c_left) * tra(x_self) - c_left * tra(x_right);
    const cplx rhs = c_left * inc(x_left);
    return std::array<cplx, 3>{r_coef, t_coef, rhs};
  };
  const auto a = row1(-0.5L, -1.5L, 0.5L);
  const auto c = row2(0.5L, -0.5L, 1.5L);
  return solve2(a[0], a[1], c[0], c[1], a[2], c[2]);
}

// mu jumps between H nodes b and b+1; the plane sits at the E node b.
inline std::optional<Coefficients> magnetic(real mu1, real mu2, real eps, real n_lambda,
                                            real courant) {
  const auto k1 = wavenumber(eps * mu1, n_lambda, courant);
  const auto k2 = wavenumber(eps * mu2, n_lambda, courant);
  if (!k1 || !k2) {
    return std::nullopt;
  }
  const real w2 = omega_sq(n_lambda, courant);
  // E_b shared by both expansions: 1 + r = t.
  // -w2 eps E_b - (E_{b+1} - E_b)/mu2 + (E_b - E_{b-1})/mu1 = 0
  const real self = -w2 * eps + 1 / mu2 + 1 / mu1;
  const cplx r_coef = -wave(-*k1, -1) / mu1;
  const cplx t_coef = self - wave(*k2, 1) / mu2;
  const cplx rhs = wave(*k1, -1) / mu1;
  return solve2(cplx(1), cplx(-1), r_coef, t_coef, cplx(-1), rhs);
}

}  // namespace oracle
