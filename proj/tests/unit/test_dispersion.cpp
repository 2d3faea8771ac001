#include <cmath>

#include "discrete_oracle.hpp"
#include "doctest.h"
#include "yeelab/dispersion.hpp"
#include "yeelab/errors.hpp"

using namespace yeelab;

TEST_SUITE("dispersion") {
  TEST_CASE("half phase advance of a dense medium") {
    const double k = solve_k_tilde(Medium(4, 1), WaveDiscretization(20, 1));
    CHECK(k == doctest::Approx(0.3182121098).epsilon(1e-10));
    CHECK(solve_k_tilde(2.0, WaveDiscretization(20, 1)) == doctest::Approx(k).epsilon(1e-15));
  }

  TEST_CASE("k~ matches the bisected recurrence root") {
    for (double n2 : {1.0, 2.0, 4.0, 9.0, 16.0}) {
      for (double n_lambda : {10.0, 20.0, 40.0, 80.0}) {
        for (double courant : {1.0, 0.5}) {
          const WaveDiscretization wd(n_lambda, courant);
          const auto ref = oracle::wavenumber(n2, n_lambda, courant);
          if (!ref) {
            CHECK_THROWS_AS((void)solve_k_tilde(std::sqrt(n2), wd), EvanescentRegime);
            continue;
          }
          CHECK(2 * solve_k_tilde(std::sqrt(n2), wd) ==
                doctest::Approx(static_cast<double>(*ref)).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("at S_c = n_r the grid has no phase error") {
    for (double n : {1.0, 2.0, 3.5}) {
      const WaveDiscretization wd(17.0, n);
      CHECK(solve_k_tilde(n, wd) == doctest::Approx(wd.half_omega_dt()).epsilon(1e-14));
    }
  }

  TEST_CASE("discrete wavelength is shorter than the continuum one") {
    for (double n_lambda : {10.0, 20.0, 40.0}) {
      const WaveDiscretization wd(n_lambda, 1);
      const Medium m(2, 2);
      const double k_discrete = 2 * solve_k_tilde(m, wd);
      CHECK(k_discrete > continuum_k(m, wd.angular_frequency()));
    }
  }

  TEST_CASE("evanescent regime reports its sine argument") {
    const WaveDiscretization wd(4, 1);
    try {
      (void)solve_k_tilde(Medium(4, 1), wd);
      FAIL("expected EvanescentRegime");
    } catch (const EvanescentRegime& e) {
      CHECK(e.sine_argument() == doctest::Approx(2 * std::sin(kPi / 4)));
    }
  }

  TEST_CASE("K and Omega eigenvalues satisfy the dispersion relation") {
    const Medium m(3, 2);
    const WaveDiscretization wd(25, 1);
    const double big_w = big_omega(wd, wd.time_step());
    const double big_k_value = big_k(m, wd);
    CHECK(big_k_value * big_k_value ==
          doctest::Approx(big_w * big_w * m.epsilon_r() * m.mu_r()).epsilon(1e-13));
  }

  TEST_CASE("group velocity agrees with a finite difference of w(k)") {
    const Medium m(2, 1);
    const double courant = 0.7;
    const double n_lambda = 15;
    const double h = 1e-5;
    const auto k_of = [&](double nl) { return 2 * solve_k_tilde(m, WaveDiscretization(nl, courant)); };
    const auto w_of = [&](double nl) { return WaveDiscretization(nl, courant).angular_frequency(); };
    // w decreases with N_lambda; both ends move together.
    const double dw = w_of(n_lambda - h) - w_of(n_lambda + h);
    const double dk = k_of(n_lambda - h) - k_of(n_lambda + h);
    const double vg = group_velocity_cells_per_step(m, WaveDiscretization(n_lambda, courant));
    CHECK(vg == doctest::Approx(dw / dk * courant).epsilon(1e-7));
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(Medium(0, 1), ConfigError);
    CHECK_THROWS_AS(Medium(1, -2), ConfigError);
    CHECK_THROWS_AS(WaveDiscretization(0, 1), ConfigError);
    CHECK_THROWS_AS(WaveDiscretization(20, 0), ConfigError);
  }
}
