#include <cmath>
#include <random>
#include <vector>

#include "discrete_oracle.hpp"
#include "doctest.h"
#include "yeelab/errors.hpp"
#include "yeelab/fresnel.hpp"

using namespace yeelab;
using doctest::Approx;

namespace {

FresnelPair oracle_pair(const InterfaceCase& ic, const WaveDiscretization& wd) {
  const Medium& m1 = ic.medium1();
  const Medium& m2 = ic.medium2();
  const auto c = ic.kind() == InterfaceKind::DielectricPair
                     ? oracle::dielectric(m1.epsilon_r(), m2.epsilon_r(), m1.mu_r(), wd.n_lambda(),
                                          wd.courant())
                     : oracle::magnetic(m1.mu_r(), m2.mu_r(), m1.epsilon_r(), wd.n_lambda(),
                                        wd.courant());
  REQUIRE(c.has_value());
  CHECK(std::abs(static_cast<double>(c->r.imag())) < 1e-14);
  CHECK(std::abs(static_cast<double>(c->t.imag())) < 1e-14);
  return {static_cast<double>(c->r.real()), static_cast<double>(c->t.real())};
}

std::vector<InterfaceCase> sample_interfaces() {
  std::vector<InterfaceCase> out;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> value(1.0, 12.0);
  for (int i = 0; i < 40; ++i) {
    const double a = value(rng);
    const double b = value(rng);
    const double c = value(rng);
    out.push_back(i % 2 ? InterfaceCase::magnetic(a, b, c) : InterfaceCase::dielectric(a, b, c));
  }
  return out;
}

}  // namespace

TEST_SUITE("fresnel") {
  TEST_CASE("continuum coefficients for the weak-contrast pair") {
    const FresnelPair f = exact_fresnel(InterfaceCase::dielectric(3, 4, 2));
    CHECK(f.r == Approx(-0.071796769724490812).epsilon(1e-15));
    CHECK(f.t == Approx(0.92820323027550919).epsilon(1e-15));
    const PowerPair p = exact_power(InterfaceCase::dielectric(3, 4, 2));
    CHECK(p.R == Approx(0.0051547761428715605).epsilon(1e-14));
    CHECK(p.T == Approx(0.99484522385712844).epsilon(1e-14));
  }

  TEST_CASE("frozen discrete values of the weak-contrast pair") {
    const WaveDiscretization wd(20, 1);
    const InterfaceCase die = InterfaceCase::dielectric(3, 4, 2);
    const FresnelPair f = fdtd_fresnel(die, wd);
    CHECK(f.r == Approx(-0.086473478605026052).epsilon(1e-13));
    CHECK(f.t == Approx(0.94091363301000138).epsilon(1e-13));
    const PowerPair p = fdtd_power(die, wd);
    CHECK(p.R == Approx(0.0074776625020538983).epsilon(1e-13));
    CHECK(p.T == Approx(1.0222777079232691).epsilon(1e-13));
    const ErrorReport err = error_report(die, wd);
    CHECK(err.delta_R == Approx(45.0628).epsilon(1e-5));
    CHECK(err.delta_T == Approx(2.7575).epsilon(1e-4));

    const InterfaceCase mag = InterfaceCase::magnetic(4, 3, 2);
    const FresnelPair g = fdtd_fresnel(mag, wd);
    CHECK(g.r == Approx(-0.086473478605026065).epsilon(1e-13));
    CHECK(g.t == Approx(0.91352652139497393).epsilon(1e-13));
    CHECK(fdtd_power(mag, wd).T == Approx(0.96363305469469094).epsilon(1e-13));
  }

  TEST_CASE("closed forms agree with the recurrence solved directly") {
    for (const InterfaceCase& ic : sample_interfaces()) {
      for (double n_lambda : {15.0, 30.0, 90.0}) {
        for (double courant : {1.0, optimal_courant(ic)}) {
          const WaveDiscretization wd(n_lambda, courant);
          FresnelPair f{};
          try {
            f = fdtd_fresnel(ic, wd);
          } catch (const EvanescentRegime&) {
            continue;
          }
          const FresnelPair ref = oracle_pair(ic, wd);
          CHECK(f.r == Approx(ref.r).epsilon(1e-11).scale(1.0));
          CHECK(f.t == Approx(ref.t).epsilon(1e-11).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("boundary residuals vanish only for the discrete pair") {
    const InterfaceCase ic = InterfaceCase::magnetic(1, 5, 2);
    const WaveDiscretization wd(18, 1);
    const BoundaryResiduals ok = boundary_residuals(ic, wd, fdtd_fresnel(ic, wd));
    CHECK(std::abs(ok.first) / ok.scale < 1e-13);
    CHECK(std::abs(ok.second) / ok.scale < 1e-13);
    const BoundaryResiduals off = boundary_residuals(ic, wd, exact_fresnel(ic));
    CHECK(std::max(std::abs(off.first), std::abs(off.second)) / off.scale > 1e-4);
  }

  TEST_CASE("power balance holds for continuum and discrete coefficients") {
    for (const InterfaceCase& ic : sample_interfaces()) {
      const PowerPair p = exact_power(ic);
      CHECK(p.R + p.T == Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("sign laws follow the impedance ratio") {
    for (const InterfaceCase& ic : sample_interfaces()) {
      const WaveDiscretization wd(60, 1);
      FresnelPair f{};
      try {
        f = fdtd_fresnel(ic, wd);
      } catch (const EvanescentRegime&) {
        continue;
      }
      const double eta = ic.impedance_ratio();
      const double r = exact_fresnel(ic).r;
      CHECK((eta > 1 ? f.r < r : f.r > r));
      if (eta > 1) {
        CHECK(f.r < 0);
        CHECK(f.t < 1);
      } else {
        CHECK(f.r > 0);
        CHECK(f.t > 1);
      }
      CHECK(f.t > 0);
    }
  }

  TEST_CASE("swapping the media flips r and keeps 1 + r = t for the magnetic pair") {
    for (const InterfaceCase& ic : sample_interfaces()) {
      const FresnelPair a = exact_fresnel(ic);
      const FresnelPair b = exact_fresnel(ic.swapped());
      CHECK(a.r == Approx(-b.r).epsilon(1e-14));
      if (ic.kind() == InterfaceKind::MagneticPair) {
        const WaveDiscretization wd(50, optimal_courant(ic));
        const FresnelPair f = fdtd_fresnel(ic, wd);
        CHECK(1 + f.r == Approx(f.t).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("errors decay at second order and vanish in the fine-grid limit") {
    for (const InterfaceCase& ic : sample_interfaces()) {
      const FresnelPair exact = exact_fresnel(ic);
      const FresnelPair far = fdtd_fresnel(ic, WaveDiscretization(1e6, 1));
      CHECK(std::abs(far.r - exact.r) < 1e-9);
      CHECK(std::abs(far.t - exact.t) < 1e-9);
      const auto err = [&](double n) {
        return std::abs(fdtd_fresnel(ic, WaveDiscretization(n, 1)).t - exact.t);
      };
      const double ratio = err(200) / err(400);
      CHECK(ratio == Approx(4.0).epsilon(0.02));
    }
  }

  TEST_CASE("relative errors shrink as the grid is refined") {
    const InterfaceCase ic = InterfaceCase::dielectric(1, 4, 16);
    double last = 1e300;
    for (double n = 40; n <= 120; n += 5) {
      const double d = error_report(ic, WaveDiscretization(n, 1)).delta_R;
      CHECK(d < last);
      last = d;
    }
  }

  TEST_CASE("high-contrast values") {
    const WaveDiscretization wd(50, 1);
    const InterfaceCase up = InterfaceCase::dielectric(1, 100, 2);
    const PowerPair p = fdtd_power(up, wd);
    CHECK(p.R == Approx(0.8313).epsilon(2e-4));
    CHECK(p.T == Approx(0.3655).epsilon(3e-4));
    const ErrorReport e = error_report(up, wd);
    CHECK(e.delta_R == Approx(24.18).epsilon(5e-4));
    CHECK(e.delta_T == Approx(10.56).epsilon(5e-4));
    const InterfaceCase down = InterfaceCase::dielectric(100, 1, 2);
    CHECK(fdtd_power(down, wd).T == Approx(0.0779).epsilon(1e-3));
    CHECK(error_report(down, wd).delta_T == Approx(76.4).epsilon(1e-3));
  }

  TEST_CASE("Courant-mode comparison") {
    const InterfaceCase ic = InterfaceCase::dielectric(1, 4, 16);
    const CourantModeComparison c40 = compare_courant_modes(ic, 40);
    CHECK(c40.standard.delta_R == Approx(57.62).epsilon(1e-3));
    CHECK(c40.delta_R_diff == Approx(2.525).epsilon(1e-3));
    CHECK(c40.delta_T_diff == Approx(0.537).epsilon(2e-3));
    const CourantModeComparison c70 = compare_courant_modes(ic, 70);
    CHECK(c70.standard.delta_R == Approx(14.38).epsilon(1e-3));
    CHECK(c70.delta_R_diff == Approx(0.1608).epsilon(2e-3));
    CHECK(c40.delta_R_diff == Approx(c40.standard.delta_R - c40.optimal.delta_R));
  }

  TEST_CASE("degenerate and inconsistent interfaces") {
    const InterfaceCase same = InterfaceCase::dielectric(2, 2, 1);
    CHECK(same.identical_media());
    CHECK_THROWS_AS((void)error_report(same, WaveDiscretization(20, 1)), DegenerateInterface);
    CHECK_THROWS_AS(InterfaceCase(InterfaceKind::DielectricPair, Medium(1, 1), Medium(2, 2)),
                    ConfigError);
    CHECK_THROWS_AS((void)fdtd_fresnel_dielectric(InterfaceCase::magnetic(1, 2, 1),
                                                  WaveDiscretization(20, 1)),
                    ConfigError);
    CHECK_THROWS_AS((void)fdtd_fresnel(InterfaceCase::dielectric(1, 100, 1),
                                       WaveDiscretization(20, 1)),
                    EvanescentRegime);
  }
}
