#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "discrete_oracle.hpp"
#include "doctest.h"
#include "yeelab/errors.hpp"
#include "yeelab/phasor.hpp"
#include "yeelab/simulation.hpp"

using namespace yeelab;

TEST_SUITE("simulation") {
  TEST_CASE("gated layout is valid and places the probes around the interface") {
    const InterfaceCase ic = InterfaceCase::dielectric(1, 4, 1);
    const SimConfig cfg = SimConfig::gated(ic, WaveDiscretization(20, 1));
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.probe_r < cfg.s);
    CHECK(cfg.s < cfg.b);
    CHECK(cfg.b < cfg.probe_t);
    CHECK(cfg.probe_t < cfg.m_total);
    CHECK(interface_position(cfg) == doctest::Approx(cfg.b - 0.5));
    const SimConfig mag = SimConfig::gated(InterfaceCase::magnetic(1, 4, 1), WaveDiscretization(20, 1));
    CHECK(interface_position(mag) == doctest::Approx(static_cast<double>(mag.b)));
  }

  TEST_CASE("material maps follow the node conventions") {
    const SimConfig cfg = SimConfig::gated(InterfaceCase::dielectric(2, 5, 3), WaveDiscretization(20, 1));
    const FieldState st = build(cfg);
    CHECK(st.eps_of_m[cfg.b - 1] == 2.0);
    CHECK(st.eps_of_m[cfg.b] == 5.0);
    CHECK(st.mu_of_m[cfg.b] == 3.0);
    const SimConfig mag = SimConfig::gated(InterfaceCase::magnetic(2, 5, 3), WaveDiscretization(20, 1));
    const FieldState ms = build(mag);
    CHECK(ms.mu_of_m[mag.b] == 2.0);
    CHECK(ms.mu_of_m[mag.b + 1] == 5.0);
    CHECK(ms.eps_of_m[mag.b] == 3.0);
  }

  TEST_CASE("measured coefficients match the recurrence oracle") {
    struct Case {
      InterfaceCase ic;
      double n_lambda;
      double courant;
    };
    for (const Case& c : {Case{InterfaceCase::dielectric(3, 4, 2), 20, 1},
                          Case{InterfaceCase::dielectric(9, 1, 1), 30, 1},
                          Case{InterfaceCase::magnetic(4, 3, 2), 20, 1},
                          Case{InterfaceCase::magnetic(1, 6, 1.5), 25, std::sqrt(1.5)}}) {
      const WaveDiscretization wd(c.n_lambda, c.courant);
      const MeasuredFresnel m = run_and_measure(SimConfig::gated(c.ic, wd));
      const Medium& m1 = c.ic.medium1();
      const Medium& m2 = c.ic.medium2();
      const auto ref = c.ic.kind() == InterfaceKind::DielectricPair
                           ? oracle::dielectric(m1.epsilon_r(), m2.epsilon_r(), m1.mu_r(),
                                                c.n_lambda, c.courant)
                           : oracle::magnetic(m1.mu_r(), m2.mu_r(), m1.epsilon_r(), c.n_lambda,
                                              c.courant);
      REQUIRE(ref.has_value());
      CHECK(std::abs(m.r_meas - static_cast<double>(ref->r.real())) < 1e-6);
      CHECK(std::abs(m.t_meas - static_cast<double>(ref->t.real())) < 1e-6);
      CHECK(std::abs(m.r_imag) < 1e-6);
      CHECK(m.window_drift < 1e-8);
    }
  }

  TEST_CASE("identical media give no scattered field") {
    const MeasuredFresnel m =
        run_and_measure(SimConfig::gated(InterfaceCase::dielectric(4, 4, 1), WaveDiscretization(20, 1)));
    CHECK(std::abs(m.r_meas) < 1e-10);
    CHECK(m.t_meas == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.scattered_peak < 1e-10);
  }

  TEST_CASE("runs are deterministic") {
    const SimConfig cfg = SimConfig::gated(InterfaceCase::magnetic(2, 7, 1), WaveDiscretization(24, 1));
    const MeasuredFresnel a = run_and_measure(cfg);
    const MeasuredFresnel b = run_and_measure(cfg);
    CHECK(a.r_meas == b.r_meas);
    CHECK(a.t_meas == b.t_meas);
    CHECK(a.steps == b.steps);
  }

  TEST_CASE("steady-state wavelength follows the discrete dispersion relation") {
    const Medium m(4, 2);
    const WaveDiscretization wd(30, 1);
    const double expected = 2 * kPi / (2 * solve_k_tilde(m, wd));
    CHECK(measure_wavelength(m, wd) == doctest::Approx(expected).epsilon(1e-9));
  }

  TEST_CASE("at the magic Courant number the wavelength is exact") {
    CHECK(measure_wavelength(Medium(4, 1), WaveDiscretization(20, 2)) == doctest::Approx(10.0).epsilon(1e-10));
  }

  TEST_CASE("incident line carries the analytic tone at the source node") {
    // The ramp leaves a slowly dispersing broadband tail, so compare phasors.
    const SimConfig cfg = SimConfig::gated(InterfaceCase::dielectric(2, 2, 1), WaveDiscretization(20, 1));
    const std::size_t lead = incident_lead(cfg);
    const HarmonicIncident wave(cfg, static_cast<double>(cfg.s) - static_cast<double>(lead));
    IncidentLine line(cfg, wave, lead, 2000);
    const double omega_dt = cfg.wd.angular_frequency() * cfg.wd.time_step();
    PhasorProbe fed(cfg.s, omega_dt, 1000, 1000, ProbeWindow::BlackmanHarris);
    PhasorProbe analytic(cfg.s, omega_dt, 1000, 1000, ProbeWindow::BlackmanHarris);
    for (std::int64_t q = 0; q < 2000; ++q) {
      const TfsfFeed f = line.advance();
      fed.accumulate(q, f.e);
      analytic.accumulate(q, wave.e(static_cast<double>(q) * cfg.wd.time_step(), static_cast<double>(cfg.s)));
    }
    CHECK(std::abs(fed.phasor() - analytic.phasor()) < 1e-9);
    CHECK(std::abs(analytic.phasor()) == doctest::Approx(1.0));
  }

  TEST_CASE("the stability bound is enforced and divergence is detected") {
    const InterfaceCase ic = InterfaceCase::dielectric(4, 9, 1);
    const WaveDiscretization wd(40, 2.1);
    SimConfig cfg = SimConfig::gated(ic, WaveDiscretization(40, 2.0));
    cfg.wd = wd;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.enforce_stability = false;
    try {
      (void)run_and_measure(cfg);
      FAIL("expected divergence");
    } catch (const DivergenceDetected& e) {
      CHECK(e.step() > 0);
    }
  }

  TEST_CASE("layouts that violate ordering or gating are rejected") {
    SimConfig cfg = SimConfig::gated(InterfaceCase::dielectric(1, 2, 1), WaveDiscretization(20, 1));
    SimConfig bad = cfg;
    bad.s = bad.b + 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.m_total = bad.probe_t + 2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.amplitude = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS((void)SimConfig::gated(InterfaceCase::dielectric(1, 100, 1), WaveDiscretization(20, 1)),
                    EvanescentRegime);
  }

  TEST_CASE("field dump writes one row per node per dumped step") {
    SimConfig cfg = SimConfig::gated(InterfaceCase::dielectric(1, 2, 1), WaveDiscretization(20, 1));
    const std::string path = "yeelab_test_dump.csv";
    cfg.dump = FieldDump{path, 500};
    const MeasuredFresnel m = run_and_measure(cfg);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
      ++lines;
    }
    const auto dumped = static_cast<std::size_t>(m.steps / 500);
    CHECK(lines == 1 + dumped * m.m_total);
    std::remove(path.c_str());
  }
}
