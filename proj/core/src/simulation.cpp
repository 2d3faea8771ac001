#include "yeelab/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "yeelab/errors.hpp"
#include "yeelab/phasor.hpp"

namespace yeelab {

namespace {

constexpr std::int64_t kGateMargin = 4;
constexpr double kDivergenceFactor = 1e6;
constexpr double kSettleTolerance = 1e-8;
constexpr int kMaxRetries = 3;
// Timings stretch by kCutoffMargin / q where q is the relative distance of the
// drive frequency below the nearest grid cutoff.
constexpr double kCutoffMargin = 0.6;

std::int64_t ceil_steps(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

double medium_wavelength_cells(const Medium& m, const WaveDiscretization& wd) {
  return wd.n_lambda() / m.refractive_index();
}

double cutoff_stretch(const InterfaceCase& ic, const WaveDiscretization& wd) {
  double stretch = 1.0;
  for (const Medium* m : {&ic.medium1(), &ic.medium2()}) {
    const double ratio = wd.courant() / m->refractive_index();
    if (ratio >= 1.0) {
      continue;  // no cutoff below the Nyquist frequency
    }
    const double q = std::asin(ratio) / wd.half_omega_dt() - 1.0;
    if (q > 0.0) {
      stretch = std::max(stretch, kCutoffMargin / q);
    }
  }
  return stretch;
}

void require_gated(const SimConfig& c, const MeasurementSchedule& sch) {
  const std::int64_t left = as_int(c.s) + as_int(c.probe_r);
  const std::int64_t last = as_int(c.m_total) - 1;
  const std::int64_t right = (last - as_int(c.s)) + (last - as_int(c.probe_t));
  if (sch.total_steps + kGateMargin > left || sch.total_steps + kGateMargin > right) {
    std::ostringstream msg;
    msg << "grid too short for time gating: " << sch.total_steps
        << " steps need s + probe_r and the right-end round trip to exceed "
        << sch.total_steps + kGateMargin << " (have " << left << " and " << right << ")";
    throw ConfigError(msg.str());
  }
}

// Moves the layout right and extends it until the schedule is gated again.
SimConfig regate(SimConfig c) {
  const MeasurementSchedule sch = measurement_schedule(c);
  const std::int64_t need = sch.total_steps + kGateMargin + 1;
  const std::int64_t left = as_int(c.s) + as_int(c.probe_r);
  if (left < need) {
    const auto shift = static_cast<std::size_t>((need - left + 1) / 2);
    c.b += shift;
    c.s += shift;
    c.probe_r += shift;
    c.probe_t += shift;
    c.m_total += shift;
  }
  const std::int64_t last = as_int(c.m_total) - 1;
  const std::int64_t right = (last - as_int(c.s)) + (last - as_int(c.probe_t));
  if (right < need) {
    c.m_total += static_cast<std::size_t>((need - right + 1) / 2);
  }
  return c;
}

}  // namespace

double interface_position(const SimConfig& config) noexcept {
  const auto b = static_cast<double>(config.b);
  return config.ic.kind() == InterfaceKind::DielectricPair ? b - 0.5 : b;
}

MeasurementSchedule measurement_schedule(const SimConfig& c) {
  const double period = c.wd.steps_per_period();
  const double v1 = group_velocity_cells_per_step(c.ic.medium1(), c.wd);
  const double v2 = group_velocity_cells_per_step(c.ic.medium2(), c.wd);
  const auto b = static_cast<double>(c.b);
  const auto s = static_cast<double>(c.s) - static_cast<double>(incident_lead(c));
  const double to_transmit = (b - s) / v1 + (static_cast<double>(c.probe_t) - b) / v2;
  const double to_reflect = (2.0 * b - s - static_cast<double>(c.probe_r)) / v1;

  MeasurementSchedule sch{};
  sch.ramp_steps = ceil_steps(c.ramp_periods * period);
  sch.arrival_steps = ceil_steps(std::max(to_transmit, to_reflect));
  sch.first_window =
      sch.ramp_steps + sch.arrival_steps + ceil_steps(c.n_warmup_periods * period);
  sch.window_steps = ceil_steps(c.n_measure_periods * period);
  sch.total_steps = sch.first_window + 2 * sch.window_steps - 1;
  return sch;
}

std::size_t incident_lead(const SimConfig& config) {
  const double lambda1 = medium_wavelength_cells(config.ic.medium1(), config.wd);
  return static_cast<std::size_t>(std::max(4.0, std::ceil(lambda1)));
}

SimConfig SimConfig::gated(const InterfaceCase& ic, const WaveDiscretization& wd,
                           const SimTiming& timing) {
  const double lambda1 = medium_wavelength_cells(ic.medium1(), wd);
  const double lambda2 = medium_wavelength_cells(ic.medium2(), wd);
  const auto gap_rs = static_cast<std::size_t>(std::max(4.0, std::ceil(lambda1)));
  const auto gap_sb = static_cast<std::size_t>(std::max(6.0, std::ceil(2.0 * lambda1)));
  const auto gap_bt = static_cast<std::size_t>(std::max(6.0, std::ceil(2.0 * lambda2)));

  const double stretch = cutoff_stretch(ic, wd);
  SimConfig c{.ic = ic, .wd = wd};
  c.n_warmup_periods = timing.n_warmup_periods * stretch;
  c.n_measure_periods =
      static_cast<int>(std::ceil(static_cast<double>(timing.n_measure_periods) * stretch));
  c.ramp_periods = timing.ramp_periods * stretch;
  c.probe_r = 1;
  c.s = c.probe_r + gap_rs;
  c.b = c.s + gap_sb;
  c.probe_t = c.b + gap_bt;
  c.m_total = c.probe_t + 2;
  return regate(c);
}

void SimConfig::validate() const {
  if (!(0 < probe_r && probe_r < s && s < b && b < probe_t && probe_t + 1 < m_total)) {
    std::ostringstream msg;
    msg << "layout must satisfy 0 < probe_r < s < b < probe_t < M-1 (got probe_r=" << probe_r
        << ", s=" << s << ", b=" << b << ", probe_t=" << probe_t << ", M=" << m_total << ")";
    throw ConfigError(msg.str());
  }
  if (!(amplitude > 0.0)) {
    throw ConfigError("source amplitude must be positive");
  }
  if (n_measure_periods < 1 || !(n_warmup_periods >= 0.0) || !(ramp_periods >= 0.0)) {
    throw ConfigError("timing requires measure periods >= 1 and non-negative warm-up and ramp");
  }
  if (dump && dump->every < 1) {
    throw ConfigError("field dump interval must be >= 1");
  }
  const double limit = optimal_courant(ic);
  if (enforce_stability && wd.courant() > limit) {
    std::ostringstream msg;
    msg << "S_c = " << wd.courant() << " exceeds min(n_r) = " << limit
        << "; the scheme diverges";
    throw ConfigError(msg.str());
  }
  // Both media must carry a propagating discrete wave.
  (void)solve_k_tilde(ic.medium1(), wd);
  (void)solve_k_tilde(ic.medium2(), wd);
  require_gated(*this, measurement_schedule(*this));
}

HarmonicIncident::HarmonicIncident(const SimConfig& config, double x_source)
    : amplitude_(config.amplitude),
      omega_(config.wd.angular_frequency()),
      k1_(2.0 * solve_k_tilde(config.ic.medium1(), config.wd)),
      eta1_(config.ic.medium1().impedance()),
      x_ref_(interface_position(config)),
      x_source_(x_source),
      group_velocity_(group_velocity_cells_per_step(config.ic.medium1(), config.wd) /
                      config.wd.time_step()),
      ramp_time_(config.ramp_periods * 2.0 * kPi / omega_) {}

double HarmonicIncident::envelope(double t, double x) const noexcept {
  const double tau = t - (x - x_source_) / group_velocity_;
  if (tau <= 0.0) {
    return 0.0;
  }
  if (tau >= ramp_time_) {
    return 1.0;
  }
  return 0.5 * (1.0 - std::cos(kPi * tau / ramp_time_));
}

double HarmonicIncident::e(double t, double x) const {
  return amplitude_ * envelope(t, x) * std::sin(omega_ * t - k1_ * (x - x_ref_));
}

double HarmonicIncident::h(double t, double x) const { return -e(t, x) / eta1_; }

GaussianPulseIncident::GaussianPulseIncident(const Medium& medium, double amplitude,
                                             double x_source, double delay, double width)
    : amplitude_(amplitude),
      slowness_(medium.refractive_index()),
      eta_(medium.impedance()),
      x_source_(x_source),
      delay_(delay),
      width_(width) {}

double GaussianPulseIncident::e(double t, double x) const {
  const double arg = (t - delay_ - slowness_ * (x - x_source_)) / width_;
  return amplitude_ * std::exp(-arg * arg);
}

double GaussianPulseIncident::h(double t, double x) const { return -e(t, x) / eta_; }

FieldState build(const SimConfig& config) {
  config.validate();
  const std::size_t m_total = config.m_total;
  FieldState st;
  st.e.assign(m_total, 0.0);
  st.h.assign(m_total, 0.0);
  st.eps_of_m.resize(m_total);
  st.mu_of_m.resize(m_total);
  const Medium& m1 = config.ic.medium1();
  const Medium& m2 = config.ic.medium2();
  for (std::size_t m = 0; m < m_total; ++m) {
    if (config.ic.kind() == InterfaceKind::DielectricPair) {
      st.eps_of_m[m] = m < config.b ? m1.epsilon_r() : m2.epsilon_r();
      st.mu_of_m[m] = m1.mu_r();
    } else {
      st.eps_of_m[m] = m1.epsilon_r();
      st.mu_of_m[m] = m <= config.b ? m1.mu_r() : m2.mu_r();
    }
  }
  const double sc = config.wd.courant();
  st.e_coef.resize(m_total);
  st.h_coef.resize(m_total);
  std::transform(st.eps_of_m.begin(), st.eps_of_m.end(), st.e_coef.begin(),
                 [sc](double eps) { return sc / eps; });
  std::transform(st.mu_of_m.begin(), st.mu_of_m.end(), st.h_coef.begin(),
                 [sc](double mu) { return sc / mu; });
  return st;
}

IncidentLine::IncidentLine(const SimConfig& config, const IncidentWave& drive, std::size_t lead,
                           std::int64_t steps)
    : drive_(&drive),
      dt_(config.wd.time_step()),
      e_coef_(config.wd.courant() / config.ic.medium1().epsilon_r()),
      h_coef_(config.wd.courant() / config.ic.medium1().mu_r()),
      x_drive_(static_cast<double>(config.s) - static_cast<double>(lead)) {
  // Leakage from the drive point travels left, reflects off node 0 and must not
  // get back to the tap; the wave itself must not return from the right end.
  const auto need = static_cast<std::size_t>(std::max<std::int64_t>(steps, 0) + kGateMargin);
  tap_ = (need + lead + 1) / 2 + 1;
  drive_node_ = tap_ - lead;
  const std::size_t length = tap_ + 2 + (need + 1) / 2;
  e_.assign(length, 0.0);
  h_.assign(length, 0.0);
}

TfsfFeed IncidentLine::advance() {
  TfsfFeed feed{.e = e_[tap_], .h = 0.0};
  const std::size_t n = e_.size();
  const double t_e = static_cast<double>(q_) * dt_;
  for (std::size_t m = 1; m < n; ++m) {
    h_[m] += h_coef_ * (e_[m] - e_[m - 1]);
  }
  h_[drive_node_] -= h_coef_ * drive_->e(t_e, x_drive_);
  for (std::size_t m = 0; m + 1 < n; ++m) {
    e_[m] += e_coef_ * (h_[m + 1] - h_[m]);
  }
  e_[drive_node_] -= e_coef_ * drive_->h(t_e + 0.5 * dt_, x_drive_ - 0.5);
  ++q_;
  feed.h = h_[tap_];
  return feed;
}

void step(FieldState& st, const SimConfig& config, const IncidentWave& incident) {
  const double dt = config.wd.time_step();
  const double t_e = static_cast<double>(st.q) * dt;
  const auto src = static_cast<double>(config.s);
  step(st, config, TfsfFeed{.e = incident.e(t_e, src), .h = incident.h(t_e + 0.5 * dt, src - 0.5)});
}

void step(FieldState& st, const SimConfig& config, const TfsfFeed& feed) {
  const std::size_t m_total = st.e.size();
  const std::size_t s = config.s;

  double* e = st.e.data();
  double* h = st.h.data();
  const double* ce = st.e_coef.data();
  const double* ch = st.h_coef.data();

  for (std::size_t m = 1; m < m_total; ++m) {
    h[m] += ch[m] * (e[m] - e[m - 1]);
  }
  h[s] -= ch[s] * feed.e;

  // e[M-1] stays zero (conducting wall).
  for (std::size_t m = 0; m + 1 < m_total; ++m) {
    e[m] += ce[m] * (h[m + 1] - h[m]);
  }
  e[s] -= ce[s] * feed.h;

  ++st.q;

  const double limit = kDivergenceFactor * config.amplitude;
  double peak = 0.0;
  for (std::size_t m = 0; m < m_total; ++m) {
    peak = std::max({peak, std::abs(e[m]), std::abs(h[m])});
  }
  if (!(peak <= limit)) {
    std::ostringstream msg;
    msg << "field magnitude " << peak << " exceeded " << limit << " at step " << st.q
        << " (S_c = " << config.wd.courant() << ", min n_r = " << optimal_courant(config.ic)
        << ")";
    throw DivergenceDetected(st.q, msg.str());
  }
}

namespace {

struct ProbeRun {
  std::vector<std::complex<double>> first;
  std::vector<std::complex<double>> second;
  std::vector<double> peaks;
  std::int64_t steps;
};

ProbeRun run_probes(const SimConfig& config, const std::vector<std::size_t>& nodes) {
  FieldState st = build(config);
  const MeasurementSchedule sch = measurement_schedule(config);
  const std::size_t lead = incident_lead(config);
  const HarmonicIncident drive(config, static_cast<double>(config.s) - static_cast<double>(lead));
  IncidentLine line(config, drive, lead, sch.total_steps);
  const double omega_dt = config.wd.angular_frequency() * config.wd.time_step();

  std::vector<PhasorProbe> first;
  std::vector<PhasorProbe> second;
  for (std::size_t node : nodes) {
    first.emplace_back(node, omega_dt, sch.first_window, sch.window_steps, ProbeWindow::BlackmanHarris);
    second.emplace_back(node, omega_dt, sch.first_window + sch.window_steps, sch.window_steps, ProbeWindow::BlackmanHarris);
  }

  std::ofstream dump;
  if (config.dump) {
    dump.open(config.dump->path);
    if (!dump) {
      throw Error("cannot open field dump file " + config.dump->path);
    }
    dump << "q,m,E,H\n";
    dump.precision(17);
  }

  while (st.q < sch.total_steps) {
    step(st, config, line.advance());
    if (st.q >= sch.first_window) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        first[i].accumulate(st.q, st.e[nodes[i]]);
        second[i].accumulate(st.q, st.e[nodes[i]]);
      }
    }
    if (dump.is_open() && st.q % config.dump->every == 0) {
      for (std::size_t m = 0; m < st.e.size(); ++m) {
        dump << st.q << ',' << m << ',' << st.e[m] << ',' << st.h[m] << '\n';
      }
    }
  }

  ProbeRun run{.steps = st.q};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    run.first.push_back(first[i].phasor());
    run.second.push_back(second[i].phasor());
    run.peaks.push_back(std::max(first[i].peak(), second[i].peak()));
  }
  return run;
}

double max_drift(const ProbeRun& run, double amplitude) {
  double drift = 0.0;
  for (std::size_t i = 0; i < run.first.size(); ++i) {
    drift = std::max(drift, std::abs(run.second[i] - run.first[i]) / amplitude);
  }
  return drift;
}

// Runs until two successive windows agree, doubling the warm-up on failure.
// Probe nodes are re-derived per attempt because regating shifts the layout.
template <typename Nodes, typename Fn>
auto settle(const SimConfig& config, Nodes&& nodes_of, Fn&& finish) {
  SimConfig cfg = config;
  double drift = 0.0;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    if (attempt > 0) {
      cfg.n_warmup_periods = std::max(1.0, 2.0 * cfg.n_warmup_periods);
      cfg = regate(cfg);
    }
    const std::vector<std::size_t> nodes = nodes_of(cfg);
    const ProbeRun run = run_probes(cfg, nodes);
    drift = max_drift(run, cfg.amplitude);
    if (drift <= kSettleTolerance) {
      return finish(cfg, nodes, run, drift, attempt + 1);
    }
  }
  std::ostringstream msg;
  msg << "probes did not settle: window drift " << drift << " > " << kSettleTolerance
      << " after " << kMaxRetries << " warm-up doublings";
  throw NotSettled(msg.str());
}

}  // namespace

MeasuredFresnel run_and_measure(const SimConfig& config) {
  config.validate();
  const auto finish = [](const SimConfig& cfg, const std::vector<std::size_t>&,
                          const ProbeRun& run, double drift, int attempts) {
    using cplx = std::complex<double>;
    const double x_ref = interface_position(cfg);
    const double k1 = 2.0 * solve_k_tilde(cfg.ic.medium1(), cfg.wd);
    const double k2 = 2.0 * solve_k_tilde(cfg.ic.medium2(), cfg.wd);
    const double d_r = static_cast<double>(cfg.probe_r) - x_ref;
    const double d_t = static_cast<double>(cfg.probe_t) - x_ref;
    // reflected ~ r E0 exp(i(wt + k1 d)), transmitted ~ t E0 exp(i(wt - k2 d))
    const cplx r = run.second[0] * std::polar(1.0, -k1 * d_r) / cfg.amplitude;
    const cplx t = run.second[1] * std::polar(1.0, k2 * d_t) / cfg.amplitude;
    return MeasuredFresnel{.r_meas = r.real(),
                           .t_meas = t.real(),
                           .r_imag = r.imag(),
                           .t_imag = t.imag(),
                           .window_drift = drift,
                           .scattered_peak = run.peaks[0] / cfg.amplitude,
                           .steps = run.steps,
                           .attempts = attempts,
                           .m_total = cfg.m_total};
  };
  const auto nodes_of = [](const SimConfig& cfg) {
    return std::vector<std::size_t>{cfg.probe_r, cfg.probe_t};
  };
  return settle(config, nodes_of, finish);
}

double measure_wavelength(const Medium& medium, const WaveDiscretization& wd,
                          const SimTiming& timing) {
  const InterfaceCase uniform(InterfaceKind::DielectricPair, medium, medium);
  const SimConfig cfg = SimConfig::gated(uniform, wd, timing);
  cfg.validate();
  const auto nodes_of = [](const SimConfig& c) {
    std::vector<std::size_t> nodes;
    for (std::size_t m = c.s + 1; m <= c.probe_t; ++m) {
      nodes.push_back(m);
    }
    return nodes;
  };
  const auto finish = [](const SimConfig&, const std::vector<std::size_t>& nodes,
                         const ProbeRun& run, double, int) {
    // Unwrapped phase is linear in m with slope -k~.
    std::vector<double> phase(nodes.size());
    double previous = 0.0;
    double offset = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double raw = std::arg(run.second[i]);
      if (i > 0) {
        double jump = raw + offset - previous;
        while (jump > kPi) {
          offset -= 2.0 * kPi;
          jump -= 2.0 * kPi;
        }
        while (jump < -kPi) {
          offset += 2.0 * kPi;
          jump += 2.0 * kPi;
        }
      }
      phase[i] = raw + offset;
      previous = phase[i];
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const auto n = static_cast<double>(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto x = static_cast<double>(nodes[i]);
      sx += x;
      sy += phase[i];
      sxx += x * x;
      sxy += x * phase[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return 2.0 * kPi / -slope;
  };
  return settle(cfg, nodes_of, finish);
}

}  // namespace yeelab
