#pragma once

// One-dimensional Yee time stepper with a total-field/scattered-field plane
// wave source and steady-state phasor probes.
//
// Grid conventions (natural units, dx = 1, dt = S_c):
//   e[m]  E_z at node m, m = 0 .. M-1
//   h[m]  H_y at position m - 1/2, between e[m-1] and e[m]; h[0] is a fixed wall
// Dielectric pair: eps_of_m[m] = eps1 for m < b, eps2 for m >= b. The H node
//   h[b] lies on the interface (x = b - 1/2).
// Magnetic pair: mu_of_m[m] = mu1 for m <= b, mu2 for m > b. The E node e[b]
//   lies on the interface (x = b).
// The total-field region is m >= s for E; h[s] is the scattered-field side of
// the source boundary and carries the H correction.
//
// Harmonic runs take the two TFSF correction values from an auxiliary
// homogeneous medium-1 line rather than from the analytic waveform, so the
// injected wave is an exact discrete solution even while the ramp is on.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "yeelab/dispersion.hpp"
#include "yeelab/fresnel.hpp"

namespace yeelab {

struct FieldDump {
  std::string path;
  std::int64_t every = 1;
};

struct SimTiming {
  double ramp_periods = 5.0;
  double n_warmup_periods = 10.0;
  int n_measure_periods = 10;
};

struct SimConfig {
  InterfaceCase ic;
  WaveDiscretization wd;
  std::size_t m_total = 0;
  std::size_t b = 0;
  std::size_t s = 0;
  std::size_t probe_r = 0;
  std::size_t probe_t = 0;
  double n_warmup_periods = 10.0;
  int n_measure_periods = 10;
  double ramp_periods = 5.0;
  double amplitude = 1.0;
  /// When false the S_c <= min(n_r) check is skipped so that divergence
  /// detection can be exercised.
  bool enforce_stability = true;
  std::optional<FieldDump> dump;

  /// Layout sized so that no reflection from either grid end reaches a probe
  /// before the last measurement sample. Ramp, warm-up and measurement
  /// lengths are stretched when the drive frequency sits close to the grid
  /// cutoff of either medium, where the ramp transient disperses slowly.
  static SimConfig gated(const InterfaceCase& ic, const WaveDiscretization& wd,
                         const SimTiming& timing = {});

  /// Throws ConfigError (ordering, stability, time gating) or EvanescentRegime.
  void validate() const;
};

/// Step indices of the run. Samples are taken after each full step, so sample
/// q holds E at time q dt.
struct MeasurementSchedule {
  std::int64_t ramp_steps;
  std::int64_t arrival_steps;
  std::int64_t first_window;  ///< first sample of window 1
  std::int64_t window_steps;  ///< samples per window; window 2 follows window 1
  std::int64_t total_steps;
};

[[nodiscard]] MeasurementSchedule measurement_schedule(const SimConfig& config);

/// Cells between the drive point of the incident line and the source node.
[[nodiscard]] std::size_t incident_lead(const SimConfig& config);

/// Position of the plane x = 0 in E-node units: b - 1/2 (dielectric) or b (magnetic).
[[nodiscard]] double interface_position(const SimConfig& config) noexcept;

struct FieldState {
  std::vector<double> e;
  std::vector<double> h;
  std::int64_t q = 0;
  std::vector<double> eps_of_m;  ///< indexed like e
  std::vector<double> mu_of_m;   ///< indexed like h
  std::vector<double> e_coef;    ///< S_c / eps_of_m
  std::vector<double> h_coef;    ///< S_c / mu_of_m
};

/// Incident field fed to the two TFSF correction points. Times are physical
/// (q dt), positions in E-node units.
class IncidentWave {
 public:
  virtual ~IncidentWave() = default;
  [[nodiscard]] virtual double e(double t, double x) const = 0;
  [[nodiscard]] virtual double h(double t, double x) const = 0;
};

/// Ramped sinusoid propagating in medium 1 with the discrete wavenumber k~1,
/// phase-referenced to the interface plane.
class HarmonicIncident final : public IncidentWave {
 public:
  /// The ramp starts at x_source at t = 0 and moves at the group velocity.
  HarmonicIncident(const SimConfig& config, double x_source);
  explicit HarmonicIncident(const SimConfig& config)
      : HarmonicIncident(config, static_cast<double>(config.s)) {}

  [[nodiscard]] double e(double t, double x) const override;
  [[nodiscard]] double h(double t, double x) const override;
  [[nodiscard]] double envelope(double t, double x) const noexcept;

 private:
  double amplitude_;
  double omega_;
  double k1_;
  double eta1_;
  double x_ref_;
  double x_source_;
  double group_velocity_;  ///< cells per unit time
  double ramp_time_;
};

/// Gaussian pulse moving at the continuum speed 1/n_r. Exact discrete
/// solution only when S_c = n_r.
class GaussianPulseIncident final : public IncidentWave {
 public:
  GaussianPulseIncident(const Medium& medium, double amplitude, double x_source, double delay,
                        double width);

  [[nodiscard]] double e(double t, double x) const override;
  [[nodiscard]] double h(double t, double x) const override;

 private:
  double amplitude_;
  double slowness_;
  double eta_;
  double x_source_;
  double delay_;
  double width_;
};

/// The two TFSF correction values for one step: incident E at node s and
/// time q dt, incident H at s - 1/2 and time (q + 1/2) dt.
struct TfsfFeed {
  double e;
  double h;
};

/// Homogeneous medium-1 line carrying the incident wave. Its node K maps to
/// the source node s of the main grid; it is driven by an analytic waveform
/// `lead` cells upstream and is long enough that nothing returning from its
/// ends reaches K within `steps`.
class IncidentLine {
 public:
  IncidentLine(const SimConfig& config, const IncidentWave& drive, std::size_t lead,
               std::int64_t steps);

  /// Advances the line by one dt and returns the values for the matching main step.
  TfsfFeed advance();

  [[nodiscard]] std::size_t size() const noexcept { return e_.size(); }

 private:
  const IncidentWave* drive_;
  double dt_;
  double e_coef_;
  double h_coef_;
  double x_drive_;  ///< main-grid position of the drive node
  std::size_t drive_node_;
  std::size_t tap_;
  std::int64_t q_ = 0;
  std::vector<double> e_;
  std::vector<double> h_;
};

/// Zero fields and material maps for the configured interface.
[[nodiscard]] FieldState build(const SimConfig& config);

/// Advances one full dt: H to q+1/2, then E to q+1, with the TFSF corrections.
/// Throws DivergenceDetected if any |field| exceeds 1e6 times the amplitude.
void step(FieldState& state, const SimConfig& config, const TfsfFeed& feed);

/// As above with the corrections taken directly from an analytic waveform.
void step(FieldState& state, const SimConfig& config, const IncidentWave& incident);

struct MeasuredFresnel {
  double r_meas;
  double t_meas;
  double r_imag;  ///< imaginary residual after phase alignment
  double t_imag;
  double window_drift;    ///< max |A(window 2) - A(window 1)| / E0
  double scattered_peak;  ///< max |E| at probe_r during measurement / E0
  std::int64_t steps;
  int attempts;
  std::size_t m_total;
};

/// Drives the harmonic source to steady state and extracts the discrete
/// Fresnel coefficients at the interface. Warm-up doubles on drift above 1e-8
/// (at most 3 retries) before NotSettled is thrown.
[[nodiscard]] MeasuredFresnel run_and_measure(const SimConfig& config);

/// Wavelength (in cells) of the steady wave in a homogeneous grid, from a
/// least-squares fit of phase against node index.
[[nodiscard]] double measure_wavelength(const Medium& medium, const WaveDiscretization& wd,
                                        const SimTiming& timing = {});

}  // namespace yeelab
