#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace yeelab {

enum class ProbeWindow { Rectangular, Hann, BlackmanHarris };

/// Single-frequency amplitude/phase estimator for a real sampled signal.
///
/// Samples taken at times q dt are fitted to x_q = Im(A exp(i w q dt)) by
/// (optionally Hann-weighted) least squares over a fixed sample window. The fit
/// is exact for a pure tone whatever the window length, so the window does not
/// have to span an integer number of periods; the Hann weights suppress leakage
/// from off-frequency transients.
class PhasorProbe {
 public:
  PhasorProbe(std::size_t node, double omega_dt, std::int64_t first_step, std::int64_t n_samples,
              ProbeWindow window = ProbeWindow::Hann);

  /// Records the field at time index q; samples outside the window are ignored.
  void accumulate(std::int64_t q, double value);

  [[nodiscard]] bool complete() const noexcept { return n_accumulated_ == n_samples_; }
  [[nodiscard]] std::size_t node() const noexcept { return node_; }
  [[nodiscard]] std::int64_t first_step() const noexcept { return first_step_; }
  [[nodiscard]] std::int64_t last_step() const noexcept { return first_step_ + n_samples_ - 1; }
  [[nodiscard]] std::int64_t n_samples() const noexcept { return n_samples_; }
  /// Largest |x| seen inside the window.
  [[nodiscard]] double peak() const noexcept { return peak_; }

  /// Complex amplitude A. Requires complete().
  [[nodiscard]] std::complex<double> phasor() const;

 private:
  std::size_t node_;
  double omega_dt_;
  std::int64_t first_step_;
  std::int64_t n_samples_;
  ProbeWindow window_;
  std::int64_t n_accumulated_ = 0;
  double peak_ = 0.0;
  // weighted sums: x cos, x sin, cos^2, sin^2, sin cos
  double cos_acc_ = 0.0;
  double sin_acc_ = 0.0;
  double cc_ = 0.0;
  double ss_ = 0.0;
  double sc_ = 0.0;
};

}  // namespace yeelab
