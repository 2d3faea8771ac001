#include "yeelab/phasor.hpp"

#include <algorithm>
#include <cmath>

#include "yeelab/dispersion.hpp"
#include "yeelab/errors.hpp"

namespace yeelab {

PhasorProbe::PhasorProbe(std::size_t node, double omega_dt, std::int64_t first_step,
                         std::int64_t n_samples, ProbeWindow window)
    : node_(node),
      omega_dt_(omega_dt),
      first_step_(first_step),
      n_samples_(n_samples),
      window_(window) {
  if (n_samples < 3) {
    throw ConfigError("phasor probe needs at least 3 samples");
  }
}

void PhasorProbe::accumulate(std::int64_t q, double value) {
  const std::int64_t j = q - first_step_;
  if (j < 0 || j >= n_samples_) {
    return;
  }
  double w = 1.0;
  const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(n_samples_);
  if (window_ == ProbeWindow::Hann) {
    const double s = std::sin(kPi * x);
    w = s * s;
  } else if (window_ == ProbeWindow::BlackmanHarris) {
    w = 0.35875 - 0.48829 * std::cos(2.0 * kPi * x) + 0.14128 * std::cos(4.0 * kPi * x) -
        0.01168 * std::cos(6.0 * kPi * x);
  }
  const double theta = omega_dt_ * static_cast<double>(q);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  cos_acc_ += w * value * c;
  sin_acc_ += w * value * s;
  cc_ += w * c * c;
  ss_ += w * s * s;
  sc_ += w * s * c;
  peak_ = std::max(peak_, std::abs(value));
  ++n_accumulated_;
}

std::complex<double> PhasorProbe::phasor() const {
  if (!complete()) {
    throw Error("phasor requested before the probe window was filled");
  }
  // x = a cos + b sin;  Im(A e^{i theta}) = Im(A) cos + Re(A) sin
  const double det = cc_ * ss_ - sc_ * sc_;
  const double a = (cos_acc_ * ss_ - sin_acc_ * sc_) / det;
  const double b = (sin_acc_ * cc_ - cos_acc_ * sc_) / det;
  return {b, a};
}

}  // namespace yeelab
