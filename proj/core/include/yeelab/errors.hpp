#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace yeelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid medium, discretization, interface or simulation layout.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The Yee dispersion relation has no real solution: (n_r / S_c) sin(w dt / 2) > 1.
class EvanescentRegime : public Error {
 public:
  EvanescentRegime(double sine_argument, const std::string& what)
      : Error(what), sine_argument_(sine_argument) {}

  [[nodiscard]] double sine_argument() const noexcept { return sine_argument_; }

 private:
  double sine_argument_;
};

/// Relative reflection error requested for identical media (R = 0).
class DegenerateInterface : public Error {
 public:
  using Error::Error;
};

class DivergenceDetected : public Error {
 public:
  DivergenceDetected(std::int64_t step, const std::string& what)
      : Error(what), step_(step) {}

  [[nodiscard]] std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

class NotSettled : public Error {
 public:
  using Error::Error;
};

}  // namespace yeelab
