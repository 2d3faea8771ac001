#include "yeelab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "yeelab/errors.hpp"
#include "yeelab/simulation.hpp"

namespace yeelab {

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::NLambda:
      return "n_lambda";
    case SweepAxis::SharedMu:
      return "mu";
    case SweepAxis::SharedEps:
      return "eps";
  }
  return "?";
}

std::string_view to_string(CourantMode mode) noexcept {
  switch (mode) {
    case CourantMode::Standard:
      return "standard";
    case CourantMode::Optimal:
      return "optimal";
    case CourantMode::Both:
      return "both";
  }
  return "?";
}

std::string_view to_string(RowStatus status) noexcept {
  switch (status) {
    case RowStatus::Ok:
      return "ok";
    case RowStatus::Evanescent:
      return "evanescent";
    case RowStatus::Diverged:
      return "diverged";
    case RowStatus::NotSettled:
      return "not_settled";
    case RowStatus::SimMismatch:
      return "sim_mismatch";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (axis_values.empty()) {
    throw ConfigError("sweep needs at least one axis value");
  }
  for (std::size_t i = 1; i < axis_values.size(); ++i) {
    if (!(axis_values[i] > axis_values[i - 1])) {
      std::ostringstream msg;
      msg << "axis values must be strictly increasing (value " << i << " = " << axis_values[i]
          << " after " << axis_values[i - 1] << ")";
      throw ConfigError(msg.str());
    }
  }
  if (axis == SweepAxis::SharedMu && ic_template.kind() != InterfaceKind::DielectricPair) {
    throw ConfigError("a shared-mu axis needs a dielectric interface");
  }
  if (axis == SweepAxis::SharedEps && ic_template.kind() != InterfaceKind::MagneticPair) {
    throw ConfigError("a shared-eps axis needs a magnetic interface");
  }
  // Constructing every point checks positivity of the swept quantity.
  for (double v : axis_values) {
    (void)interface_at(v);
    (void)WaveDiscretization(n_lambda_at(v), 1.0);
  }
}

InterfaceCase SweepSpec::interface_at(double axis_value) const {
  const Medium& m1 = ic_template.medium1();
  const Medium& m2 = ic_template.medium2();
  switch (axis) {
    case SweepAxis::NLambda:
      return ic_template;
    case SweepAxis::SharedMu:
      return InterfaceCase::dielectric(m1.epsilon_r(), m2.epsilon_r(), axis_value);
    case SweepAxis::SharedEps:
      return InterfaceCase::magnetic(m1.mu_r(), m2.mu_r(), axis_value);
  }
  return ic_template;
}

double SweepSpec::n_lambda_at(double axis_value) const {
  return axis == SweepAxis::NLambda ? axis_value : n_lambda;
}

namespace {

void simulate_point(const InterfaceCase& ic, const WaveDiscretization& wd, SweepRow& row) {
  try {
    const MeasuredFresnel m = run_and_measure(SimConfig::gated(ic, wd));
    row.r_meas = m.r_meas;
    row.t_meas = m.t_meas;
    row.sim_residual = std::max(std::abs(m.r_meas - *row.r_tilde), std::abs(m.t_meas - *row.t_tilde));
    if (*row.sim_residual > kSimulationTolerance) {
      row.status = RowStatus::SimMismatch;
      std::ostringstream msg;
      msg << "simulation differs from the closed form by " << *row.sim_residual;
      row.message = msg.str();
    }
  } catch (const DivergenceDetected& e) {
    row.status = RowStatus::Diverged;
    row.message = e.what();
  } catch (const NotSettled& e) {
    row.status = RowStatus::NotSettled;
    row.message = e.what();
  } catch (const EvanescentRegime& e) {
    row.status = RowStatus::Evanescent;
    row.message = e.what();
  } catch (const ConfigError& e) {
    // Only the stability bound can reject a gated layout.
    row.status = RowStatus::Diverged;
    row.message = e.what();
  }
}

}  // namespace

SweepRow evaluate_point(const SweepSpec& spec, double axis_value) {
  const InterfaceCase ic = spec.interface_at(axis_value);
  const double n_lambda = spec.n_lambda_at(axis_value);
  const double courant = spec.courant_mode == CourantMode::Optimal ? optimal_courant(ic) : 1.0;
  const WaveDiscretization wd(n_lambda, courant);

  SweepRow row;
  row.axis_value = axis_value;
  row.n_lambda = n_lambda;
  row.courant = courant;
  row.eta_ratio = ic.impedance_ratio();
  const FresnelPair exact = exact_fresnel(ic);
  const PowerPair exact_p = exact_power(ic);
  row.r = exact.r;
  row.t = exact.t;
  row.R = exact_p.R;
  row.T = exact_p.T;

  try {
    const FresnelPair f = fdtd_fresnel(ic, wd);
    const PowerPair p = power_from_fresnel(ic, f);
    row.r_tilde = f.r;
    row.t_tilde = f.t;
    row.R_tilde = p.R;
    row.T_tilde = p.T;
    if (!ic.identical_media()) {
      const ErrorReport err = error_report(ic, wd);
      row.delta_R = err.delta_R;
      row.delta_T = err.delta_T;
      if (spec.courant_mode == CourantMode::Both) {
        const CourantModeComparison cmp = compare_courant_modes(ic, n_lambda);
        row.Delta_R = cmp.delta_R_diff;
        row.Delta_T = cmp.delta_T_diff;
      }
    }
  } catch (const EvanescentRegime& e) {
    row.status = RowStatus::Evanescent;
    row.message = e.what();
    return row;
  }

  if (spec.with_simulation && n_lambda <= kMaxSimulatedNLambda) {
    simulate_point(ic, wd, row);
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t threads) {
  spec.validate();
  const std::size_t n = spec.axis_values.size();
  std::vector<SweepRow> rows(n);
  if (threads == 0) {
    threads = std::max(1U, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, n);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      rows[i] = evaluate_point(spec, spec.axis_values[i]);
    }
  };
  if (threads <= 1) {
    worker();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t k = 0; k < threads; ++k) {
    pool.emplace_back(worker);
  }
  pool.clear();
  return rows;
}

bool weak_contrast_ordering_check(const std::vector<SweepRow>& rows) {
  for (const SweepRow& row : rows) {
    if (row.eta_ratio < 0.8 || row.eta_ratio > 1.25) {
      std::ostringstream msg;
      msg << "ordering check needs a weak-contrast interface, got eta1/eta2 = " << row.eta_ratio;
      throw ConfigError(msg.str());
    }
  }
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& row) {
    return !row.delta_R || !row.delta_T || *row.delta_R > *row.delta_T;
  });
}

std::vector<std::string> csv_columns() {
  return {"axis_value", "n_lambda", "courant", "eta_ratio", "r",       "t",
          "R",          "T",        "r_tilde", "t_tilde",   "R_tilde", "T_tilde",
          "delta_R",    "delta_T",  "Delta_R", "Delta_T",   "r_meas",  "t_meas",
          "sim_residual", "status"};
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put(std::ostream& out, const std::optional<double>& v) {
  if (v) {
    put(out, *v);
  }
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const std::vector<std::string> cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
  for (const SweepRow& row : rows) {
    for (double v : {row.axis_value, row.n_lambda, row.courant, row.eta_ratio, row.r, row.t, row.R,
                     row.T}) {
      put(out, v);
      out << ',';
    }
    for (const auto* v : {&row.r_tilde, &row.t_tilde, &row.R_tilde, &row.T_tilde, &row.delta_R,
                          &row.delta_T, &row.Delta_R, &row.Delta_T, &row.r_meas, &row.t_meas,
                          &row.sim_residual}) {
      put(out, *v);
      out << ',';
    }
    out << to_string(row.status) << '\n';
  }
}

}  // namespace yeelab
