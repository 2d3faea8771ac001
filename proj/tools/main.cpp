// yeelab command-line front end.
//
// Exit codes: 0 success, 1 failed checks or a simulation that diverged or did
// not settle, 2 usage or validation error, 3 evanescent regime, 4 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "settings.hpp"
#include "yeelab/acceptance.hpp"
#include "yeelab/errors.hpp"
#include "yeelab/fresnel.hpp"
#include "yeelab/presets.hpp"
#include "yeelab/simulation.hpp"
#include "yeelab/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace yeelab::cli {
namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kEvanescent = 3, kIo = 4 };

std::vector<KeyInfo> interface_keys() {
  return {
      {"kind", "dielectric", "interface kind: dielectric (shared mu) or magnetic (shared eps)"},
      {"eps", "3,4", "eps_r: two values for a dielectric pair, one shared value for a magnetic pair"},
      {"mu", "2", "mu_r: one shared value for a dielectric pair, two values for a magnetic pair"},
      {"nlambda", "20", "grid points per vacuum wavelength"},
      {"courant", "standard", "Courant number: standard (1), optimal (min n_r) or a number"},
  };
}

std::vector<KeyInfo> simulate_keys() {
  auto keys = interface_keys();
  keys.insert(keys.end(), {
                              {"amplitude", "1", "incident amplitude E0"},
                              {"ramp_periods", "5", "raised-cosine turn-on length in drive periods"},
                              {"warmup_periods", "10", "periods after wavefront arrival before measuring"},
                              {"measure_periods", "10", "periods per measurement window"},
                              {"dump_fields", "", "write a q,m,E,H table to this path (empty: off)"},
                              {"dump_every", "1", "steps between field dumps"},
                          });
  return keys;
}

std::vector<KeyInfo> sweep_keys() {
  auto keys = interface_keys();
  keys.insert(keys.end(), {
                              {"axis", "n_lambda", "swept quantity: n_lambda, mu (dielectric) or eps (magnetic)"},
                              {"values", "10:40:1", "axis values: lo:hi:step or a comma list"},
                              {"mode", "standard", "Courant mode: standard, optimal or both"},
                              {"simulate", "false", "also run the time-domain cross-check per point"},
                              {"output", "", "CSV path; empty writes <YEELAB_OUT>/sweep.csv, - writes stdout"},
                          });
  return keys;
}

fs::path output_root() {
  const char* env = std::getenv("YEELAB_OUT");
  return env && *env ? fs::path(env) : fs::path("out");
}

InterfaceCase interface_from(const Settings& s) {
  const std::string& kind = s.get("kind");
  const std::vector<double> eps = s.numbers("eps");
  const std::vector<double> mu = s.numbers("mu");
  if (kind == "dielectric") {
    if (eps.size() != 2 || mu.size() != 1) {
      throw UsageError("a dielectric pair needs eps=a,b and a single shared mu");
    }
    return InterfaceCase::dielectric(eps[0], eps[1], mu[0]);
  }
  if (kind == "magnetic") {
    if (mu.size() != 2 || eps.size() != 1) {
      throw UsageError("a magnetic pair needs mu=a,b and a single shared eps");
    }
    return InterfaceCase::magnetic(mu[0], mu[1], eps[0]);
  }
  throw UsageError("kind must be dielectric or magnetic, got '" + kind + "'");
}

double courant_from(const Settings& s, const InterfaceCase& ic) {
  const std::string& c = s.get("courant");
  if (c == "standard") {
    return 1.0;
  }
  if (c == "optimal") {
    return optimal_courant(ic);
  }
  return parse_number(c, "courant");
}

std::string media_label(const InterfaceCase& ic) {
  const Medium& a = ic.medium1();
  const Medium& b = ic.medium2();
  if (ic.kind() == InterfaceKind::DielectricPair) {
    return fmt::format("eps=({:g}, {:g}) mu={:g}", a.epsilon_r(), b.epsilon_r(), a.mu_r());
  }
  return fmt::format("mu=({:g}, {:g}) eps={:g}", a.mu_r(), b.mu_r(), a.epsilon_r());
}

// Registers one --flag per setting key; given flags override file values.
struct SettingFlags {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::vector<std::string> values;
  std::string config_path;
  bool dump_config = false;
  std::vector<std::string> overrides;

  SettingFlags(CLI::App* app, const std::vector<KeyInfo>& keys) : values(keys.size()) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::string flag = "--" + keys[i].key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      options.emplace_back(keys[i].key, app->add_option(flag, values[i], keys[i].help));
    }
    app->add_option("--config", config_path, "read key = value settings from this file");
    app->add_flag("--dump-config", dump_config, "print the effective settings and exit");
    app->add_option("overrides", overrides, "key=value settings applied last");
  }

  [[nodiscard]] Settings resolve(const std::vector<KeyInfo>& keys) const {
    Settings s(keys);
    if (!config_path.empty()) {
      s.load_file(config_path);
    }
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (options[i].second->count() > 0) {
        s.set(options[i].first, values[i]);
      }
    }
    for (const std::string& kv : overrides) {
      s.apply(kv);
    }
    return s;
  }
};

json power_json(const FresnelPair& f, const PowerPair& p) {
  return {{"r", f.r}, {"t", f.t}, {"R", p.R}, {"T", p.T}};
}

int cmd_coeff(const Settings& s, bool as_json) {
  const InterfaceCase ic = interface_from(s);
  const WaveDiscretization wd(s.number("nlambda"), courant_from(s, ic));
  const FresnelPair exact = exact_fresnel(ic);
  const PowerPair exact_p = exact_power(ic);
  const FresnelPair fdtd = fdtd_fresnel(ic, wd);
  const PowerPair fdtd_p = power_from_fresnel(ic, fdtd);
  std::optional<ErrorReport> err;
  if (!ic.identical_media()) {
    err = error_report(ic, wd);
  }

  if (as_json) {
    json out = {{"kind", std::string(to_string(ic.kind()))},
                {"eps", {ic.medium1().epsilon_r(), ic.medium2().epsilon_r()}},
                {"mu", {ic.medium1().mu_r(), ic.medium2().mu_r()}},
                {"n_lambda", wd.n_lambda()},
                {"courant", wd.courant()},
                {"eta_ratio", ic.impedance_ratio()},
                {"exact", power_json(exact, exact_p)},
                {"fdtd", power_json(fdtd, fdtd_p)},
                {"delta_R", err ? json(err->delta_R) : json(nullptr)},
                {"delta_T", err ? json(err->delta_T) : json(nullptr)}};
    std::cout << out.dump(2) << '\n';
    return kOk;
  }

  fmt::print("{} interface  {}  eta1/eta2={:.6g}\n", to_string(ic.kind()), media_label(ic),
             ic.impedance_ratio());
  fmt::print("N_lambda={:.6g}  S_c={:.6g}\n\n", wd.n_lambda(), wd.courant());
  fmt::print("{:<8}{:>14}{:>14}\n", "", "exact", "FDTD");
  const auto row = [](const char* name, double a, double b) {
    fmt::print("{:<8}{:>14.6g}{:>14.6g}\n", name, a, b);
  };
  row("r", exact.r, fdtd.r);
  row("t", exact.t, fdtd.t);
  row("R", exact_p.R, fdtd_p.R);
  row("T", exact_p.T, fdtd_p.T);
  if (err) {
    fmt::print("\ndelta_R {:>13.6g} %\ndelta_T {:>13.6g} %\n", err->delta_R, err->delta_T);
  } else {
    fmt::print("\ndelta_R           n/a (identical media, R = 0)\ndelta_T           n/a\n");
  }
  return kOk;
}

int cmd_simulate(const Settings& s, bool as_json) {
  const InterfaceCase ic = interface_from(s);
  const WaveDiscretization wd(s.number("nlambda"), courant_from(s, ic));
  const SimTiming timing{.ramp_periods = s.number("ramp_periods"),
                         .n_warmup_periods = s.number("warmup_periods"),
                         .n_measure_periods = static_cast<int>(s.number("measure_periods"))};
  SimConfig cfg = SimConfig::gated(ic, wd, timing);
  cfg.amplitude = s.number("amplitude");
  if (!s.get("dump_fields").empty()) {
    cfg.dump = FieldDump{s.get("dump_fields"), static_cast<std::int64_t>(s.number("dump_every"))};
  }
  const FresnelPair f = fdtd_fresnel(ic, wd);
  MeasuredFresnel m{};
  try {
    m = run_and_measure(cfg);
  } catch (const Error& e) {
    if (dynamic_cast<const DivergenceDetected*>(&e) || dynamic_cast<const NotSettled*>(&e)) {
      fmt::print(std::cerr, "simulation failed: {}\n", e.what());
      return kFailed;
    }
    if (cfg.dump && std::string(e.what()).starts_with("cannot open field dump")) {
      throw IoError(e.what());
    }
    throw;
  }

  if (as_json) {
    json out = {{"kind", std::string(to_string(ic.kind()))},
                {"n_lambda", wd.n_lambda()},
                {"courant", wd.courant()},
                {"r_meas", m.r_meas},
                {"t_meas", m.t_meas},
                {"r_tilde", f.r},
                {"t_tilde", f.t},
                {"r_imag", m.r_imag},
                {"t_imag", m.t_imag},
                {"window_drift", m.window_drift},
                {"scattered_peak", m.scattered_peak},
                {"steps", m.steps},
                {"attempts", m.attempts},
                {"m_total", m.m_total}};
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  fmt::print("{} interface  {}  N_lambda={:.6g}  S_c={:.6g}\n", to_string(ic.kind()),
             media_label(ic), wd.n_lambda(), wd.courant());
  fmt::print("grid M={}  steps={}  attempts={}  window drift={:.3g}\n\n", m.m_total, m.steps,
             m.attempts, m.window_drift);
  fmt::print("{:<4}{:>14}{:>14}{:>14}\n", "", "measured", "closed form", "difference");
  fmt::print("{:<4}{:>14.6g}{:>14.6g}{:>14.3g}\n", "r", m.r_meas, f.r, m.r_meas - f.r);
  fmt::print("{:<4}{:>14.6g}{:>14.6g}{:>14.3g}\n", "t", m.t_meas, f.t, m.t_meas - f.t);
  if (cfg.dump) {
    fmt::print("\nfield dump: {}\n", cfg.dump->path);
  }
  return kOk;
}

std::vector<double> axis_values_from(const Settings& s) {
  const std::string& v = s.get("values");
  const auto colon = v.find(':');
  if (colon == std::string::npos) {
    return s.numbers("values");
  }
  const auto second = v.find(':', colon + 1);
  if (second == std::string::npos) {
    throw UsageError("values range must be lo:hi:step");
  }
  return uniform_grid(parse_number(v.substr(0, colon), "values lo"),
                      parse_number(v.substr(colon + 1, second - colon - 1), "values hi"),
                      parse_number(v.substr(second + 1), "values step"));
}

SweepSpec sweep_from(const Settings& s) {
  SweepSpec spec{.ic_template = interface_from(s), .axis_values = axis_values_from(s)};
  const std::string& axis = s.get("axis");
  if (axis == "n_lambda") {
    spec.axis = SweepAxis::NLambda;
  } else if (axis == "mu") {
    spec.axis = SweepAxis::SharedMu;
  } else if (axis == "eps") {
    spec.axis = SweepAxis::SharedEps;
  } else {
    throw UsageError("axis must be n_lambda, mu or eps");
  }
  const std::string& mode = s.get("mode");
  if (mode == "standard") {
    spec.courant_mode = CourantMode::Standard;
  } else if (mode == "optimal") {
    spec.courant_mode = CourantMode::Optimal;
  } else if (mode == "both") {
    spec.courant_mode = CourantMode::Both;
  } else {
    throw UsageError("mode must be standard, optimal or both");
  }
  spec.with_simulation = s.flag("simulate");
  spec.n_lambda = s.number("nlambda");
  spec.validate();
  return spec;
}

void write_csv_file(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  write_csv(out, rows);
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

int count_failed_rows(const std::vector<SweepRow>& rows) {
  int n = 0;
  for (const SweepRow& r : rows) {
    n += r.status == RowStatus::Ok ? 0 : 1;
  }
  return n;
}

int cmd_sweep(const Settings& s) {
  const SweepSpec spec = sweep_from(s);
  const std::vector<SweepRow> rows = run_sweep(spec);
  const std::string& output = s.get("output");
  if (output == "-") {
    write_csv(std::cout, rows);
  } else {
    const fs::path path = output.empty() ? output_root() / "sweep.csv" : fs::path(output);
    write_csv_file(path, rows);
    fmt::print("{} rows ({} flagged) -> {}\n", rows.size(), count_failed_rows(rows), path.string());
  }
  return kOk;
}

int cmd_figures(const std::string& id) {
  const FigurePreset preset = figure_preset(id);
  const fs::path dir = output_root() / preset.id;
  fmt::print("{}: {}\n", preset.id, preset.description);
  for (const FigureCurve& c : preset.curves) {
    const auto rows = run_sweep(c.spec);
    const fs::path path = dir / (c.name + ".csv");
    write_csv_file(path, rows);
    fmt::print("  {}  ({} rows, {} flagged)\n", path.string(), rows.size(), count_failed_rows(rows));
  }
  return kOk;
}

int cmd_verify(const std::vector<std::string>& only, double stability_factor) {
  acceptance::Options options;
  options.stability_factor = stability_factor;
  const auto results = acceptance::run_checks(only, options);
  int failed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    fmt::print("{}  {:<22} {:>8.3f} s  {}\n", r.passed ? "PASS" : "FAIL", r.id, r.seconds, r.detail);
    failed += r.passed ? 0 : 1;
    total += r.seconds;
  }
  fmt::print("{} of {} checks passed in {:.2f} s\n", results.size() - static_cast<std::size_t>(failed),
             results.size(), total);
  return failed ? kFailed : kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"1D Yee-FDTD laboratory for discrete Fresnel coefficients"};
  app.require_subcommand(1);

  bool coeff_json = false;
  CLI::App* coeff = app.add_subcommand("coeff", "exact and discrete r, t, R, T and errors");
  SettingFlags coeff_flags(coeff, interface_keys());
  coeff->add_flag("--json", coeff_json, "print JSON instead of a table");

  bool sim_json = false;
  CLI::App* simulate = app.add_subcommand("simulate", "time-domain run measuring r and t");
  SettingFlags sim_flags(simulate, simulate_keys());
  simulate->add_flag("--json", sim_json, "print JSON instead of a table");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep written as CSV");
  SettingFlags sweep_flags(sweep, sweep_keys());

  std::vector<std::string> only;
  double stability_factor = 1.05;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--only", only, "check ids to run (comma separated)")->delimiter(',');
  verify->add_option("--stability-factor", stability_factor,
                     "multiple of min(n_r) used by the divergence check");

  std::string figure_id;
  CLI::App* figures = app.add_subcommand("figures", "regenerate a figure's datasets");
  figures->add_option("id", figure_id, "fig5, fig6, fig8, fig9, figA or figB")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto with_settings = [](const SettingFlags& flags, const std::vector<KeyInfo>& keys,
                                const auto& body) {
    const Settings s = flags.resolve(keys);
    if (flags.dump_config) {
      std::cout << s.dump();
      return static_cast<int>(kOk);
    }
    return body(s);
  };

  if (coeff->parsed()) {
    return with_settings(coeff_flags, interface_keys(),
                         [&](const Settings& s) { return cmd_coeff(s, coeff_json); });
  }
  if (simulate->parsed()) {
    return with_settings(sim_flags, simulate_keys(),
                         [&](const Settings& s) { return cmd_simulate(s, sim_json); });
  }
  if (sweep->parsed()) {
    return with_settings(sweep_flags, sweep_keys(), [](const Settings& s) { return cmd_sweep(s); });
  }
  if (verify->parsed()) {
    return cmd_verify(only, stability_factor);
  }
  return cmd_figures(figure_id);
}

}  // namespace
}  // namespace yeelab::cli

int main(int argc, char** argv) {
  using namespace yeelab;
  using namespace yeelab::cli;
  try {
    return run(argc, argv);
  } catch (const EvanescentRegime& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kEvanescent;
  } catch (const IoError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kIo;
  } catch (const UsageError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kUsage;
  } catch (const ConfigError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kFailed;
  }
}
