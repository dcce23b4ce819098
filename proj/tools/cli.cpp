// Copyright 2026 The twolevel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "twolevel/adiabatic.hpp"
#include "twolevel/error.hpp"
#include "twolevel/oracle.hpp"
#include "twolevel/scenarios.hpp"

namespace twolevel::cli {

namespace {

namespace fs = std::filesystem;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// ---------------------------------------------------------------------------
// Options

struct ScenarioOptions {
  std::vector<double> nu0T;
  std::size_t samples = 4096;
  double nu0 = 1.0;
  double phi_omega_rate = 0.0;
};

struct OutputOptions {
  std::string format = "csv";
  std::string output;
  std::string out_dir = ".";
  bool to_stdout = false;
};

struct VerifyOptions {
  double step = 0.0;
  double tol = 1e-12;
  int max_halvings = 24;
  double threshold = 1e-6;
  bool renormalize = false;
};

struct NoTransitionOptions {
  std::string family = "rotating";
  double theta0 = std::numbers::pi / 4;
  double delta = 0.2;
  std::vector<double> T{20.0};
  double X = 0.6;
  double kappa = 1.0;
  std::size_t samples = 400;
  double step = 1e-2;
};

void require_ladder(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw ConfigError(fmt::format("{}: at least one value required", what));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw ConfigError(fmt::format("{}: values must be positive", what));
    if (i > 0 && !(v[i] > v[i - 1])) throw ConfigError(fmt::format("{}: values must be distinct and sorted", what));
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("{} must be positive", what));
}

ScenarioSpec make_spec(const ScenarioOptions& o, double nu0T) {
  ScenarioSpec spec = ScenarioSpec::from_nu0T(nu0T, o.samples, o.nu0);
  if (o.phi_omega_rate != 0.0) {
    const double r = o.phi_omega_rate * o.nu0;
    spec.phi_omega = TimeFunction{[r](double t) { return r * t; }, [r](double) { return r; }};
  }
  return spec;
}

void validate(const ScenarioOptions& o) {
  require_ladder(o.nu0T, "nu0T");
  require_positive(o.nu0, "nu0");
  if (o.samples < 2) throw ConfigError("samples must be at least 2");
}

// ---------------------------------------------------------------------------
// Output plumbing

std::string label(double v) { return fmt::format("{:g}", v); }

/// Writes one document per ladder value, to files or to `out`.
void emit_documents(const OutputOptions& o, const std::string& stem, const std::vector<double>& values,
                    const std::function<std::string(double)>& render, std::ostream& out) {
  if (o.to_stdout) {
    if (values.size() != 1) throw ConfigError("--stdout needs exactly one ladder value");
    out << render(values.front());
    return;
  }
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  for (double v : values) {
    const std::string text = render(v);
    const fs::path path = fs::path(o.out_dir) / fmt::format("{}_{}.csv", stem, label(v));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << text;
    out << path.string() << "\n";
  }
}

void emit_text(const OutputOptions& o, const std::string& text, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + o.output);
  f << text;
}

// ---------------------------------------------------------------------------
// Commands

std::string scenario_csv(const SineScenario& s) {
  const double nu0 = s.spec.nu0;
  const double scale = s.spec.hbar * nu0;
  const auto& st = s.system.state;
  std::string text = "nu0_t,Omega_over_hbar_nu0,omega_abs_over_hbar_nu0,chi,Theta,phibar,P_minus_plus\n";
  for (std::size_t i = 0; i < st.size(); ++i) {
    text += fmt::format("{},{},{},{},{},{},{}\n", num(nu0 * st.grid[i]), num(s.Omega[i] / scale),
                        num(s.omega_abs[i] / scale), num(st.chi[i]), num(st.Theta[i]), num(st.phibar[i]),
                        num(s.probability[i]));
  }
  return text;
}

int cmd_scenario(const ScenarioOptions& so, const OutputOptions& oo, std::ostream& out) {
  validate(so);
  if (oo.format == "pretty") {
    std::string text = fmt::format("{:>10} {:>8} {:>14} {:>14} {:>12}\n", "nu0T", "samples", "max_P", "max_|A|",
                                   "nu0_t@max");
    for (double v : so.nu0T) {
      const SineScenario s = sine_scenario(make_spec(so, v));
      const auto it = std::max_element(s.probability.begin(), s.probability.end());
      const double t = s.grid()[static_cast<std::size_t>(it - s.probability.begin())];
      text += fmt::format("{:>10g} {:>8} {:>14.6e} {:>14.6e} {:>12.4f}\n", v, so.samples, s.max_probability(),
                          s.max_amplitude(), t * s.spec.nu0);
    }
    emit_text(oo, text, out);
    return kOk;
  }
  emit_documents(oo, "scenario_nu0T", so.nu0T, [&](double v) { return scenario_csv(sine_scenario(make_spec(so, v))); },
                 out);
  return kOk;
}

int cmd_verify(const ScenarioOptions& so, const VerifyOptions& vo, const OutputOptions& oo, std::ostream& out,
               std::ostream& err) {
  validate(so);
  require_positive(vo.tol, "tol");
  require_positive(vo.threshold, "threshold");
  if (vo.step != 0.0) require_positive(vo.step, "step");
  if (vo.max_halvings < 0) throw ConfigError("max-halvings must be >= 0");
  std::string text;
  bool within = true;
  for (double v : so.nu0T) {
    const ScenarioSpec spec = make_spec(so, v);
    const SineScenario s = sine_scenario(spec);
    IntegratorConfig cfg = sine_oracle_config(spec);
    if (vo.step > 0.0) cfg.step = vo.step;
    cfg.tol = vo.tol;
    cfg.max_halvings = vo.max_halvings;
    cfg.renormalize = vo.renormalize;
    const OracleResult o = integrate(s.system.hamiltonian, s.grid(), cfg);
    const ComparisonReport rep = compare_trajectories(s.propagators, o.trajectory, s.system.hamiltonian);
    if (!text.empty()) text += "\n";
    text += fmt::format("nu0T {}\nmax_frob {}\nargmax_t {}\nmax_amp_discrepancy {}\nunitarity_drift {}\n", num(v),
                        num(rep.max_frob), num(rep.argmax_t * spec.nu0), num(rep.max_amp_discrepancy),
                        num(o.unitarity_drift));
    if (rep.max_frob > vo.threshold) {
      within = false;
      err << fmt::format("verify: nu0T={} max_frob {:.3e} exceeds {:.3e}\n", v, rep.max_frob, vo.threshold);
    }
  }
  emit_text(oo, text, out);
  return within ? kOk : kNumericalFailure;
}

std::string adiabatic_csv(const SineScenario& s) {
  const double nu0 = s.spec.nu0;
  std::string text =
      "nu0_t,epsilon,amp_exact_re,amp_exact_im,amp_approx_re,amp_approx_im,prob_approx,std_criterion\n";
  for (const AdiabaticEstimate& e : adiabatic_estimates(s)) {
    text += fmt::format("{},{},{},{},{},{},{},{}\n", num(nu0 * e.t), num(e.epsilon), num(e.amp_exact.real()),
                        num(e.amp_exact.imag()), num(e.amp_approx.real()), num(e.amp_approx.imag()),
                        num(e.prob_approx), num(e.standard_criterion));
  }
  return text;
}

std::string diagnostics_header() {
  return "nu0T,alpha_over_nu0,max_phidot_omega_over_nu0,max_standard_criterion,max_transition_probability,"
         "max_amplitude\n";
}

std::string diagnostics_row(const AdiabaticityDiagnostics& d) {
  return fmt::format("{},{},{},{},{},{}\n", num(d.nu0T), num(d.alpha_over_nu0), num(d.max_phidot_omega_over_nu0),
                     num(d.max_standard_criterion), num(d.max_transition_probability), num(d.max_amplitude));
}

std::string diagnostics_pretty(const std::vector<AdiabaticityDiagnostics>& ds) {
  std::string text = fmt::format("{:>10} {:>12} {:>14} {:>14} {:>14} {:>14}\n", "nu0T", "alpha/nu0", "max_dphi_w/nu0",
                                 "max_std_crit", "max_P", "max_|A|");
  for (const auto& d : ds) {
    text += fmt::format("{:>10g} {:>12.6f} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}\n", d.nu0T, d.alpha_over_nu0,
                        d.max_phidot_omega_over_nu0, d.max_standard_criterion, d.max_transition_probability,
                        d.max_amplitude);
  }
  return text;
}

int cmd_adiabatic(const ScenarioOptions& so, const OutputOptions& oo, std::ostream& out) {
  validate(so);
  if (oo.format == "pretty") {
    std::vector<AdiabaticityDiagnostics> ds;
    for (double v : so.nu0T) ds.push_back(adiabaticity_report(make_spec(so, v)));
    emit_text(oo, diagnostics_pretty(ds), out);
    return kOk;
  }
  emit_documents(oo, "adiabatic_nu0T", so.nu0T,
                 [&](double v) { return adiabatic_csv(sine_scenario(make_spec(so, v))); }, out);
  return kOk;
}

int cmd_sweep(const ScenarioOptions& so, const OutputOptions& oo, std::ostream& out) {
  validate(so);
  if (so.nu0 != 1.0 || so.phi_omega_rate != 0.0) {
    throw ConfigError("sweep runs the default sine family; nu0 and phi-omega-rate are not accepted");
  }
  const auto ds = adiabaticity_sweep(so.nu0T, so.samples);
  if (oo.format == "pretty") {
    emit_text(oo, diagnostics_pretty(ds), out);
    return kOk;
  }
  std::string text = diagnostics_header();
  for (const auto& d : ds) text += diagnostics_row(d);
  emit_text(oo, text, out);
  return kOk;
}

NoTransitionSpec family_spec(const NoTransitionOptions& o, double T) {
  if (o.family == "trivial") return trivial_no_transition_family(o.theta0, o.X, o.kappa);
  if (o.family == "rotating") return rotating_no_transition_family(o.theta0, o.delta, T, o.X, o.kappa);
  if (o.family == "sin2") return sin2_no_transition_family(o.theta0, o.delta, T, o.X, o.kappa);
  throw ConfigError("family must be one of trivial, rotating, sin2");
}

struct NoTransitionRun {
  NoTransitionSynthesis synthesis;
  NoTransitionReport report;
};

NoTransitionRun run_no_transition(const NoTransitionOptions& o, double T) {
  const auto grid = quad::uniform_grid(0.0, no_transition_horizon(o.kappa), o.samples);
  NoTransitionRun r;
  r.synthesis = synthesize_no_transition(family_spec(o, T), grid);
  IntegratorConfig cfg;
  cfg.step = o.step;
  r.report = verify_no_transition(r.synthesis.hamiltonian, grid, cfg);
  return r;
}

std::string no_transition_csv(const NoTransitionRun& r) {
  const auto& syn = r.synthesis;
  const auto& h = syn.hamiltonian;
  std::string text = "t,Omega,omega_abs,c,phibar,zeta,phibar_from_zeta,amp_abs\n";
  for (std::size_t i = 0; i < syn.grid.size(); ++i) {
    const double t = syn.grid[i];
    text += fmt::format("{},{},{},{},{},{},{},{}\n", num(t), num(h.Omega(t)), num(h.omega_abs(t)), num(syn.c[i]),
                        num(syn.phibar[i]), num(syn.zeta[i]), num(syn.phibar_from_zeta[i]),
                        num(r.report.amplitude_abs[i]));
  }
  return text;
}

int cmd_no_transition(const NoTransitionOptions& no, const OutputOptions& oo, std::ostream& out) {
  require_ladder(no.T, "T");
  require_positive(no.X, "X");
  require_positive(no.kappa, "kappa");
  require_positive(no.step, "step");
  if (no.samples < 2) throw ConfigError("samples must be at least 2");
  family_spec(no, no.T.front());
  if (oo.format == "pretty") {
    std::string text = fmt::format("{:>10} {:>14} {:>12} {:>14} {:>10}\n", "T", "max_|A|", "t@max", "zeta_discrep",
                                   "ratio");
    double prev = 0.0;
    for (double T : no.T) {
      const NoTransitionRun r = run_no_transition(no, T);
      const std::string ratio = prev > 0.0 ? fmt::format("{:.4f}", r.report.max_amplitude / prev) : "-";
      text += fmt::format("{:>10g} {:>14.6e} {:>12.6f} {:>14.6e} {:>10}\n", T, r.report.max_amplitude,
                          r.report.argmax_t, r.synthesis.zeta_discrepancy, ratio);
      prev = r.report.max_amplitude;
    }
    emit_text(oo, text, out);
    return kOk;
  }
  emit_documents(oo, "no_transition_T", no.T, [&](double T) { return no_transition_csv(run_no_transition(no, T)); },
                 out);
  return kOk;
}

// ---------------------------------------------------------------------------
// Argument assembly

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::vector<std::string> cli;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      cli.push_back(args[i]);
    }
  }
  if (path.empty()) return cli;
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::vector<std::string> file = config_file_args(f);

  // Keys given on the command line win over the file.
  std::set<std::string> given;
  for (const std::string& a : cli) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
  }
  std::vector<std::string> merged;
  std::size_t start = 0;
  const bool file_has_command = !file.empty() && file.front().rfind("--", 0) != 0;
  const bool cli_has_command = !cli.empty() && cli.front().rfind("-", 0) != 0;
  if (cli_has_command) {
    merged.push_back(cli.front());
    start = 1;
  } else if (file_has_command) {
    merged.push_back(file.front());
  }
  for (std::size_t i = file_has_command ? 1 : 0; i < file.size(); ++i) {
    const std::string& key = file[i];
    const bool flag = i + 1 >= file.size() || file[i + 1].rfind("--", 0) == 0;
    if (given.count(key) == 0) {
      merged.push_back(key);
      if (!flag) merged.push_back(file[i + 1]);
    }
    if (!flag) ++i;
  }
  merged.insert(merged.end(), cli.begin() + static_cast<std::ptrdiff_t>(start), cli.end());
  return merged;
}

}  // namespace

std::vector<std::string> config_file_args(std::istream& in) {
  std::vector<std::string> out;
  std::string command;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("config line {}: empty key", lineno));
    if (key == "command") {
      command = value;
      continue;
    }
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value != "false") {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  if (!command.empty()) out.insert(out.begin(), command);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-level propagator toolkit: closed-form evolution, oracle checks and adiabatic diagnostics.",
               "twolevel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  std::string config_unused;
  app.add_option("--config", config_unused, "Flat key = value file; command-line flags override it");

  ScenarioOptions so;
  OutputOptions oo;
  VerifyOptions vo;
  NoTransitionOptions no;

  auto add_scenario = [&](CLI::App* sub, bool ladder_required) {
    auto* opt = sub->add_option("--nu0T", so.nu0T, "Comma-separated nu0*T ladder")->delimiter(',');
    if (ladder_required) opt->required();
    sub->add_option("--samples", so.samples, "Grid intervals per scenario")->capture_default_str();
    sub->add_option("--nu0", so.nu0, "Longitudinal scale nu0")->capture_default_str();
    sub->add_option("--phi-omega-rate", so.phi_omega_rate, "d(phi_omega)/dt in units of nu0")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", oo.format, "csv or pretty")
        ->check(CLI::IsMember({"csv", "pretty"}))
        ->capture_default_str();
  };
  auto add_documents = [&](CLI::App* sub) {
    sub->add_option("--out-dir", oo.out_dir, "Directory for per-value CSV files")->capture_default_str();
    sub->add_flag("--stdout", oo.to_stdout, "Write the single CSV to standard output");
    sub->add_option("--output", oo.output, "Output file for --format pretty");
  };

  CLI::App* scenario = app.add_subcommand("scenario", "Sine-sweep scenario curves");
  add_scenario(scenario, true);
  add_format(scenario);
  add_documents(scenario);

  CLI::App* verify = app.add_subcommand("verify", "Compare closed-form and integrated propagators");
  add_scenario(verify, true);
  verify->add_option("--step", vo.step, "Oracle step (default: transient bound)");
  verify->add_option("--tol", vo.tol, "Step-doubling tolerance")->capture_default_str();
  verify->add_option("--max-halvings", vo.max_halvings, "Step-doubling depth")->capture_default_str();
  verify->add_option("--threshold", vo.threshold, "Pass threshold on max_frob")->capture_default_str();
  verify->add_flag("--renormalize", vo.renormalize, "Project onto the unitary group after each sample");
  verify->add_option("--output", oo.output, "Report file (default: standard output)");

  CLI::App* adiabatic = app.add_subcommand("adiabatic-report", "Exact versus approximate amplitudes");
  add_scenario(adiabatic, true);
  add_format(adiabatic);
  add_documents(adiabatic);

  CLI::App* notrans = app.add_subcommand("no-transition", "Synthesize and check no-transition fields");
  notrans->add_option("--family", no.family, "trivial, rotating or sin2")
      ->check(CLI::IsMember({"trivial", "rotating", "sin2"}))
      ->capture_default_str();
  notrans->add_option("--theta0", no.theta0, "Initial mixing angle")->capture_default_str();
  notrans->add_option("--delta", no.delta, "Mixing-angle excursion")->capture_default_str();
  notrans->add_option("--T", no.T, "Comma-separated slowness ladder")->delimiter(',')->capture_default_str();
  notrans->add_option("--X", no.X, "Amplitude of x(t) = X sin(kappa t)")->capture_default_str();
  notrans->add_option("--kappa", no.kappa, "Rate of x(t)")->capture_default_str();
  notrans->add_option("--samples", no.samples, "Grid intervals")->capture_default_str();
  notrans->add_option("--step", no.step, "Oracle step")->capture_default_str();
  add_format(notrans);
  add_documents(notrans);

  CLI::App* sweep = app.add_subcommand("sweep", "Adiabaticity diagnostics over a nu0T ladder");
  so.nu0T = {10.0, 20.0, 40.0, 80.0, 160.0};
  add_scenario(sweep, false);
  add_format(sweep);
  sweep->add_option("--output", oo.output, "Output file (default: standard output)");

  auto usage = [&](std::ostream& s) { s << app.help(); };

  try {
    if (args.empty()) {
      usage(err);
      return kConfigError;
    }
    std::vector<std::string> merged = merge_config(args);
    if (merged.empty()) {
      err << "config: no command given\n";
      usage(err);
      return kConfigError;
    }
    // The first ladder option seen replaces the sweep default rather than appending to it.
    if (std::find(merged.begin(), merged.end(), "--nu0T") != merged.end() ||
        std::any_of(merged.begin(), merged.end(), [](const std::string& a) { return a.rfind("--nu0T=", 0) == 0; })) {
      so.nu0T.clear();
    }
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    usage(err);
    return kConfigError;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    usage(err);
    return kConfigError;
  }

  try {
    if (scenario->parsed()) return cmd_scenario(so, oo, out);
    if (verify->parsed()) return cmd_verify(so, vo, oo, out, err);
    if (adiabatic->parsed()) return cmd_adiabatic(so, oo, out);
    if (notrans->parsed()) return cmd_no_transition(no, oo, out);
    if (sweep->parsed()) return cmd_sweep(so, oo, out);
  } catch (const ConfigError& e) {
    err << "config: " << e.what() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "config: " << e.what() << "\n";
    return kConfigError;
  } catch (const SynthesisError& e) {
    err << "synthesis: " << e.what() << "\n";
    return kSynthesisViolation;
  } catch (const Error& e) {
    err << "numerical: " << e.what() << "\n";
    return kNumericalFailure;
  }
  usage(err);
  return kConfigError;
}

}  // namespace twolevel::cli
