// Copyright 2026 The git-channel Authors
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

#pragma once

// git-channel {spectrum|map|protocol|check} --config FILE [--override k=v]...
//   [--out DIR] [--seed N] [--workers N] [--figure ID] [--protocol ID] [--strict]
//
// Exit codes: 0 success, 1 inconclusive protocol verdict under --strict,
// 2 configuration error, 3 parameters outside the model's validity, 4 failed check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gitchan/channel.hpp"
#include "gitchan/config.hpp"
#include "gitchan/criteria.hpp"
#include "gitchan/errors.hpp"
#include "gitchan/gaussian.hpp"
#include "gitchan/linalg.hpp"
#include "gitchan/model.hpp"
#include "gitchan/oracle.hpp"
#include "gitchan/protocols.hpp"
#include "gitchan/sweep.hpp"

namespace gitchan::cli {

enum ExitCode : int {
  kOk = 0,
  kInconclusive = 1,
  kConfigError = 2,
  kPhysicsError = 3,
  kCheckFailed = 4,
};

// ---------------------------------------------------------------------------
// Config resolution

inline model::Bath resolve_bath(const io::Config& cfg, const std::string& suffix) {
  const std::string t = "temperature_K" + suffix, n = "N_T" + suffix;
  if (cfg.has(t) && cfg.has(n)) {
    throw ConfigError("give either '" + t + "' or '" + n + "', not both");
  }
  if (cfg.has(t)) return model::Temperature{cfg.number(t)};
  if (cfg.has(n)) return model::Occupation{cfg.number(n)};
  throw ConfigError("missing config key '" + t + "' (or '" + n + "')");
}

inline bool is_asymmetric(const io::Config& cfg) {
  for (const auto& [k, v] : cfg.entries()) {
    if (k.size() > 2 && k[k.size() - 2] == '_' && (k.back() == '1' || k.back() == '2')) return true;
    if (k == "tune") return true;
  }
  return false;
}

/// Symmetric parameters; `g = opt` selects the optimal coupling.
inline model::SymmetricParams resolve_symmetric(const io::Config& cfg) {
  const double omega_B = cfg.number("omega_B");
  const double gamma = cfg.number("gamma");
  const double kappa = cfg.number("kappa");
  const double lambda = cfg.number("lambda");
  const auto bath = resolve_bath(cfg, "");
  const auto g_text = cfg.text("g");
  const bool optimal = g_text == "opt";
  const double g = optimal ? 0.0 : cfg.number("g");
  auto p = model::SymmetricParams::make(omega_B, gamma, kappa, g, lambda, bath);
  return optimal ? channel::with_optimal_coupling(p) : p;
}

/// Two-system parameters. With `tune = true` the detunings and couplings are
/// replaced by the ratio-maximizing ones and g_1, g_2 may be omitted.
inline model::AsymmetricParams resolve_asymmetric(const io::Config& cfg) {
  for (const char* k : {"omega_B", "gamma", "kappa", "g", "temperature_K", "N_T"}) {
    if (cfg.has(k)) {
      throw ConfigError(std::string("config mixes symmetric key '") + k + "' with per-system keys");
    }
  }
  const bool tune = cfg.flag_or("tune", false);
  model::AsymmetricParams p;
  p.lambda = cfg.number("lambda");
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string s = "_" + std::to_string(i + 1);
    auto& sys = p.sys[i];
    sys.omega_B = cfg.number("omega_B" + s);
    sys.gamma = cfg.number("gamma" + s);
    sys.kappa = cfg.number("kappa" + s);
    sys.Delta = cfg.number_or("Delta" + s, sys.omega_B);
    sys.g = tune ? cfg.number_or("g" + s, 0.0) : cfg.number("g" + s);
    if (!(sys.omega_B > 0.0)) throw std::invalid_argument("omega_B" + s + " must be > 0");
    sys.N_T = model::occupation_of(resolve_bath(cfg, s), sys.omega_B);
  }
  p.validate();
  if (tune) p = channel::apply_tuning(p, channel::asymmetric_optimum(p));
  return p;
}

inline void require_rwa(const model::SymmetricParams& p, double margin_factor) {
  const auto r = model::rwa_valid(p, margin_factor);
  if (r.valid) return;
  std::ostringstream msg;
  msg << std::setprecision(6) << "rotating-wave approximation not valid: N_T / bound = " << r.margin
      << " (need > " << margin_factor << "), g / kappa = " << r.coupling_ratio << " (need <= "
      << 1.0 / margin_factor << ")";
  throw PhysicsError(msg.str());
}

inline criteria::GridOptions resolve_grid(const io::Config& cfg, unsigned workers) {
  criteria::GridOptions o;
  o.omega_B_min = cfg.number_or("omega_B_min", o.omega_B_min);
  o.omega_B_max = cfg.number_or("omega_B_max", o.omega_B_max);
  o.Q_min = cfg.number_or("Q_min", o.Q_min);
  o.Q_max = cfg.number_or("Q_max", o.Q_max);
  o.n_omega = cfg.count_or("n_omega", o.n_omega);
  o.n_Q = cfg.count_or("n_Q", o.n_Q);
  o.omega_A = cfg.number_or("omega_A", o.omega_A);
  o.workers = workers;
  o.validate();
  return o;
}

inline model::DeviceGeometry resolve_device(const io::Config& cfg) {
  std::optional<double> distance;
  if (cfg.has("distance")) distance = cfg.number("distance");
  return model::DeviceGeometry::spheres(cfg.number_or("radius", 1e-3),
                                        cfg.number_or("density", model::PhysicalConstants::rho_Au),
                                        cfg.number("temperature_K"), distance);
}

// ---------------------------------------------------------------------------
// Consistency checks at one parameter point

struct CheckRow {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  double coefficient_tol = 1e-10;
  double mean_field_tol = 1e-6;
  double margin_factor = 10.0;
  // Replaceable so a deliberately broken formula can be shown to fail.
  std::function<channel::TransferCoefficients(const model::SymmetricParams&, double)> analytic =
      channel::transfer_coefficients_analytic;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << x;
  return s.str();
}

inline double coeff_distance(const channel::TransferCoefficients& a,
                             const channel::TransferCoefficients& b) {
  const auto x = a.as_array(), y = b.as_array();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += std::norm(x[i] - y[i]);
    den += std::norm(y[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace detail

inline std::vector<CheckRow> run_checks(const model::SymmetricParams& p, const CheckOptions& opt = {}) {
  std::vector<CheckRow> rows;
  const double w = channel::transparency_linewidth(p);

  {
    CheckRow r{"stability", true, ""};
    const auto ev = linalg::rightmost_eigenvalue(channel::drift_matrix(p).A);
    const auto rwa = model::rwa_valid(p, opt.margin_factor);
    std::ostringstream d;
    d << "rightmost eigenvalue " << detail::fmt(ev.real()) << (ev.imag() < 0 ? " - " : " + ")
      << detail::fmt(std::abs(ev.imag())) << "i; N_T / RWA bound " << detail::fmt(rwa.margin)
      << " (need > " << detail::fmt(opt.margin_factor) << "); g / kappa "
      << detail::fmt(rwa.coupling_ratio) << " (need <= " << detail::fmt(1.0 / opt.margin_factor) << ")";
    r.passed = ev.real() < 0.0 && rwa.valid;
    r.detail = d.str();
    rows.push_back(r);
  }

  {
    CheckRow r{"coefficients", true, ""};
    double worst = 0.0, worst_unitarity = 0.0, at = 0.0;
    try {
      for (double f : {0.0, 0.5, -0.5, 2.0, -2.0, 10.0, -10.0}) {
        const double om = f * w;
        const auto a = opt.analytic(p, om);
        const auto n = channel::transfer_coefficients_numeric(p, om);
        const double dist = detail::coeff_distance(a, n);
        if (!(dist <= worst)) {
          worst = dist;
          at = om;
        }
        worst_unitarity = std::max({worst_unitarity, std::abs(a.unitarity_sum() - 1.0),
                                    std::abs(n.unitarity_sum() - 1.0)});
      }
      r.passed = worst <= opt.coefficient_tol && worst_unitarity <= opt.coefficient_tol;
      r.detail = "max relative difference " + detail::fmt(worst) + " at omega " + detail::fmt(at) +
                 " (tol " + detail::fmt(opt.coefficient_tol) + "); max |unitarity - 1| " +
                 detail::fmt(worst_unitarity);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    rows.push_back(r);
  }

  {
    CheckRow r{"mean_field", true, ""};
    try {
      double worst = 0.0;
      for (double f : {0.0, 0.5, 2.0}) {
        const double om = f * w;
        const auto c = channel::transfer_coefficients_numeric(p, om);
        const auto m = oracle::mean_field_transmission(p, om);
        worst = std::max(worst, std::abs(m.ratio - c.alpha_1) / std::max(std::abs(c.alpha_1), 1e-300));
      }
      r.passed = worst <= opt.mean_field_tol;
      r.detail = "max relative difference " + detail::fmt(worst) + " (tol " +
                 detail::fmt(opt.mean_field_tol) + ")";
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    rows.push_back(r);
  }

  {
    CheckRow r{"lyapunov", true, ""};
    try {
      gaussian::GaussianState s;
      s.n_modes = 4;
      s.mean.assign(8, 0.0);
      s.cov = oracle::steady_state_covariance(p);
      const double margin = s.uncertainty_margin();
      r.passed = s.is_physical();
      r.detail = "uncertainty margin " + detail::fmt(margin);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Subcommands

struct RunContext {
  io::Config cfg;
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  bool strict = false;
  std::string command;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

inline void write_manifest(const RunContext& ctx) {
  write_file(ctx.out_dir / "manifest.cfg", "# git-channel " + ctx.command + "\n" + ctx.cfg.serialize());
}

inline std::string num(double x) { return sweep::format_double(x); }

}  // namespace detail

inline int cmd_spectrum(RunContext& ctx, std::ostream& out) {
  auto& cfg = ctx.cfg;
  sweep::SpectralScan scan;
  if (is_asymmetric(cfg)) {
    const auto p = resolve_asymmetric(cfg);
    const double w = p.sys[0].gamma + std::hypot(p.sys[0].gamma, 2.0 * p.lambda);
    const double lo = cfg.number_or("omega_min", -10.0 * w);
    const double hi = cfg.number_or("omega_max", 10.0 * w);
    const auto n = cfg.count_or("n_points", 2001);
    cfg.set("omega_min", detail::num(lo));
    cfg.set("omega_max", detail::num(hi));
    cfg.set("n_points", std::to_string(n));
    scan = sweep::asymmetric_spectrum_scan(p, lo, hi, n, ctx.workers);
    for (const auto& note : p.warnings()) out << "warning: " << note << '\n';
  } else {
    const auto p = resolve_symmetric(cfg);
    require_rwa(p, cfg.number_or("margin_factor", 10.0));
    const double w = channel::transparency_linewidth(p);
    const double lo = cfg.number_or("omega_min", -10.0 * w);
    const double hi = cfg.number_or("omega_max", 10.0 * w);
    const auto n = cfg.count_or("n_points", 2001);
    cfg.set("omega_min", detail::num(lo));
    cfg.set("omega_max", detail::num(hi));
    cfg.set("n_points", std::to_string(n));
    scan = sweep::spectrum_scan(p, lo, hi, n, ctx.workers);
  }
  std::ostringstream csv;
  sweep::write_spectrum_csv(csv, scan);
  detail::write_file(ctx.out_dir / "spectrum.csv", csv.str());
  detail::write_manifest(ctx);

  const auto& pe = scan.peak_eta();
  const auto& pr = scan.peak_ratio();
  std::size_t band = 0;
  for (const auto& r : scan.rows) band += r.nonclassical ? 1 : 0;
  out << std::setprecision(6);
  out << "points:       " << scan.rows.size() << '\n';
  out << "peak eta:     " << pe.eta << " at omega = " << pe.omega << " s^-1\n";
  out << "peak ratio:   " << pr.ratio << " at omega = " << pr.omega << " s^-1 ("
      << (pr.ratio > 1.0 ? "nonclassical" : "classical") << ")\n";
  out << "linewidth:    " << scan.window_hi - scan.window_lo << " s^-1\n";
  out << "nonclassical: " << band << " of " << scan.rows.size() << " points\n";
  out << "wrote " << (ctx.out_dir / "spectrum.csv").string() << '\n';
  return kOk;
}

inline int cmd_map(RunContext& ctx, std::ostream& out) {
  auto& cfg = ctx.cfg;
  const auto id = cfg.get("figure").value_or("fig2");
  const auto fig = sweep::parse_figure(id);
  if (!fig) throw ConfigError("unknown figure '" + id + "' (expected fig2, s2, s3, s4 or s5)");
  cfg.set("figure", id);
  const auto device = resolve_device(cfg);
  const auto opt = resolve_grid(cfg, ctx.workers);
  const auto grid = sweep::figure_grid(*fig, device, opt);
  std::ostringstream csv;
  sweep::write_grid_csv(csv, grid);
  const auto path = ctx.out_dir / (id + ".csv");
  detail::write_file(path, csv.str());
  detail::write_manifest(ctx);

  std::size_t quantum = 0;
  for (const auto& c : grid.cells) quantum += c.classification == criteria::Classification::quantum;
  out << "figure:  " << id << " (" << sweep::primary_column(*fig) << ")\n";
  out << "cells:   " << grid.cells.size() << " (" << opt.n_omega << " omega_B x " << opt.n_Q << " Q)\n";
  out << "quantum: " << quantum << '\n';
  out << "wrote " << path.string() << '\n';
  return kOk;
}

inline int cmd_protocol(RunContext& ctx, std::ostream& out) {
  auto& cfg = ctx.cfg;
  const auto id = cfg.text("protocol");
  const auto proto = protocols::parse_protocol(id);
  if (!proto) throw ConfigError("unknown protocol '" + id + "' (expected probe, benchmark or entanglement)");

  protocols::ProtocolOptions opt;
  opt.seed = cfg.count_or("seed", 0);
  opt.workers = ctx.workers;
  opt.k_sigma = cfg.number_or("k_sigma", opt.k_sigma);
  opt.amplitudes = {protocols::cplx(cfg.number_or("probe_amplitude", 100.0), 0.0)};
  opt.shots = cfg.count_or("shots", opt.shots);
  opt.N_in = cfg.number_or("N_in", opt.N_in);
  opt.n_inputs = cfg.count_or("n_inputs", opt.n_inputs);
  opt.sampling_estimator = cfg.flag_or("sampling", false);
  opt.squeezing = cfg.number_or("squeezing", opt.squeezing);
  opt.omega = cfg.number_or("omega", 0.0);
  opt.optimal_coupling = false;  // the coupling comes from the config (g = opt selects it)
  cfg.set("seed", std::to_string(opt.seed));

  protocols::ProtocolReport report;
  if (is_asymmetric(cfg)) {
    const auto p = resolve_asymmetric(cfg);
    for (const auto& note : p.warnings()) out << "warning: " << note << '\n';
    const auto ch = channel::asymmetric_channel_at(p, p.sys[0].omega_B + opt.omega).channel;
    report = protocols::run_protocol(*proto, ch, opt);
  } else {
    const auto p = resolve_symmetric(cfg);
    require_rwa(p, cfg.number_or("margin_factor", 10.0));
    report = protocols::end_to_end(p, *proto, opt);
  }
  detail::write_file(ctx.out_dir / "report.json", protocols::to_json(report).dump(2) + "\n");
  detail::write_manifest(ctx);

  out << std::setprecision(6);
  for (const auto& e : report.estimates) {
    out << "  " << std::left << std::setw(22) << e.name << e.value << " +- " << e.se << '\n';
  }
  out << "verdict: " << protocols::to_string(report.verdict) << '\n';
  if (ctx.strict && report.verdict == protocols::Verdict::inconclusive) return kInconclusive;
  return kOk;
}

inline int cmd_check(RunContext& ctx, std::ostream& out, const CheckOptions& base = {}) {
  auto& cfg = ctx.cfg;
  if (is_asymmetric(cfg)) throw ConfigError("check runs on symmetric parameters only");
  const auto p = resolve_symmetric(cfg);
  auto opt = base;
  opt.margin_factor = cfg.number_or("margin_factor", opt.margin_factor);
  const auto rows = run_checks(p, opt);
  detail::write_manifest(ctx);
  bool ok = true;
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << r.name << (r.passed ? "PASS  " : "FAIL  ") << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kCheckFailed;
}

/// Parses arguments, runs one subcommand and maps errors to exit codes.
/// `check_options` lets tests substitute the analytic coefficient formula.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const CheckOptions& check_options = {}) {
  CLI::App app{"Gravitationally-induced transparency channel calculator", "git-channel"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string figure, protocol;
  bool strict = false;
  app.add_option("--config", config_path, "Parameter file (key = value per line)")->required();
  app.add_option("--override", overrides, "Replace one config value, key=value (repeatable)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed for protocol simulations");
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");
  app.add_option("--figure", figure, "Map to compute: fig2, s2, s3, s4, s5");
  app.add_option("--protocol", protocol, "Protocol to simulate: probe, benchmark, entanglement");
  app.add_flag("--strict", strict, "Exit with status 1 when a protocol verdict is inconclusive");
  auto* spectrum = app.add_subcommand("spectrum", "Channel across the transparency window");
  auto* map = app.add_subcommand("map", "Classification and feasibility over (omega_B, Q)");
  auto* proto = app.add_subcommand("protocol", "Simulate a falsification protocol");
  auto* check = app.add_subcommand("check", "Cross-check the closed forms at the configured point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunContext ctx;
    ctx.cfg = io::Config::load(config_path);
    ctx.cfg.require_known();
    for (const auto& o : overrides) ctx.cfg.apply_override(o);
    if (seed) ctx.cfg.set("seed", std::to_string(*seed));
    if (!figure.empty()) ctx.cfg.set("figure", figure);
    if (!protocol.empty()) ctx.cfg.set("protocol", protocol);
    if (workers) ctx.cfg.set("workers", std::to_string(*workers));
    ctx.workers = static_cast<unsigned>(ctx.cfg.count_or("workers", 1));
    ctx.strict = strict;
    ctx.out_dir = out_dir;
    std::filesystem::create_directories(ctx.out_dir);

    if (spectrum->parsed()) {
      ctx.command = "spectrum";
      return cmd_spectrum(ctx, out);
    }
    if (map->parsed()) {
      ctx.command = "map";
      return cmd_map(ctx, out);
    }
    if (proto->parsed()) {
      ctx.command = "protocol";
      return cmd_protocol(ctx, out);
    }
    if (check->parsed()) {
      ctx.command = "check";
      return cmd_check(ctx, out, check_options);
    }
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PhysicsError& e) {
    err << "physics error: " << e.what() << '\n';
    return kPhysicsError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace gitchan::cli
