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

// Tabular data behind the spectral curves and the (omega_B, Q) maps.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gitchan/channel.hpp"
#include "gitchan/criteria.hpp"
#include "gitchan/model.hpp"
#include "gitchan/parallel.hpp"

namespace gitchan::sweep {

inline constexpr std::string_view kSpectrumHeader = "omega,eta,output_noise,ratio,nonclassical";
inline constexpr std::string_view kGridHeader =
    "omega_B,Q,ratio,classification,eta_opt,tau_min_s,P_min_W";

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

struct SpectralRow {
  double omega = 0.0;
  double eta = 0.0;
  double output_noise = 0.0;
  double ratio = 0.0;
  bool nonclassical = false;
};

struct SpectralScan {
  model::SymmetricParams params;
  std::vector<SpectralRow> rows;
  double window_lo = 0.0;  // -gamma_eff / 2
  double window_hi = 0.0;  // +gamma_eff / 2

  /// Row with the largest eta (first one on ties).
  const SpectralRow& peak_eta() const;
  const SpectralRow& peak_ratio() const;
};

inline const SpectralRow& SpectralScan::peak_eta() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].eta > rows[best].eta) best = i;
  return rows.at(best);
}

inline const SpectralRow& SpectralScan::peak_ratio() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].ratio > rows[best].ratio) best = i;
  return rows.at(best);
}

/// Point i of n evenly spaced points on [lo, hi], endpoints exact. Grids that
/// are symmetric about 0 stay exactly symmetric.
inline double linear_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (i == 0) return lo;
  if (i + 1 == n) return hi;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double t = static_cast<double>(2 * static_cast<long long>(i) - static_cast<long long>(n - 1)) /
                   static_cast<double>(n - 1);
  return mid + half * t;
}

inline SpectralRow spectral_row(const channel::AttenuatorChannel& ch, double omega);

inline SpectralRow spectral_row(const model::SymmetricParams& p, double omega) {
  return spectral_row(channel::channel_at(p, omega), omega);
}

/// Channel along n evenly spaced probe frequencies in [omega_min, omega_max].
inline SpectralScan spectrum_scan(const model::SymmetricParams& p, double omega_min,
                                  double omega_max, std::size_t n, unsigned workers = 1) {
  p.validate();
  if (n < 3) throw std::invalid_argument("spectrum: need at least 3 points");
  if (!(omega_min < 0.0 && omega_max > 0.0)) {
    throw std::invalid_argument("spectrum: frequency range must straddle 0");
  }
  SpectralScan s;
  s.params = p;
  const double w = channel::transparency_linewidth(p);
  s.window_lo = -0.5 * w;
  s.window_hi = 0.5 * w;
  s.rows.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    s.rows[i] = spectral_row(p, linear_point(omega_min, omega_max, i, n));
  });
  return s;
}

/// Default range: +-10 gamma_eff with 2001 points.
inline SpectralScan spectrum_scan(const model::SymmetricParams& p, unsigned workers = 1) {
  const double w = channel::transparency_linewidth(p);
  return spectrum_scan(p, -10.0 * w, 10.0 * w, 2001, workers);
}

inline SpectralRow spectral_row(const channel::AttenuatorChannel& ch, double omega) {
  SpectralRow r;
  r.omega = omega;
  r.eta = ch.eta;
  r.output_noise = ch.output_noise();
  r.ratio = ch.eta == 0.0 ? 0.0 : ch.ratio();
  r.nonclassical = r.ratio > 1.0;
  return r;
}

/// Asymmetric systems: rows are labelled by the offset from omega_B1, the
/// laser-frame frequency where the tuned channel peaks.
inline SpectralScan asymmetric_spectrum_scan(const model::AsymmetricParams& p, double offset_min,
                                             double offset_max, std::size_t n,
                                             unsigned workers = 1) {
  p.validate();
  if (n < 3) throw std::invalid_argument("spectrum: need at least 3 points");
  if (!(offset_min < 0.0 && offset_max > 0.0)) {
    throw std::invalid_argument("spectrum: frequency range must straddle 0");
  }
  SpectralScan s;
  const double w = p.sys[0].gamma + std::hypot(p.sys[0].gamma, 2.0 * p.lambda);
  s.window_lo = -0.5 * w;
  s.window_hi = 0.5 * w;
  s.rows.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const double off = linear_point(offset_min, offset_max, i, n);
    s.rows[i] = spectral_row(channel::asymmetric_channel_at(p, p.sys[0].omega_B + off).channel, off);
  });
  return s;
}

inline void write_spectrum_csv(std::ostream& os, const SpectralScan& s) {
  os << kSpectrumHeader << '\n';
  for (const auto& r : s.rows) {
    os << format_double(r.omega) << ',' << format_double(r.eta) << ','
       << format_double(r.output_noise) << ',' << format_double(r.ratio) << ','
       << (r.nonclassical ? 1 : 0) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Maps

enum class Figure { fig2, s2, s3, s4, s5 };

inline std::string_view to_string(Figure f) {
  switch (f) {
    case Figure::fig2: return "fig2";
    case Figure::s2: return "s2";
    case Figure::s3: return "s3";
    case Figure::s4: return "s4";
    case Figure::s5: return "s5";
  }
  return "?";
}

inline std::optional<Figure> parse_figure(std::string_view s) {
  for (auto f : {Figure::fig2, Figure::s2, Figure::s3, Figure::s4, Figure::s5})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

/// The column a figure displays. Every grid file carries the full schema so
/// one reader handles them all; this names the one to draw.
inline std::string_view primary_column(Figure f) {
  switch (f) {
    case Figure::fig2:
    case Figure::s2: return "classification";
    case Figure::s3: return "eta_opt";
    case Figure::s4: return "tau_min_s";
    case Figure::s5: return "P_min_W";
  }
  return "?";
}

struct FigureGrid {
  Figure figure = Figure::fig2;
  criteria::GridOptions options;
  std::vector<criteria::FeasibilityPoint> cells;  // Q-major

  const criteria::FeasibilityPoint& at(std::size_t iQ, std::size_t iw) const {
    return cells.at(iQ * options.n_omega + iw);
  }
};

inline FigureGrid figure_grid(Figure f, const model::DeviceGeometry& device,
                              const criteria::GridOptions& opt = {}) {
  FigureGrid g;
  g.figure = f;
  g.options = opt;
  g.cells = criteria::classify_grid(device, opt);
  return g;
}

/// Indices of the cell closest (in log distance) to (omega_B, Q).
inline std::pair<std::size_t, std::size_t> nearest_cell(const criteria::GridOptions& opt,
                                                       double omega_B, double Q) {
  auto idx = [](double lo, double hi, std::size_t n, double x) {
    const double t = (std::log(x) - std::log(lo)) / (std::log(hi) - std::log(lo));
    const double i = std::round(t * static_cast<double>(n - 1));
    if (i <= 0.0) return std::size_t{0};
    if (i >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::size_t>(i);
  };
  return {idx(opt.Q_min, opt.Q_max, opt.n_Q, Q), idx(opt.omega_B_min, opt.omega_B_max, opt.n_omega, omega_B)};
}

inline void write_grid_csv(std::ostream& os, const FigureGrid& g) {
  os << kGridHeader << '\n';
  for (const auto& c : g.cells) {
    os << format_double(c.omega_B) << ',' << format_double(c.Q) << ',' << format_double(c.ratio)
       << ',' << criteria::to_string(c.classification) << ',' << format_double(c.eta_opt) << ','
       << format_double(c.tau_min) << ',' << format_double(c.P_min) << '\n';
  }
}

/// Splits one CSV line on commas (no quoting is ever emitted).
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace gitchan::sweep
