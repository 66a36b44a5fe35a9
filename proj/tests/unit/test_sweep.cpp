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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "gitchan/sweep.hpp"
#include "support/reference.hpp"

namespace gitchan::sweep {
namespace {

using gitchan::testing::reference_params;
namespace frozen = gitchan::testing::frozen;

constexpr double kRedStarOmega = 0.18850;
constexpr double kRedStarQ = 1e14;

model::DeviceGeometry gold_device() {
  return model::DeviceGeometry::spheres(1e-3, model::PhysicalConstants::rho_Au,
                                        gitchan::testing::kTemperature);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(rng), ex(rng));
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e14), "1e+14");
  EXPECT_TRUE(std::isinf(parse_double(format_double(INFINITY))));
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
}

TEST(Spectrum, SymmetricSortedAndConsistent) {
  const auto s = spectrum_scan(reference_params());
  ASSERT_EQ(s.rows.size(), 2001u);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    const auto& m = s.rows[s.rows.size() - 1 - i];
    EXPECT_EQ(r.omega, -m.omega);
    EXPECT_NEAR(r.eta, m.eta, 1e-12);
    EXPECT_EQ(r.nonclassical, r.ratio > 1.0);
    EXPECT_GE(r.eta, 0.0);
    EXPECT_LE(r.eta, 1.0);
    if (i > 0) EXPECT_LT(s.rows[i - 1].omega, r.omega);
  }
  EXPECT_EQ(s.rows[1000].omega, 0.0);
}

TEST(Spectrum, PeakAtZeroWithOptimalRatio) {
  const auto s = spectrum_scan(reference_params());
  EXPECT_EQ(s.peak_eta().omega, 0.0);
  EXPECT_EQ(s.peak_ratio().omega, 0.0);
  EXPECT_NEAR(s.peak_ratio().ratio, frozen::ratio_opt, 1e-6 * frozen::ratio_opt);
  EXPECT_NEAR(s.window_hi - s.window_lo, frozen::gamma_eff, 1e-9 * frozen::gamma_eff);
  // The nonclassical band lies inside the scanned range and contains omega = 0.
  EXPECT_FALSE(s.rows.front().nonclassical);
  EXPECT_FALSE(s.rows.back().nonclassical);
}

TEST(Spectrum, MatchesFrozenSamples) {
  const auto p = reference_params();
  for (const auto& f : frozen::samples) {
    const auto r = spectral_row(p, f.omega);
    EXPECT_NEAR(r.eta, f.eta, 1e-9 * f.eta);
    EXPECT_NEAR(r.output_noise, f.loss * f.n, 1e-8 * f.loss * f.n);
  }
}

TEST(Spectrum, NoGravityIsFlatZero) {
  auto p = reference_params();
  p.lambda = 0.0;
  for (const auto& r : spectrum_scan(p, -1e-5, 1e-5, 101).rows) {
    EXPECT_EQ(r.eta, 0.0);
    EXPECT_FALSE(r.nonclassical);
  }
}

TEST(Spectrum, RejectsBadRanges) {
  const auto p = reference_params();
  EXPECT_THROW(spectrum_scan(p, 1e-6, 2e-6, 11), std::invalid_argument);
  EXPECT_THROW(spectrum_scan(p, -1e-6, 1e-6, 2), std::invalid_argument);
}

TEST(Spectrum, CsvRoundTripAndWorkerIndependence) {
  const auto p = reference_params();
  std::ostringstream a, b;
  write_spectrum_csv(a, spectrum_scan(p, -3e-5, 3e-5, 301, 1));
  write_spectrum_csv(b, spectrum_scan(p, -3e-5, 3e-5, 301, 4));
  EXPECT_EQ(a.str(), b.str());
  const auto lines = lines_of(a.str());
  ASSERT_EQ(lines.size(), 302u);
  EXPECT_EQ(lines[0], kSpectrumHeader);
  const auto scan = spectrum_scan(p, -3e-5, 3e-5, 301);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    ASSERT_EQ(f.size(), 5u);
    const auto& r = scan.rows[i - 1];
    EXPECT_EQ(parse_double(f[0]), r.omega);
    EXPECT_EQ(parse_double(f[1]), r.eta);
    EXPECT_EQ(parse_double(f[2]), r.output_noise);
    EXPECT_EQ(parse_double(f[3]), r.ratio);
    EXPECT_EQ(f[4], r.nonclassical ? "1" : "0");
  }
}

TEST(Figures, NamesAndColumns) {
  for (auto f : {Figure::fig2, Figure::s2, Figure::s3, Figure::s4, Figure::s5}) {
    EXPECT_EQ(parse_figure(to_string(f)), f);
    EXPECT_NE(std::string(kGridHeader).find(primary_column(f)), std::string::npos);
  }
  EXPECT_FALSE(parse_figure("s6").has_value());
}

class DefaultGrid : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { grid_ = new FigureGrid(figure_grid(Figure::fig2, gold_device())); }
  static void TearDownTestSuite() { delete grid_; }
  static FigureGrid* grid_;
};
FigureGrid* DefaultGrid::grid_ = nullptr;

TEST_F(DefaultGrid, RedStarCellIsQuantum) {
  const auto [iq, iw] = nearest_cell(grid_->options, kRedStarOmega, kRedStarQ);
  const auto& c = grid_->at(iq, iw);
  EXPECT_EQ(c.classification, criteria::Classification::quantum);
  EXPECT_GT(c.eta_opt, 0.99);
  EXPECT_GE(c.tau_min, 1e5);
  EXPECT_LE(c.tau_min, 2e5);
}

TEST_F(DefaultGrid, BoundaryWithinOneCellOfAnalyticCurve) {
  // Independent boundary: Q*(w) solves 2 Q (w_G/w)^2 sinh(w / 2 w_T) = 1.
  const auto& o = grid_->options;
  const double lq_step = (std::log(o.Q_max) - std::log(o.Q_min)) / double(o.n_Q - 1);
  for (std::size_t iw = 0; iw < o.n_omega; ++iw) {
    const double w = grid_->at(0, iw).omega_B;
    const double Qstar = 1.0 / (2.0 * std::pow(frozen::w_G / w, 2) * std::sinh(w / (2.0 * frozen::w_T)));
    for (std::size_t iq = 0; iq < o.n_Q; ++iq) {
      const auto& c = grid_->at(iq, iw);
      const bool analytic = c.Q > Qstar;
      if ((c.classification == criteria::Classification::quantum) != analytic) {
        EXPECT_LT(std::abs(std::log(c.Q) - std::log(Qstar)), lq_step) << "w=" << w << " Q=" << c.Q;
      }
    }
  }
}

TEST_F(DefaultGrid, TwoQuantumRegions) {
  const auto& o = grid_->options;
  bool low_transparent = false, high_dim = false;
  for (std::size_t iq = 0; iq < o.n_Q; ++iq)
    for (std::size_t iw = 0; iw < o.n_omega; ++iw) {
      const auto& c = grid_->at(iq, iw);
      if (c.classification != criteria::Classification::quantum) continue;
      if (c.omega_B < 1.0 && c.eta_opt > 0.99) low_transparent = true;
      if (c.omega_B > 1e9) {
        high_dim = true;
        // Largest value sits at the Q ceiling; below Q = 1e14 it stays under 1e-23.
        EXPECT_LT(c.eta_opt, 3e-20) << c.omega_B << " " << c.Q;
        if (c.Q <= 1e14) EXPECT_LT(c.eta_opt, 1e-23) << c.omega_B << " " << c.Q;
      }
    }
  EXPECT_TRUE(low_transparent);
  EXPECT_TRUE(high_dim);
}

TEST(Grid, CsvByteIdenticalAcrossWorkersAndRoundTrips) {
  criteria::GridOptions opt;
  opt.n_omega = 40;
  opt.n_Q = 30;
  std::ostringstream a, b;
  opt.workers = 1;
  write_grid_csv(a, figure_grid(Figure::s5, gold_device(), opt));
  opt.workers = 3;
  const auto g = figure_grid(Figure::s5, gold_device(), opt);
  write_grid_csv(b, g);
  EXPECT_EQ(a.str(), b.str());
  const auto lines = lines_of(a.str());
  ASSERT_EQ(lines.size(), 40u * 30u + 1u);
  EXPECT_EQ(lines[0], kGridHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    ASSERT_EQ(f.size(), 7u);
    const auto& c = g.cells[i - 1];
    EXPECT_EQ(parse_double(f[0]), c.omega_B);
    EXPECT_EQ(parse_double(f[1]), c.Q);
    EXPECT_EQ(parse_double(f[2]), c.ratio);
    EXPECT_EQ(f[3], criteria::to_string(c.classification));
    EXPECT_EQ(f[3] == "quantum", parse_double(f[2]) > 1.0);
    EXPECT_EQ(parse_double(f[4]), c.eta_opt);
    EXPECT_EQ(parse_double(f[5]), c.tau_min);
    EXPECT_EQ(parse_double(f[6]), c.P_min);
    EXPECT_GE(c.eta_opt, 0.0);
    EXPECT_LE(c.eta_opt, 1.0);
  }
}

TEST(Grid, NearestCellClampsAndRounds) {
  criteria::GridOptions opt;
  opt.n_omega = 15;
  opt.n_Q = 17;
  EXPECT_EQ(nearest_cell(opt, 1e-9, 1e30), std::make_pair(std::size_t{16}, std::size_t{0}));
  EXPECT_EQ(nearest_cell(opt, opt.omega_B_max, opt.Q_min), std::make_pair(std::size_t{0}, std::size_t{14}));
  EXPECT_EQ(nearest_cell(opt, 1.0, 1e8).second, 3u);
}

}  // namespace
}  // namespace gitchan::sweep
