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

// Simulated falsification experiments on a thermal-attenuator channel:
//   probe        coherent probes, heterodyne outputs, eta and background estimated
//   benchmark    average coherent-state fidelity against the classical bound
//   entanglement one arm of a two-mode squeezed vacuum sent through the channel
//
// Shots are split into fixed-size chunks, each with its own random stream
// (seed, chunk index), and reduced in chunk order, so results do not depend on
// the number of workers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gitchan/channel.hpp"
#include "gitchan/gaussian.hpp"
#include "gitchan/model.hpp"
#include "gitchan/parallel.hpp"

namespace gitchan::protocols {

using cplx = std::complex<double>;

enum class Protocol { probe, benchmark, entanglement };
enum class Verdict { nonclassical, classical, inconclusive };

inline std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::probe: return "probe";
    case Protocol::benchmark: return "benchmark";
    case Protocol::entanglement: return "entanglement";
  }
  return "?";
}

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::nonclassical: return "nonclassical";
    case Verdict::classical: return "classical";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "probe") return Protocol::probe;
  if (s == "benchmark") return Protocol::benchmark;
  if (s == "entanglement") return Protocol::entanglement;
  return std::nullopt;
}

struct Estimate {
  std::string name;
  double value = 0.0;
  double se = 0.0;
};

struct ProtocolReport {
  Protocol protocol = Protocol::probe;
  channel::AttenuatorChannel channel;
  std::optional<double> coupling_g;  // set when the channel came from system parameters
  std::vector<Estimate> estimates;
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double k_sigma = 3.0;

  const Estimate* find(std::string_view name) const {
    for (const auto& e : estimates)
      if (e.name == name) return &e;
    return nullptr;
  }
};

struct ProtocolOptions {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double k_sigma = 3.0;
  // probe
  std::vector<cplx> amplitudes{cplx(100.0, 0.0)};
  std::uint64_t shots = 10000;  // per amplitude (probe) or per input (benchmark sampling)
  // benchmark
  double N_in = 50.0;
  std::uint64_t n_inputs = 200;
  bool sampling_estimator = false;
  // entanglement
  double squeezing = 1.0;
  // end-to-end
  bool optimal_coupling = true;
  double omega = 0.0;
};

inline constexpr std::uint64_t kChunk = 4096;

/// Three-way decision on a statistic that is positive for a nonclassical channel.
inline Verdict decide(double statistic, double se, double k) {
  if (statistic > k * se) return Verdict::nonclassical;
  if (statistic < -k * se) return Verdict::classical;
  return Verdict::inconclusive;
}

namespace detail {

/// Running complex mean and summed squared deviation (Chan et al. merge).
struct Moments {
  double n = 0.0;
  cplx mean = 0.0;
  double m2 = 0.0;  // sum |x - mean|^2

  void add(cplx x) {
    n += 1.0;
    const cplx d = x - mean;
    mean += d / n;
    m2 += std::real(std::conj(d) * (x - mean));
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const cplx d = o.mean - mean;
    mean += d * (o.n / total);
    m2 += o.m2 + std::norm(d) * n * o.n / total;
    n = total;
  }
};

}  // namespace detail

/// Coherent probes alpha_k, `shots` heterodyne outcomes each.
/// Gain: t = sum conj(alpha_k) m_k / sum |alpha_k|^2 (phase-free least squares);
/// eta = |t|^2 minus its noise bias. Background (1 - eta) N = pooled E|beta - m|^2 - 1,
/// the 1 being the heterodyne vacuum contribution. Nonclassical when eta - noise
/// exceeds k standard errors; inconclusive while eta itself is within k SE of 0.
inline ProtocolReport probe_protocol(const channel::AttenuatorChannel& ch,
                                     const ProtocolOptions& opt = {}) {
  if (opt.shots < 2) throw std::invalid_argument("probe: need at least 2 shots per amplitude");
  if (opt.amplitudes.empty()) throw std::invalid_argument("probe: need at least one amplitude");
  ProtocolReport r;
  r.protocol = Protocol::probe;
  r.channel = ch;
  r.seed = opt.seed;
  r.k_sigma = opt.k_sigma;

  const std::size_t K = opt.amplitudes.size();
  const std::uint64_t chunks_per = (opt.shots + kChunk - 1) / kChunk;
  std::vector<detail::Moments> parts(K * chunks_per);
  std::vector<gaussian::GaussianState> outputs;
  for (const auto& a : opt.amplitudes) {
    outputs.push_back(gaussian::apply_attenuator(gaussian::make_coherent(a), 0, ch));
  }
  parallel_for(parts.size(), opt.workers, [&](std::size_t idx) {
    const std::size_t k = idx / chunks_per;
    const std::uint64_t c = idx % chunks_per;
    const std::uint64_t n = std::min<std::uint64_t>(kChunk, opt.shots - c * kChunk);
    auto rng = gaussian::make_stream(opt.seed, idx);
    detail::Moments m;
    for (std::uint64_t i = 0; i < n; ++i) m.add(gaussian::heterodyne_sample(outputs[k], 0, rng));
    parts[idx] = m;
  });

  cplx num = 0.0;
  double power = 0.0, pooled = 0.0, dof = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    detail::Moments m;
    for (std::uint64_t c = 0; c < chunks_per; ++c) m.merge(parts[k * chunks_per + c]);
    num += std::conj(opt.amplitudes[k]) * m.mean;
    power += std::norm(opt.amplitudes[k]);
    pooled += m.m2;
    dof += m.n - 1.0;
  }
  r.samples = static_cast<std::uint64_t>(K) * opt.shots;

  const double var_beta = pooled / dof;  // E|beta - m|^2 = M + 1
  const double noise = var_beta - 1.0;
  const double noise_se = var_beta / std::sqrt(dof);
  r.estimates.push_back({"noise", noise, noise_se});

  if (power == 0.0) {
    r.estimates.insert(r.estimates.begin(), {"eta", std::numeric_limits<double>::quiet_NaN(),
                                             std::numeric_limits<double>::quiet_NaN()});
    r.verdict = Verdict::inconclusive;
    return r;
  }
  const cplx t = num / power;
  const double n_shots = static_cast<double>(opt.shots);
  const double st2 = var_beta / (n_shots * power);  // E|t_hat - t|^2
  const double eta = std::norm(t) - st2;
  const double eta_se = std::sqrt(2.0 * std::max(eta, 0.0) * st2 + st2 * st2);
  r.estimates.insert(r.estimates.begin(), {"eta", eta, eta_se});
  r.estimates.push_back({"phase", std::arg(t), std::sqrt(st2 / 2.0) / std::max(std::abs(t), 1e-300)});
  const double stat = eta - noise;
  const double stat_se = std::hypot(eta_se, noise_se);
  r.estimates.push_back({"eta_minus_noise", stat, stat_se});

  if (!(eta > opt.k_sigma * eta_se)) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.verdict = decide(stat, stat_se, opt.k_sigma);
  }
  return r;
}

/// Inputs alpha ~ complex Gaussian with E|alpha|^2 = N_in. Default estimator
/// averages the exact overlap per input. The sampling estimator instead draws
/// `shots` heterodyne outcomes of the phase-compensated output for each input,
/// fits their mean m and covariance S, and scores the input by the Gaussian
/// overlap exp(-d^T S^-1 d / 2) / sqrt(det S), d = m - alpha in quadratures.
inline ProtocolReport benchmark_protocol(const channel::AttenuatorChannel& ch,
                                         const ProtocolOptions& opt = {}) {
  if (!(opt.N_in > 0.0)) throw std::invalid_argument("benchmark: N_in must be > 0");
  if (opt.n_inputs < 10) throw std::invalid_argument("benchmark: need at least 10 inputs");
  if (opt.sampling_estimator && opt.shots < 3) {
    throw std::invalid_argument("benchmark: sampling estimator needs at least 3 shots");
  }
  ProtocolReport r;
  r.protocol = Protocol::benchmark;
  r.channel = ch;
  r.seed = opt.seed;
  r.k_sigma = opt.k_sigma;

  auto compensated = ch;
  compensated.phi = 0.0;
  const double sigma = std::sqrt(opt.N_in / 2.0);
  const std::uint64_t n_chunks = (opt.n_inputs + kChunk - 1) / kChunk;
  struct Sum {
    double s = 0.0, s2 = 0.0, n = 0.0;
  };
  std::vector<Sum> parts(n_chunks);
  parallel_for(n_chunks, opt.workers, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min<std::uint64_t>(opt.n_inputs, begin + kChunk);
    auto rng = gaussian::make_stream(opt.seed, c);
    std::normal_distribution<double> z(0.0, sigma);
    Sum acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      const cplx a{z(rng), z(rng)};
      double f;
      if (!opt.sampling_estimator) {
        f = gaussian::coherent_overlap_fidelity(compensated, a);
      } else {
        const auto out = gaussian::apply_attenuator(gaussian::make_coherent(a), 0, compensated);
        double mq = 0, mp = 0, sqq = 0, spp = 0, sqp = 0, n = 0;
        for (std::uint64_t s = 0; s < opt.shots; ++s) {
          const cplx b = gaussian::heterodyne_sample(out, 0, rng) * std::sqrt(2.0);
          n += 1.0;
          const double dq = b.real() - mq, dp = b.imag() - mp;
          mq += dq / n;
          mp += dp / n;
          sqq += dq * (b.real() - mq);
          spp += dp * (b.imag() - mp);
          sqp += dq * (b.imag() - mp);
        }
        const double Sqq = sqq / (n - 1), Spp = spp / (n - 1), Sqp = sqp / (n - 1);
        const double det = Sqq * Spp - Sqp * Sqp;
        const double dq = mq - std::sqrt(2.0) * a.real(), dp = mp - std::sqrt(2.0) * a.imag();
        const double quad = (Spp * dq * dq - 2 * Sqp * dq * dp + Sqq * dp * dp) / det;
        f = std::exp(-0.5 * quad) / std::sqrt(det);
      }
      acc.s += f;
      acc.s2 += f * f;
      acc.n += 1.0;
    }
    parts[c] = acc;
  });
  Sum t;
  for (const auto& p : parts) {
    t.s += p.s;
    t.s2 += p.s2;
    t.n += p.n;
  }
  const double mean = t.s / t.n;
  const double var = std::max(0.0, (t.s2 - t.n * mean * mean) / (t.n - 1.0));
  const double se = std::sqrt(var / t.n);
  const double bound = gaussian::classical_fidelity_bound(opt.N_in);
  r.estimates.push_back({"fidelity", mean, se});
  r.estimates.push_back({"classical_bound", bound, 0.0});
  r.estimates.push_back({"fidelity_minus_bound", mean - bound, se});
  r.samples = opt.n_inputs * (opt.sampling_estimator ? opt.shots : 1);
  r.verdict = decide(mean - bound, se, opt.k_sigma);
  return r;
}

/// Exact covariance propagation of a TMSV(r) with one arm through the channel,
/// followed by the PPT test; second moments are assumed known exactly.
inline ProtocolReport entanglement_protocol(const channel::AttenuatorChannel& ch,
                                            const ProtocolOptions& opt = {}) {
  if (!(opt.squeezing > 0.0)) throw std::invalid_argument("entanglement: squeezing must be > 0");
  ProtocolReport r;
  r.protocol = Protocol::entanglement;
  r.channel = ch;
  r.seed = opt.seed;
  r.k_sigma = opt.k_sigma;
  const auto state = gaussian::apply_attenuator(gaussian::make_tmsv(opt.squeezing), 1, ch);
  const auto v = gaussian::two_mode_verdict(state, 0, 1);
  r.estimates.push_back({"log_negativity", v.log_negativity, 0.0});
  r.estimates.push_back({"nu_tilde_minus", v.nu_tilde_minus, 0.0});
  r.estimates.push_back({"squeezing", opt.squeezing, 0.0});
  r.samples = 0;
  r.verdict = v.entangled ? Verdict::nonclassical : Verdict::classical;
  return r;
}

inline ProtocolReport run_protocol(Protocol p, const channel::AttenuatorChannel& ch,
                                   const ProtocolOptions& opt) {
  switch (p) {
    case Protocol::probe: return probe_protocol(ch, opt);
    case Protocol::benchmark: return benchmark_protocol(ch, opt);
    case Protocol::entanglement: return entanglement_protocol(ch, opt);
  }
  throw std::invalid_argument("unknown protocol");
}

/// Channel of the system at (omega, g) - by default the optimal point
/// (0, g_opt) - fed to the chosen protocol.
inline ProtocolReport end_to_end(const model::SymmetricParams& params, Protocol p,
                                 const ProtocolOptions& opt = {}) {
  params.validate();
  const auto sys = opt.optimal_coupling ? channel::with_optimal_coupling(params) : params;
  auto report = run_protocol(p, channel::channel_at(sys, opt.omega), opt);
  report.coupling_g = sys.g;
  return report;
}

inline nlohmann::ordered_json to_json(const ProtocolReport& r) {
  nlohmann::ordered_json j;
  j["protocol"] = to_string(r.protocol);
  nlohmann::ordered_json c;
  c["eta"] = r.channel.eta;
  c["N"] = r.channel.n_eff;
  c["phi"] = r.channel.phi;
  c["omega"] = r.channel.omega;
  c["loss"] = r.channel.loss;
  c["noiseless_limit"] = r.channel.noiseless_limit;
  if (r.coupling_g) c["g"] = *r.coupling_g;
  j["channel"] = c;
  nlohmann::ordered_json e = nlohmann::ordered_json::object();
  for (const auto& est : r.estimates) {
    nlohmann::ordered_json v;
    if (std::isfinite(est.value)) v["value"] = est.value; else v["value"] = nullptr;
    if (std::isfinite(est.se)) v["se"] = est.se; else v["se"] = nullptr;
    e[est.name] = v;
  }
  j["estimates"] = e;
  j["verdict"] = to_string(r.verdict);
  j["k_sigma"] = r.k_sigma;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  return j;
}

}  // namespace gitchan::protocols
