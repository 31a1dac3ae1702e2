// SPDX-License-Identifier: Apache-2.0
//
// mucap: MU-MIMO ergodic sum-rate capacity simulation and analysis
// Copyright (C) 2026 The mucap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MUCAP_ZF_HPP
#define MUCAP_ZF_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mucap/channel.hpp"
#include "mucap/correlation.hpp"
#include "mucap/error.hpp"
#include "mucap/rng.hpp"
#include "mucap/system_config.hpp"

namespace mucap {

// Gram matrices with a reciprocal condition estimate below this are singular.
inline constexpr double zf_min_rcond = 1e-12;

// Fraction of trials allowed to be redrawn because of a singular channel.
inline constexpr double max_singular_fraction = 1e-3;

// Per-user post-processing SINR samples, samples[user][trial].
struct SinrSampleSet {
  std::size_t n_users = 0;
  std::size_t trials = 0;
  std::vector<std::vector<double>> samples;
};

struct EsrcResult {
  double esrc_mc = 0.0;
  double std_err = 0.0;
  std::optional<double> esrc_analytic;
  std::vector<double> betas;
  std::size_t resampled_trials = 0;
};

struct MonteCarloOutput {
  EsrcResult result;
  SinrSampleSet sinr;
};

struct MonteCarloOptions {
  // 1 runs strictly sequentially. Results do not depend on this value.
  unsigned threads = 1;
};

// Zero-forcing SINR per user: snr / [(H^H H)^{-1}]_{kk}.
inline std::vector<double> zf_sinr(const ChannelMatrix& h, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw DomainError("snr must be positive and finite");
  if (h.rows() < h.cols())
    throw ShapeError("zero-forcing needs at least as many receive antennas as users", static_cast<std::size_t>(h.cols()),
                     static_cast<std::size_t>(h.rows()));
  const Eigen::MatrixXcd gram = h.adjoint() * h;
  const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (!(rcond >= zf_min_rcond)) {
    std::ostringstream os;
    os << "singular channel: Gram matrix reciprocal condition " << rcond;
    throw SingularChannelError(os.str(), rcond);
  }
  // diag((L L^H)^{-1})_k = sum_i |(L^{-1})_{ik}|^2
  const auto n = gram.rows();
  const Eigen::MatrixXcd l_inv = llt.matrixL().solve(Eigen::MatrixXcd::Identity(n, n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = snr / l_inv.col(k).squaredNorm();
  return out;
}

// Sum over users of log2(1 + SINR_k).
inline double sum_rate(std::span<const double> sinr) {
  double total = 0.0;
  for (double s : sinr) total += std::log2(1.0 + s);
  return total;
}

// Monte Carlo estimate of the ergodic sum-rate capacity. Trial i draws its
// channel from RandomStream::derive(seed, i, attempt), so the estimate is a
// pure function of (config, trials, seed) irrespective of the thread count.
inline MonteCarloOutput monte_carlo_esrc(const SystemConfig& config, std::size_t trials, std::uint64_t seed,
                                         const MonteCarloOptions& options = {}) {
  config.validate();
  if (trials == 0) throw DomainError("trials must be positive");

  const HermitianMatrix sqrt_sigma =
      matrix_sqrt(build_banded_correlation(config.correlation), default_psd_tol, config.psd_policy, config.correlation);
  const double snr = config.snr_linear();
  const std::size_t users = config.n_users;

  MonteCarloOutput out;
  out.sinr.n_users = users;
  out.sinr.trials = trials;
  out.sinr.samples.assign(users, std::vector<double>(trials));
  std::vector<double> rates(trials);

  const std::size_t max_singular = static_cast<std::size_t>(max_singular_fraction * static_cast<double>(trials));
  auto run_range = [&](std::size_t begin, std::size_t end) -> std::size_t {
    std::size_t redraws = 0;
    for (std::size_t t = begin; t < end; ++t) {
      for (std::uint64_t attempt = 0;; ++attempt) {
        RandomStream rng = RandomStream::derive(seed, t, attempt);
        const ChannelMatrix h = compose_channel(sample_channel_matrix(config.n_r, config.n_t, config.fading, rng), sqrt_sigma, config.mode);
        try {
          const std::vector<double> sinr = zf_sinr(h, snr);
          for (std::size_t k = 0; k < users; ++k) out.sinr.samples[k][t] = sinr[k];
          rates[t] = sum_rate(sinr);
          break;
        } catch (const SingularChannelError&) {
          if (++redraws > max_singular) return redraws;
        }
      }
    }
    return redraws;
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(trials)));
  std::size_t singular = 0;
  if (threads == 1) {
    singular = run_range(0, trials);
  } else {
    std::vector<std::size_t> counts(threads, 0);
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(trials, w * chunk);
      const std::size_t end = std::min(trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] { counts[w] = run_range(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (auto c : counts) singular += c;
  }
  if (singular > max_singular)
    throw MonteCarloAbort("more than 0.1% of trials had a singular channel (" + std::to_string(singular) + " of " +
                              std::to_string(trials) + ")",
                          singular, trials);

  // Accumulate in trial order so the result is independent of scheduling.
  double mean = 0.0;
  for (double r : rates) mean += r;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double r : rates) ss += (r - mean) * (r - mean);
  out.result.esrc_mc = mean;
  out.result.std_err = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  out.result.resampled_trials = singular;
  return out;
}

}  // namespace mucap

#endif  // MUCAP_ZF_HPP
