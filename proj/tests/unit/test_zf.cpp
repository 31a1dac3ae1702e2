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

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "mucap/error.hpp"
#include "mucap/specfun.hpp"
#include "mucap/zf.hpp"

using mucap::SystemConfig;

namespace {

SystemConfig square(std::size_t n, double snr_db, double rho, double m = 1.0) {
  SystemConfig c;
  c.n_t = c.n_r = c.n_users = n;
  c.snr_db = snr_db;
  c.fading = {m, 1.0};
  c.correlation = mucap::CorrelationSpec::full(n, rho);
  return c;
}

}  // namespace

TEST(ZfSinr, Scalar) {
  Eigen::MatrixXcd h(1, 1);
  h << 1.0;
  const auto s = mucap::zf_sinr(h, 5.0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0], 5.0);
}

TEST(ZfSinr, Unitary) {
  const double c = std::cos(0.3), s = std::sin(0.3);
  Eigen::MatrixXcd u(2, 2);
  u << std::complex<double>(c, 0), std::complex<double>(0, s), std::complex<double>(0, s), std::complex<double>(c, 0);
  for (double v : mucap::zf_sinr(u, 7.0)) EXPECT_NEAR(v, 7.0, 1e-13);
}

TEST(ZfSinr, Diagonal) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = {1.0, 1.0};
  d(1, 1) = 0.5;
  d(2, 2) = {0.0, -3.0};
  const auto s = mucap::zf_sinr(d, 2.0);
  EXPECT_NEAR(s[0], 4.0, 1e-13);
  EXPECT_NEAR(s[1], 0.5, 1e-13);
  EXPECT_NEAR(s[2], 18.0, 1e-12);
}

TEST(ZfSinr, MatchesExplicitInverse) {
  mucap::RandomStream rng(4);
  const auto h = mucap::sample_channel_matrix(6, 4, {0.7, 1.0}, rng);
  const Eigen::MatrixXcd inv = (h.adjoint() * h).inverse();
  const auto s = mucap::zf_sinr(h, 3.0);
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(s[static_cast<std::size_t>(k)], 3.0 / inv(k, k).real(), 1e-10 * s[static_cast<std::size_t>(k)]);
}

TEST(ZfSinr, LinearInSnr) {
  mucap::RandomStream rng(5);
  const auto h = mucap::sample_channel_matrix(8, 8, {2.5, 1.0}, rng);
  const auto a = mucap::zf_sinr(h, 3.0), b = mucap::zf_sinr(h, 6.0);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(b[k], 2.0 * a[k]);
}

TEST(ZfSinr, Errors) {
  Eigen::MatrixXcd wide = Eigen::MatrixXcd::Ones(2, 3);
  EXPECT_THROW(mucap::zf_sinr(wide, 1.0), mucap::ShapeError);
  Eigen::MatrixXcd rank1 = Eigen::MatrixXcd::Ones(3, 2);
  EXPECT_THROW(mucap::zf_sinr(rank1, 1.0), mucap::SingularChannelError);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(mucap::zf_sinr(id, 0.0), mucap::DomainError);
  EXPECT_THROW(mucap::zf_sinr(id, -1.0), mucap::DomainError);
}

TEST(SumRate, Examples) {
  EXPECT_DOUBLE_EQ(mucap::sum_rate(std::vector<double>{1.0}), 1.0);
  EXPECT_DOUBLE_EQ(mucap::sum_rate(std::vector<double>{3.0, 3.0}), 4.0);
  EXPECT_NEAR(mucap::sum_rate(std::vector<double>{0.5, 1.0, 7.0}), std::log2(1.5) + 4.0, 1e-14);
  EXPECT_NEAR(mucap::sum_rate(std::vector<double>{0.5, 1.0, 7.0}), 4.58496250072116, 1e-13);
}

TEST(SystemConfig, Validation) {
  SystemConfig c = square(8, 10.0, 0.3);
  EXPECT_NO_THROW(c.validate());
  c.n_users = 4;
  EXPECT_THROW(c.validate(), mucap::DomainError);
  c = square(8, 10.0, 0.3);
  c.n_r = 6;
  EXPECT_THROW(c.validate(), mucap::DomainError);
  c = square(8, 10.0, 0.3);
  c.n_r = 10;
  EXPECT_THROW(c.validate(), mucap::ShapeError);  // receive side correlation is still 8x8
  c.correlation = mucap::CorrelationSpec::full(10, 0.3);
  EXPECT_NO_THROW(c.validate());
  EXPECT_NEAR(square(1, 10.0, 0.0).snr_linear(), 10.0, 1e-12);
}

TEST(MonteCarlo, ScalarRayleigh) {
  const auto out = mucap::monte_carlo_esrc(square(1, 10.0, 0.0), 100000, 2024);
  // e^{0.1} E1(0.1) / ln 2 and an independent quadrature of log2(1 + 10x) e^{-x}.
  const double closed = mucap::specfun::exp_scaled_e1(0.1) / std::numbers::ln2;
  boost::math::quadrature::exp_sinh<double> q;
  const double quad = q.integrate([](double x) { return std::log2(1.0 + 10.0 * x) * std::exp(-x); });
  EXPECT_NEAR(closed, quad, 1e-10);
  EXPECT_NEAR(closed, 2.906514808414805, 1e-12);
  EXPECT_LT(std::abs(out.result.esrc_mc - closed), 3.0 * out.result.std_err);
  EXPECT_GT(out.result.std_err, 0.0);
}

TEST(MonteCarlo, BitIdenticalRerunAndThreadInvariant) {
  const auto c = square(4, 5.0, 0.4, 0.7);
  const auto a = mucap::monte_carlo_esrc(c, 3000, 77);
  const auto b = mucap::monte_carlo_esrc(c, 3000, 77);
  const auto p = mucap::monte_carlo_esrc(c, 3000, 77, {3});
  EXPECT_EQ(a.result.esrc_mc, b.result.esrc_mc);
  EXPECT_EQ(a.result.std_err, b.result.std_err);
  EXPECT_EQ(a.result.esrc_mc, p.result.esrc_mc);
  EXPECT_EQ(a.result.std_err, p.result.std_err);
  EXPECT_EQ(a.sinr.samples, p.sinr.samples);
  const auto d = mucap::monte_carlo_esrc(c, 3000, 78);
  EXPECT_NE(a.result.esrc_mc, d.result.esrc_mc);
}

TEST(MonteCarlo, SampleSetShape) {
  const auto out = mucap::monte_carlo_esrc(square(3, 0.0, 0.2, 2.5), 500, 1);
  EXPECT_EQ(out.sinr.n_users, 3u);
  EXPECT_EQ(out.sinr.trials, 500u);
  ASSERT_EQ(out.sinr.samples.size(), 3u);
  for (const auto& u : out.sinr.samples) {
    ASSERT_EQ(u.size(), 500u);
    for (double x : u) EXPECT_TRUE(x > 0.0 && std::isfinite(x));
  }
  EXPECT_GE(out.result.esrc_mc, 0.0);
  EXPECT_FALSE(out.result.esrc_analytic.has_value());
}

TEST(MonteCarlo, CorrelationReducesCapacity) {
  const auto a = mucap::monte_carlo_esrc(square(8, 10.0, 0.0), 20000, 9).result;
  const auto b = mucap::monte_carlo_esrc(square(8, 10.0, 0.5), 20000, 9).result;
  EXPECT_GT(a.esrc_mc - b.esrc_mc, 3.0 * std::hypot(a.std_err, b.std_err));
}

TEST(MonteCarlo, IncreasingInSnr) {
  double prev = -1.0, prev_se = 0.0;
  for (double snr : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const auto r = mucap::monte_carlo_esrc(square(8, snr, 0.3, 0.7), 5000, 10).result;
    EXPECT_GT(r.esrc_mc - prev, 3.0 * std::hypot(r.std_err, prev_se)) << snr;
    prev = r.esrc_mc;
    prev_se = r.std_err;
  }
}

TEST(MonteCarlo, UsersExchangeableWhenUncorrelated) {
  const auto out = mucap::monte_carlo_esrc(square(4, 10.0, 0.0, 0.7), 40000, 21);
  std::vector<double> mean, se;
  for (const auto& u : out.sinr.samples) {
    double s = 0.0, ss = 0.0;
    for (double x : u) s += x;
    const double mu = s / static_cast<double>(u.size());
    for (double x : u) ss += (x - mu) * (x - mu);
    mean.push_back(mu);
    se.push_back(std::sqrt(ss / static_cast<double>(u.size() - 1) / static_cast<double>(u.size())));
  }
  for (std::size_t i = 0; i < mean.size(); ++i)
    for (std::size_t j = i + 1; j < mean.size(); ++j) EXPECT_LT(std::abs(mean[i] - mean[j]), 4.0 * std::hypot(se[i], se[j])) << i << " " << j;
}

TEST(MonteCarlo, TransmitSide) {
  auto c = square(4, 10.0, 0.5);
  c.mode.side = mucap::CorrelatedSide::transmit;
  const auto tx = mucap::monte_carlo_esrc(c, 5000, 3).result;
  EXPECT_GT(tx.esrc_mc, 0.0);
  auto c2 = square(4, 10.0, 0.0);
  c2.mode.side = mucap::CorrelatedSide::transmit;
  EXPECT_GT(mucap::monte_carlo_esrc(c2, 5000, 3).result.esrc_mc, tx.esrc_mc);
}

TEST(MonteCarlo, Errors) {
  EXPECT_THROW(mucap::monte_carlo_esrc(square(2, 10.0, 0.0), 0, 1), mucap::DomainError);
  auto c = square(8, 10.0, 0.9);
  c.correlation.l_band = 1;
  EXPECT_THROW(mucap::monte_carlo_esrc(c, 10, 1), mucap::NotPsdError);
}

TEST(MonteCarlo, AbortsOnPersistentSingularity) {
  // Extreme hyper-Rayleigh fading puts exact zeros in most entries, so many
  // Gram matrices are rank deficient.
  auto c = square(8, 10.0, 0.0, 0.002);
  try {
    mucap::monte_carlo_esrc(c, 2000, 1);
    FAIL() << "expected MonteCarloAbort";
  } catch (const mucap::MonteCarloAbort& e) {
    EXPECT_GT(e.singular_trials(), 2u);
    EXPECT_EQ(e.trials(), 2000u);
  }
}
