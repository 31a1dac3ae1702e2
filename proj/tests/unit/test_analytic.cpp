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
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "mucap/analytic.hpp"
#include "mucap/error.hpp"

namespace an = mucap::analytic;
using an::BetaVector;

namespace {

const double ln2 = std::numbers::ln2;

double trapezoid_mass(const std::vector<double>& grid, const std::vector<double>& f, double f0) {
  double mass = 0.5 * grid[0] * (f0 + f[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) mass += 0.5 * (grid[i] - grid[i - 1]) * (f[i] + f[i - 1]);
  return mass;
}

double trapezoid_mean(const std::vector<double>& grid, const std::vector<double>& f) {
  double m = 0.5 * grid[0] * grid[0] * f[0];
  for (std::size_t i = 1; i < grid.size(); ++i) m += 0.5 * (grid[i] - grid[i - 1]) * (grid[i] * f[i] + grid[i - 1] * f[i - 1]);
  return m;
}

}  // namespace

TEST(BetaVector, Validation) {
  EXPECT_NO_THROW((BetaVector{0.1, 2.0}));
  EXPECT_THROW((BetaVector{1.0, 0.0}), mucap::DomainError);
  EXPECT_THROW((BetaVector{-1.0}), mucap::DomainError);
  EXPECT_THROW((BetaVector{INFINITY}), mucap::DomainError);
}

TEST(EsrcClosedForm, Examples) {
  EXPECT_NEAR(an::esrc_closed_form({1.0}), 0.860347382270886, 1e-14);
  EXPECT_NEAR(an::esrc_closed_form({1.0, 1.0, 1.0}), 3.0 * 0.860347382270886, 1e-13);
  EXPECT_NEAR(an::esrc_closed_form({1e-8}), 1e-8 / ln2, 1e-15);
  double prev = INFINITY;
  for (double beta = 1e-2; beta >= 1e-9; beta /= 10.0) {
    const double v = an::esrc_closed_form({beta});
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(EsrcClosedForm, FrozenValues) {
  const std::vector<std::pair<double, double>> ref{{0.01, 0.0142854830322384}, {0.1, 0.132097967802192}, {1.0, 0.860347382270886},
                                                   {10.0, 2.90651480841480},   {100.0, 5.88404823368347}, {1000.0, 9.14361949103733}};
  for (auto [beta, want] : ref) EXPECT_NEAR(an::esrc_closed_form({beta}), want, 1e-13 * want) << beta;
}

TEST(EsrcClosedForm, MatchesQuadrature) {
  for (double beta : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double a = an::esrc_closed_form({beta}), q = an::per_user_capacity_quadrature(beta);
    EXPECT_LE(std::abs(a - q), 1e-8 * q) << beta;
  }
}

TEST(EsrcClosedForm, JensenBound) {
  for (double beta = 1e-3; beta <= 1e4; beta *= 2.3) EXPECT_LT(an::esrc_closed_form({beta}), std::log2(1.0 + beta)) << beta;
}

TEST(EsrcClosedForm, IncreasingInEachBeta) {
  for (double beta = 0.01; beta <= 100.0; beta *= 1.5) {
    const double h = 1e-6 * beta;
    EXPECT_GT(an::esrc_closed_form({0.5, beta + h}), an::esrc_closed_form({0.5, beta}));
  }
}

TEST(EsrcClosedForm, Additive) {
  const BetaVector a{0.3, 4.0}, b{17.0, 0.02, 1.0};
  const BetaVector ab{0.3, 4.0, 17.0, 0.02, 1.0};
  EXPECT_NEAR(an::esrc_closed_form(ab), an::esrc_closed_form(a) + an::esrc_closed_form(b), 1e-12);
}

TEST(PerUserQuadrature, Examples) {
  EXPECT_NEAR(an::per_user_capacity_quadrature(1.0), 0.860347382270886, 1e-12);
  const double v10 = an::per_user_capacity_quadrature(10.0);
  EXPECT_LT(v10, std::log2(11.0));
  EXPECT_GT(v10, 2.0);
  EXPECT_NEAR(an::per_user_capacity_quadrature(0.01), 0.01 / ln2, 0.02 * 0.01 / ln2);
  EXPECT_THROW(an::per_user_capacity_quadrature(0.0), mucap::DomainError);
}

TEST(SumCapacityMgf, UnitAtZero) {
  for (const BetaVector& b : {BetaVector{1.0}, BetaVector{0.01, 100.0}, BetaVector{3.0, 3.0, 0.2, 40.0}}) {
    EXPECT_NEAR(an::sum_capacity_mgf(0.0, b), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(an::sum_capacity_mgf(std::complex<double>(0.0, 0.0), b) - 1.0), 0.0, 1e-12);
  }
}

TEST(SumCapacityMgf, KnownValueAtMinusLn2) {
  // E[1/(1+g)] for g ~ Exp(1) = e E1(1).
  EXPECT_NEAR(an::sum_capacity_mgf(-ln2, {1.0}), 0.59634736232319407, 1e-13);
  boost::math::quadrature::exp_sinh<double> q;
  const double oracle = q.integrate([](double x) { return std::exp(-x) / (1.0 + x); });
  EXPECT_NEAR(an::sum_capacity_mgf(-ln2, {1.0}), oracle, 1e-12);
}

TEST(SumCapacityMgf, ProductStructure) {
  for (double s : {-1.3, -0.2, 0.4, 2.0}) {
    const double one = an::sum_capacity_mgf(s, {1.0});
    EXPECT_NEAR(an::sum_capacity_mgf(s, {1.0, 1.0}), one * one, 1e-13 * one * one) << s;
  }
  const std::complex<double> z(0.3, -1.7);
  const auto one = an::sum_capacity_mgf(z, {2.0});
  EXPECT_LT(std::abs(an::sum_capacity_mgf(z, {2.0, 2.0}) - one * one), 1e-13);
}

TEST(SumCapacityMgf, RealAndComplexAgree) {
  const BetaVector b{0.5, 7.0};
  for (double s : {-3.0, -0.5, 0.7, 1.9}) {
    const double want = an::sum_capacity_mgf(s, b);
    EXPECT_NEAR(an::sum_capacity_mgf(std::complex<double>(s, 0.0), b).real(), want, 1e-12 * want);
  }
}

TEST(SumCapacityMgf, MatchesDirectIntegral) {
  // E[(1+g)^{s/ln2}] = int (1+x)^{s/ln2} e^{-x/beta} dx / beta.
  boost::math::quadrature::exp_sinh<double> q;
  for (double s : {-0.9, 0.5}) {
    const double beta = 2.5;
    const double oracle = q.integrate([&](double x) { return std::pow(1.0 + x, s / ln2) * std::exp(-x / beta) / beta; });
    EXPECT_NEAR(an::sum_capacity_mgf(s, {beta}), oracle, 1e-11);
  }
}

TEST(MgfMeanCheck, Examples) {
  EXPECT_NEAR(an::mgf_mean_check({1.0}), 0.860347382270886, 1e-6);
  EXPECT_LT(an::mgf_mean_check({1e-8}), 1e-7);
  EXPECT_NEAR(an::mgf_mean_check({0.5, 2.0}), an::esrc_closed_form({0.5}) + an::esrc_closed_form({2.0}), 1e-5);
  EXPECT_THROW(an::mgf_mean_check({1.0}, 1e-2), mucap::DomainError);
  EXPECT_THROW(an::mgf_mean_check({1.0}, 1e-7), mucap::DomainError);
}

TEST(MgfMeanCheck, RandomVectors) {
  std::mt19937_64 gen(314);
  std::uniform_int_distribution<int> users(1, 8);
  std::uniform_real_distribution<double> log_beta(std::log(0.01), std::log(100.0));
  for (int r = 0; r < 50; ++r) {
    std::vector<double> v(static_cast<std::size_t>(users(gen)));
    for (auto& x : v) x = std::exp(log_beta(gen));
    const BetaVector b(v);
    const double want = an::esrc_closed_form(b);
    EXPECT_LT(std::abs(an::mgf_mean_check(b) - want), 1e-5 * want);
  }
}

TEST(CapacityPdf, SingleUserIsGompertzMakeham) {
  const BetaVector b{1.0};
  const auto grid = an::default_capacity_grid(b, 256);
  const auto pdf = an::capacity_pdf(b, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(pdf[i], mucap::specfun::gm_pdf(grid[i], ln2, 1.0), 1e-4) << grid[i];
}

TEST(CapacityPdf, TwoUsersIsSelfConvolution) {
  const BetaVector b{1.0, 1.0};
  std::vector<double> grid;
  for (double x = 0.1; x <= 8.0; x += 0.3) grid.push_back(x);
  const auto pdf = an::capacity_pdf(b, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double conv = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double y) { return mucap::specfun::gm_pdf(y, ln2, 1.0) * mucap::specfun::gm_pdf(x - y, ln2, 1.0); }, 0.0, x, 10, 1e-13);
    EXPECT_NEAR(pdf[i], conv, 1e-3) << x;
  }
}

TEST(CapacityPdf, NormalizedWithCorrectMean) {
  for (const BetaVector& b : {BetaVector{1.0}, BetaVector{0.5, 2.0, 9.0}, BetaVector(std::vector<double>(8, 10.0))}) {
    const auto grid = an::default_capacity_grid(b);
    const auto pdf = an::capacity_pdf(b, grid);
    const double f0 = b.size() == 1 ? mucap::specfun::gm_pdf(0.0, ln2, 1.0 / b[0]) : 0.0;
    EXPECT_NEAR(trapezoid_mass(grid, pdf, f0), 1.0, 1e-3);
    const double mean = trapezoid_mean(grid, pdf);
    EXPECT_NEAR(mean, an::esrc_closed_form(b), 1e-2 * an::esrc_closed_form(b));
    for (double v : pdf) EXPECT_GE(v, -1e-4);
  }
}

TEST(CapacityPdf, GridValidation) {
  const BetaVector b{1.0};
  EXPECT_THROW(an::capacity_pdf(b, std::vector<double>{0.0, 1.0}), mucap::DomainError);
  EXPECT_THROW(an::capacity_pdf(b, std::vector<double>{1.0, 65.0}), mucap::DomainError);
  EXPECT_THROW(an::capacity_pdf(b, std::vector<double>{2.0, 1.0}), mucap::DomainError);
  EXPECT_THROW(an::capacity_pdf(BetaVector{}, std::vector<double>{1.0}), mucap::DomainError);
}
