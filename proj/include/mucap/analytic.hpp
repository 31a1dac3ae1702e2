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

#ifndef MUCAP_ANALYTIC_HPP
#define MUCAP_ANALYTIC_HPP

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mucap/error.hpp"
#include "mucap/laplace.hpp"
#include "mucap/specfun.hpp"

namespace mucap::analytic {

// Per-user exponential SINR scales; beta_i is the mean SINR of user i.
class BetaVector {
 public:
  BetaVector() = default;
  BetaVector(std::initializer_list<double> values) : BetaVector(std::vector<double>(values)) {}
  explicit BetaVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
        throw DomainError("beta[" + std::to_string(i) + "] must be positive and finite, got " + std::to_string(values_[i]));
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
};

// Ergodic capacity of one user with exponential SINR of mean beta:
// e^{1/beta} E_1(1/beta) / ln 2.
inline double user_capacity(double beta) {
  const double v = specfun::exp_scaled_e1(1.0 / beta) / specfun::ln2;
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite capacity for beta = " << beta;
    throw NumericalError(os.str());
  }
  return v;
}

// Closed-form ergodic sum-rate capacity, sum_i e^{1/beta_i} Gamma(0, 1/beta_i) / ln 2.
inline double esrc_closed_form(const BetaVector& b) {
  double total = 0.0;
  for (double beta : b) total += user_capacity(beta);
  return total;
}

// Independent check of user_capacity: integral of log2(1 + beta u) e^{-u}
// over u >= 0 by exp-sinh quadrature.
inline double per_user_capacity_quadrature(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  auto integrand = [beta](double u) { return std::log1p(beta * u) * std::exp(-u); };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-13, &error, &l1);
  if (!std::isfinite(value) || error > 1e-10 * std::abs(value)) {
    std::ostringstream os;
    os << "capacity quadrature did not converge for beta = " << beta << " (error estimate " << error << ")";
    throw NumericalError(os.str());
  }
  return value / specfun::ln2;
}

// log of the sum-capacity MGF E[exp(s C)] for complex s; C = sum_i log2(1 + gamma_i).
// Each factor is U(1, 2 + s/ln2, 1/beta_i) / beta_i. The GM law decays
// double-exponentially, so the transform is entire in s.
inline std::complex<double> log_sum_capacity_mgf(std::complex<double> s, const BetaVector& b) {
  std::complex<double> acc = 0.0;
  const std::complex<double> shape = 2.0 + s / specfun::ln2;
  for (double beta : b) acc += specfun::log_tricomi_u1(shape, 1.0 / beta) - std::log(beta);
  return acc;
}

inline std::complex<double> sum_capacity_mgf(std::complex<double> s, const BetaVector& b) {
  return std::exp(log_sum_capacity_mgf(s, b));
}

inline double sum_capacity_mgf(double s, const BetaVector& b) {
  if (!std::isfinite(s)) throw DomainError("MGF argument must be finite");
  double value = 1.0;
  for (double beta : b) value *= specfun::tricomi_u1(2.0 + s / specfun::ln2, 1.0 / beta) / beta;
  return value;
}

// Mean capacity from the central difference of the MGF at s = 0.
inline double mgf_mean_check(const BetaVector& b, double step = 1e-4) {
  if (!(step >= 1e-6 && step <= 1e-3)) throw DomainError("mgf_mean_check step must lie in [1e-6, 1e-3]");
  const double derivative = (sum_capacity_mgf(step, b) - sum_capacity_mgf(-step, b)) / (2.0 * step);
  return std::abs(derivative);
}

// Upper end of the default density grid: each user's tail beyond
// log2(1 + 20 beta_i) has probability e^{-20}.
inline double default_capacity_support(const BetaVector& b) {
  double x = 0.0;
  for (double beta : b) x += std::log2(1.0 + 20.0 * beta);
  return x;
}

inline std::vector<double> default_capacity_grid(const BetaVector& b, std::size_t points = 512) {
  if (points == 0) throw DomainError("grid needs at least one point");
  const double top = default_capacity_support(b);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = top * static_cast<double>(i + 1) / static_cast<double>(points);
  return grid;
}

inline constexpr double capacity_grid_limit = 64.0;

// Density of the sum capacity by numerical Laplace inversion of the MGF.
inline std::vector<double> capacity_pdf(const BetaVector& b, std::span<const double> grid,
                                        const specfun::LaplaceInversionConfig& cfg = specfun::LaplaceInversionConfig::euler()) {
  if (b.empty()) throw DomainError("capacity_pdf needs at least one user");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= capacity_grid_limit)) throw DomainError("capacity grid points must lie in (0, 64] bits");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("capacity grid must be strictly ascending");
  }
  // Laplace transform of the density: E[exp(-p C)].
  auto log_transform = [&b](std::complex<double> p) { return log_sum_capacity_mgf(-p, b); };
  return specfun::invert_laplace_log(log_transform, grid, cfg);
}

}  // namespace mucap::analytic

#endif  // MUCAP_ANALYTIC_HPP
