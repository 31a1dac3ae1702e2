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

#ifndef MUCAP_LAPLACE_HPP
#define MUCAP_LAPLACE_HPP

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mucap/error.hpp"

namespace mucap::specfun {

enum class InversionMethod { fixed_talbot, euler };

// Numerical inverse Laplace transform settings.
//
// fixed_talbot: contour s(theta) = r theta (cot theta + i) with
//   r = abscissa_scale * node_count / t (Abate-Valko; 0.4 is the classic 2/5).
// euler: Abate-Whitt Euler summation with M = node_count / 2, nodes
//   (M * abscissa_scale + i pi k) / t, k = 0..2M (ln(10)/3 per unit M is standard).
struct LaplaceInversionConfig {
  InversionMethod method = InversionMethod::fixed_talbot;
  int node_count = 32;
  double abscissa_scale = 0.4;

  static LaplaceInversionConfig talbot(int nodes = 32) { return {InversionMethod::fixed_talbot, nodes, 0.4}; }
  static LaplaceInversionConfig euler(int nodes = 32) { return {InversionMethod::euler, nodes, std::numbers::ln10 / 3.0}; }

  void validate() const {
    if (node_count < 8) throw DomainError("Laplace inversion needs node_count >= 8, got " + std::to_string(node_count));
    if (!(abscissa_scale > 0.0) || !std::isfinite(abscissa_scale))
      throw DomainError("Laplace inversion abscissa_scale must be positive");
  }
};

namespace detail {

inline void check_log_value(std::complex<double> log_value, std::complex<double> node) {
  if (std::isnan(log_value.real()) || std::isnan(log_value.imag()) || log_value.real() == std::numeric_limits<double>::infinity())
    throw InversionError("non-finite transform value", node);
}

// exp(shift + log_value) with -inf treated as an exact zero.
inline std::complex<double> scaled_term(std::complex<double> shift, std::complex<double> log_value) {
  if (log_value.real() == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(shift + log_value);
}

template <class LogTransform>
double talbot_point(LogTransform& log_f, double t, const LaplaceInversionConfig& cfg) {
  using namespace std::complex_literals;
  const int m = cfg.node_count;
  const double r = cfg.abscissa_scale * m / t;
  const std::complex<double> s0 = r;
  const auto l0 = std::complex<double>(log_f(s0));
  check_log_value(l0, s0);
  double acc = 0.5 * scaled_term(r * t, l0).real();
  for (int k = 1; k < m; ++k) {
    const double theta = k * std::numbers::pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s = r * theta * (cot + 1i);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const auto lv = std::complex<double>(log_f(s));
    check_log_value(lv, s);
    acc += (scaled_term(t * s, lv) * (1.0 + 1i * sigma)).real();
  }
  return r / m * acc;
}

template <class LogTransform>
double euler_point(LogTransform& log_f, double t, const LaplaceInversionConfig& cfg) {
  const int m = cfg.node_count / 2;
  const double shift = m * cfg.abscissa_scale;
  // Binomial averaging weights xi_k.
  std::vector<double> xi(2 * m + 1, 1.0);
  xi[0] = 0.5;
  xi[2 * m] = std::ldexp(1.0, -m);
  double binom = 1.0;
  for (int k = 1; k < m; ++k) {
    binom = binom * (m - k + 1) / k;
    xi[2 * m - k] = xi[2 * m - k + 1] + std::ldexp(binom, -m);
  }
  double acc = 0.0;
  for (int k = 0; k <= 2 * m; ++k) {
    const std::complex<double> s(shift / t, std::numbers::pi * k / t);
    const auto lv = std::complex<double>(log_f(s));
    check_log_value(lv, s);
    const double eta = (k % 2 == 0 ? 1.0 : -1.0) * xi[k];
    acc += eta * scaled_term(shift, lv).real();
  }
  return acc / t;
}

}  // namespace detail

// Inverts a Laplace transform given through its logarithm, s -> log F(s).
// Working in log space keeps contour nodes far in the left half plane from
// overflowing when F grows faster than e^{-st} decays.
template <class LogTransform>
std::vector<double> invert_laplace_log(LogTransform&& log_f, std::span<const double> grid,
                                       const LaplaceInversionConfig& cfg = LaplaceInversionConfig::talbot()) {
  cfg.validate();
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Laplace inversion grid points must be positive and finite");
    out.push_back(cfg.method == InversionMethod::fixed_talbot ? detail::talbot_point(log_f, t, cfg)
                                                               : detail::euler_point(log_f, t, cfg));
  }
  return out;
}

// Inverts a Laplace transform s -> F(s) on the grid.
template <class Transform>
std::vector<double> invert_laplace(Transform&& f, std::span<const double> grid,
                                   const LaplaceInversionConfig& cfg = LaplaceInversionConfig::talbot()) {
  auto log_f = [&f](std::complex<double> s) -> std::complex<double> {
    const std::complex<double> v = f(s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InversionError("non-finite transform value", s);
    if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
    return std::log(v);
  };
  return invert_laplace_log(log_f, grid, cfg);
}

}  // namespace mucap::specfun

#endif  // MUCAP_LAPLACE_HPP
