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

#ifndef MUCAP_CHANNEL_HPP
#define MUCAP_CHANNEL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "mucap/correlation.hpp"
#include "mucap/error.hpp"
#include "mucap/rng.hpp"
#include "mucap/specfun.hpp"

namespace mucap {

enum class FadingClass { hyper_rayleigh, rayleigh, lighter_than_rayleigh };

inline std::string_view to_string(FadingClass c) {
  switch (c) {
    case FadingClass::hyper_rayleigh: return "hyper-Rayleigh";
    case FadingClass::rayleigh: return "Rayleigh";
    case FadingClass::lighter_than_rayleigh: return "lighter-than-Rayleigh";
  }
  return "?";
}

// Complex Nakagami-m fading: shape m and average fading power omega.
struct FadingParams {
  double m = 1.0;
  double omega = 1.0;

  FadingParams validated() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("fading shape m must be positive, got " + std::to_string(m));
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("fading power omega must be positive, got " + std::to_string(omega));
    return *this;
  }

  FadingClass classify() const {
    if (m < 1.0) return FadingClass::hyper_rayleigh;
    if (m > 1.0) return FadingClass::lighter_than_rayleigh;
    return FadingClass::rayleigh;
  }

  friend bool operator==(const FadingParams&, const FadingParams&) = default;
};

// n_r x n_t matrix of complex transmission coefficients.
using ChannelMatrix = Eigen::MatrixXcd;

enum class CorrelatedSide { transmit, receive };
enum class SemiCorrelationLabel { min_semicorrelated, max_semicorrelated };

inline std::string_view to_string(CorrelatedSide s) { return s == CorrelatedSide::transmit ? "transmit" : "receive"; }
inline std::string_view to_string(SemiCorrelationLabel l) {
  return l == SemiCorrelationLabel::min_semicorrelated ? "min-semicorrelated" : "max-semicorrelated";
}

struct SemiCorrelationMode {
  CorrelatedSide side = CorrelatedSide::receive;

  // Antenna count on the correlated side.
  std::size_t correlated_dim(std::size_t n_t, std::size_t n_r) const { return side == CorrelatedSide::transmit ? n_t : n_r; }

  // min-semicorrelated when the correlated side has no more antennas than
  // the other one.
  SemiCorrelationLabel label(std::size_t n_t, std::size_t n_r) const {
    const std::size_t here = correlated_dim(n_t, n_r);
    const std::size_t there = side == CorrelatedSide::transmit ? n_r : n_t;
    return here <= there ? SemiCorrelationLabel::min_semicorrelated : SemiCorrelationLabel::max_semicorrelated;
  }

  friend bool operator==(const SemiCorrelationMode&, const SemiCorrelationMode&) = default;
};

// One quadrature component h with density proportional to
// |h|^{m-1} exp(-m h^2 / omega): h^2 ~ Gamma(m/2, omega/m) with a fair sign.
inline double sample_nakagami_component(const FadingParams& params, RandomStream& rng) {
  const double g = rng.gamma(0.5 * params.m, params.omega / params.m);
  const double h = std::sqrt(g);
  return rng.coin() ? h : -h;
}

// Density of a quadrature component, normalized:
// (m/omega)^{m/2} / Gamma(m/2) |h|^{m-1} exp(-m h^2 / omega).
inline double nakagami_component_pdf(double h, const FadingParams& params) {
  const double half_m = 0.5 * params.m;
  const double log_norm = half_m * std::log(params.m / params.omega) - specfun::ln_gamma(half_m);
  if (h == 0.0) {
    if (params.m < 1.0) return std::numeric_limits<double>::infinity();
    return params.m == 1.0 ? std::exp(log_norm) : 0.0;
  }
  return std::exp(log_norm + (params.m - 1.0) * std::log(std::abs(h)) - params.m * h * h / params.omega);
}

// i.i.d. complex Nakagami-m matrix H_w; E|h_ij|^2 = omega.
inline ChannelMatrix sample_channel_matrix(std::size_t n_r, std::size_t n_t, const FadingParams& params, RandomStream& rng) {
  if (n_r == 0 || n_t == 0) throw DomainError("channel dimensions must be positive");
  ChannelMatrix h(static_cast<Eigen::Index>(n_r), static_cast<Eigen::Index>(n_t));
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      const double re = sample_nakagami_component(params, rng);
      const double im = sample_nakagami_component(params, rng);
      h(i, j) = {re, im};
    }
  }
  return h;
}

// Semi-correlated channel: sqrt(Sigma_R) H_w for receive-side correlation,
// H_w sqrt(Sigma_T) for transmit-side correlation.
inline ChannelMatrix compose_channel(const ChannelMatrix& h_w, const HermitianMatrix& sqrt_sigma, SemiCorrelationMode mode) {
  const auto need = static_cast<std::size_t>(mode.side == CorrelatedSide::receive ? h_w.rows() : h_w.cols());
  if (sqrt_sigma.dim() != need)
    throw ShapeError(std::string("correlation square root does not match the ") + std::string(to_string(mode.side)) + " antenna count", need,
                     sqrt_sigma.dim());
  if (mode.side == CorrelatedSide::receive) return sqrt_sigma.matrix() * h_w;
  return h_w * sqrt_sigma.matrix();
}

}  // namespace mucap

#endif  // MUCAP_CHANNEL_HPP
