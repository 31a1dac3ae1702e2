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

#ifndef MUCAP_SPECFUN_HPP
#define MUCAP_SPECFUN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "mucap/error.hpp"

// Special functions for the capacity analysis: log-gamma, the upper
// incomplete gamma function, the exponentially scaled exponential integral,
// Tricomi's U(1, b, z) and the Gompertz-Makeham density. All routines are
// pure and thread-safe.
namespace mucap::specfun {

inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double ln2 = std::numbers::ln2;

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr int max_iterations = 200000;

// Lanczos approximation, g = 7, n = 9.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for Re(z) >= 0.5.
template <class T>
T lanczos_log_gamma(T z) {
  z -= 1.0;
  T x = lanczos_coef[0];
  for (int i = 1; i < 9; ++i) x += lanczos_coef[i] / (z + static_cast<double>(i));
  const T t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|. The branch is
// irrelevant to callers, which only exponentiate.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
  using namespace std::complex_literals;
  constexpr double pi = std::numbers::pi;
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(pi * z));
  if (z.imag() > 0.0) return -1i * pi * z + std::log(1.0 - std::exp(2i * pi * z)) + std::log(0.5i);
  return 1i * pi * z + std::log(1.0 - std::exp(-2i * pi * z)) - std::log(2i);
}

// Sum of the series z^n / (a (a+1) ... (a+n)), n >= 0. Multiplied by
// z^a e^{-z} it gives the lower incomplete gamma function.
template <class T>
T pochhammer_series(T a, double z) {
  T term = 1.0 / a;
  T sum = term;
  for (int n = 1; n < max_iterations; ++n) {
    term *= z / (a + static_cast<double>(n));
    sum += term;
    if (std::abs(term) <= eps * std::abs(sum)) return sum;
  }
  throw NumericalError("incomplete gamma series did not converge");
}

// e^z z^{-a} Gamma(a, z) by Legendre's continued fraction
//   1 / (z+1-a - 1(1-a) / (z+3-a - 2(2-a) / (z+5-a - ...)))
// evaluated with the modified Lentz algorithm.
template <class T>
T legendre_cf(T a, double z) {
  constexpr double tiny = 1e-300;
  T b = z + 1.0 - a;
  T c = 1.0 / tiny;
  T d = 1.0 / b;
  T h = d;
  for (int n = 1; n < max_iterations; ++n) {
    const T an = -static_cast<double>(n) * (static_cast<double>(n) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const T delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) <= eps) return h;
  }
  throw NumericalError("incomplete gamma continued fraction did not converge");
}

// E_1(x) for 0 < x < 1 by its convergent power series.
inline double e1_series(double x) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    const double add = -term / k;
    sum += add;
    if (std::abs(add) <= eps * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(x) + sum;
}

inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(x));
}

}  // namespace detail

// Natural log of the gamma function for x > 0.
inline double ln_gamma(double x) {
  detail::require_positive(x, "ln_gamma argument");
  if (x < 0.5) return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - detail::lanczos_log_gamma(1.0 - x);
  return detail::lanczos_log_gamma(x);
}

// Principal-ish log-gamma for complex arguments away from the poles. Only
// exp() of the result is meaningful to callers.
inline std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() < 0.5) return std::log(std::numbers::pi) - detail::log_sin_pi(z) - detail::lanczos_log_gamma(1.0 - z);
  return detail::lanczos_log_gamma(z);
}

inline double digamma(double x) {
  detail::require_positive(x, "digamma argument");
  double r = 0.0;
  for (; x < 12.0; x += 1.0) r -= 1.0 / x;
  const double f = 1.0 / (x * x);
  return r + std::log(x) - 0.5 / x -
         f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f * (1.0 / 132)))));
}

inline double trigamma(double x) {
  detail::require_positive(x, "trigamma argument");
  double r = 0.0;
  for (; x < 12.0; x += 1.0) r += 1.0 / (x * x);
  const double f = 1.0 / (x * x);
  return r + 1.0 / x + 0.5 * f +
         (1.0 / x) * f * (1.0 / 6 - f * (1.0 / 30 - f * (1.0 / 42 - f * (1.0 / 30 - f * (5.0 / 66)))));
}

// Gamma(s, x) = integral_x^inf t^{s-1} e^{-t} dt for x > 0 and s > -20.
// Series for 0 < s with x < s+1, Legendre continued fraction for x >= 1
// otherwise, and downward recurrence from E_1 or Gamma(frac(s), x) for
// s <= 0 with x < 1.
inline double upper_incomplete_gamma(double s, double x) {
  detail::require_positive(x, "upper_incomplete_gamma x");
  if (!(s > -20.0) || !std::isfinite(s)) throw DomainError("upper_incomplete_gamma requires s > -20, got " + std::to_string(s));

  if (s > 0.0 && x < s + 1.0) {
    const double lower = std::exp(s * std::log(x) - x) * detail::pochhammer_series(s, x);
    return std::exp(ln_gamma(s)) - lower;
  }
  if (x >= 1.0) return std::exp(s * std::log(x) - x) * detail::legendre_cf(s, x);

  // s <= 0 and x < 1: step down with Gamma(t-1, x) = (Gamma(t, x) - x^{t-1} e^{-x}) / (t-1).
  double t;
  double value;
  if (s == std::floor(s)) {
    t = 0.0;
    value = detail::e1_series(x);
  } else {
    t = s - std::floor(s);
    value = upper_incomplete_gamma(t, x);
  }
  const double ex = std::exp(-x);
  while (t > s + 0.5) {
    value = (value - std::pow(x, t - 1.0) * ex) / (t - 1.0);
    t -= 1.0;
  }
  return value;
}

// Regularized lower incomplete gamma P(a, x); the gamma distribution cdf.
inline double regularized_gamma_p(double a, double x) {
  detail::require_positive(a, "regularized_gamma_p shape");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefix = a * std::log(x) - x - ln_gamma(a);
  if (x < a + 1.0) return std::min(1.0, std::exp(log_prefix) * detail::pochhammer_series(a, x));
  return std::max(0.0, 1.0 - std::exp(log_prefix) * detail::legendre_cf(a, x));
}

// e^x E_1(x) = e^x Gamma(0, x), formed without evaluating e^x on its own.
inline double exp_scaled_e1(double x) {
  detail::require_positive(x, "exp_scaled_e1 argument");
  if (x < 1.0) return std::exp(x) * detail::e1_series(x);
  return detail::legendre_cf(0.0, x);
}

namespace detail {

// log of e^z z^{-a} Gamma(a, z) for real a.
inline double log_scaled_upper_gamma(double a, double z) {
  if (a == 1.0) return -std::log(z);
  if ((z >= 1.0 && a <= z) || a <= -20.0) return std::log(legendre_cf(a, z));
  if (a > 0.0) {
    const double log_t1 = z - a * std::log(z) + ln_gamma(a);
    const double t2 = pochhammer_series(a, z);
    return log_t1 + std::log1p(-t2 * std::exp(-log_t1));
  }
  return z - a * std::log(z) + std::log(upper_incomplete_gamma(a, z));
}

}  // namespace detail

// Tricomi's confluent hypergeometric function at unit first parameter,
// U(1, b, z) = e^z z^{1-b} Gamma(b-1, z), z > 0.
inline double tricomi_u1(double b, double z) {
  detail::require_positive(z, "tricomi_u1 z");
  if (!std::isfinite(b)) throw DomainError("tricomi_u1 b must be finite");
  if (b == 2.0) return 1.0 / z;
  return std::exp(detail::log_scaled_upper_gamma(b - 1.0, z));
}

// log U(1, b, z) for complex b and real z > 0. Used on Laplace inversion
// contours where U itself overflows.
inline std::complex<double> log_tricomi_u1(std::complex<double> b, double z) {
  detail::require_positive(z, "log_tricomi_u1 z");
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) throw DomainError("log_tricomi_u1 b must be finite");
  const std::complex<double> a = b - 1.0;
  if (a.imag() == 0.0) return detail::log_scaled_upper_gamma(a.real(), z);
  if (z >= 1.0 && a.real() <= z) return std::log(detail::legendre_cf(a, z));
  const std::complex<double> log_t1 = z - a * std::log(z) + log_gamma(a);
  const std::complex<double> t2 = detail::pochhammer_series(a, z);
  if (log_t1.real() > 0.0) return log_t1 + std::log(1.0 - t2 * std::exp(-log_t1));
  return std::log(std::exp(log_t1) - t2);
}

// Gompertz-Makeham density lambda kappa e^{lambda x} e^{kappa} e^{-kappa e^{lambda x}}.
// With lambda = ln 2 and kappa = 1/beta it is the law of log2(1 + gamma)
// for exponential gamma with mean beta.
inline double gm_pdf(double x, double lambda, double kappa) {
  detail::require_positive(lambda, "gm_pdf lambda");
  detail::require_positive(kappa, "gm_pdf kappa");
  if (!(x >= 0.0)) throw DomainError("gm_pdf requires x >= 0");
  const double growth = std::exp(lambda * x);
  return lambda * kappa * std::exp(lambda * x + kappa - kappa * growth);
}

}  // namespace mucap::specfun

#endif  // MUCAP_SPECFUN_HPP
