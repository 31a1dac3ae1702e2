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

#ifndef MUCAP_STATFIT_HPP
#define MUCAP_STATFIT_HPP

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mucap/error.hpp"
#include "mucap/specfun.hpp"

namespace mucap::statfit {

inline constexpr std::size_t gof_bins = 20;
inline constexpr std::size_t min_chi2_samples = 200;
inline constexpr std::size_t min_ks_samples = 50;
inline constexpr std::size_t min_gamma_fit_samples = 100;

struct GammaFit {
  double alpha = 0.0;
  double beta = 0.0;
  double log_likelihood = 0.0;
  bool chi2_pass = false;
  bool ks_pass = false;
  double chi2_stat = 0.0;
  double ks_stat = 0.0;
  int iterations = 0;
};

struct Chi2Result {
  double stat = 0.0;
  int dof = 0;
  bool pass = false;
};

struct KsResult {
  double stat = 0.0;
  bool pass = false;
};

namespace detail {

inline void require_positive_samples(std::span<const double> samples) {
  for (double x : samples)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("samples must be positive and finite, got " + std::to_string(x));
}

}  // namespace detail

// Gamma cdf with shape alpha and scale beta.
inline double gamma_cdf(double x, double alpha, double beta) { return specfun::regularized_gamma_p(alpha, x / beta); }

inline double gamma_log_likelihood(std::span<const double> samples, double alpha, double beta) {
  double sum_x = 0.0, sum_log = 0.0;
  for (double x : samples) {
    sum_x += x;
    sum_log += std::log(x);
  }
  const auto n = static_cast<double>(samples.size());
  return (alpha - 1.0) * sum_log - sum_x / beta - n * (alpha * std::log(beta) + specfun::ln_gamma(alpha));
}

// Pearson chi-squared test on 20 bins that are equiprobable under `cdf`.
template <class Cdf>
Chi2Result chi_square_gof(std::span<const double> samples, Cdf&& cdf, int fitted_param_count, double level) {
  if (samples.size() < min_chi2_samples)
    throw BinningError("chi-squared test needs at least " + std::to_string(min_chi2_samples) + " samples for " + std::to_string(gof_bins) +
                       " bins with expected count >= 5, got " + std::to_string(samples.size()));
  if (!(level > 0.0 && level < 1.0)) throw DomainError("significance level must lie in (0, 1)");
  const int dof = static_cast<int>(gof_bins) - 1 - fitted_param_count;
  if (dof < 1) throw DomainError("too many fitted parameters for the chi-squared test");

  std::array<std::size_t, gof_bins> observed{};
  for (double x : samples) {
    const double u = cdf(x);
    auto bin = static_cast<std::size_t>(std::floor(u * static_cast<double>(gof_bins)));
    observed[std::min(bin, gof_bins - 1)]++;
  }
  const double expected = static_cast<double>(samples.size()) / static_cast<double>(gof_bins);
  double stat = 0.0;
  for (auto o : observed) {
    const double d = static_cast<double>(o) - expected;
    stat += d * d / expected;
  }
  const double critical = boost::math::quantile(boost::math::chi_squared(dof), 1.0 - level);
  return {stat, dof, stat < critical};
}

// Asymptotic Kolmogorov critical value c(level), c(0.05) = 1.358.
inline double kolmogorov_critical(double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("significance level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(0.5 * level));
}

// One-sample Kolmogorov test. No Lilliefors correction is applied when the
// cdf parameters were estimated from the same data.
template <class Cdf>
KsResult ks_gof(std::span<const double> samples, Cdf&& cdf, double level) {
  if (samples.size() < min_ks_samples)
    throw DomainError("Kolmogorov test needs at least " + std::to_string(min_ks_samples) + " samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, d < kolmogorov_critical(level) / std::sqrt(n)};
}

// ML scale under a fixed exponential shape: the sample mean.
inline double fit_exponential(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("fit_exponential needs at least one sample");
  detail::require_positive_samples(samples);
  double sum = 0.0;
  for (double x : samples) sum += x;
  return sum / static_cast<double>(samples.size());
}

// Maximum-likelihood gamma shape and scale. Newton iteration on
// ln(a) - psi(a) = ln(mean) - mean(ln x), started from the closed-form
// approximation of Minka/Choi-Wette. The GoF gates are evaluated at
// `level`; with fewer than 200 samples the chi-squared gate reports
// failure and a NaN statistic.
inline GammaFit fit_gamma_ml(std::span<const double> samples, double level = 0.05) {
  if (samples.size() < min_gamma_fit_samples)
    throw DomainError("fit_gamma_ml needs at least " + std::to_string(min_gamma_fit_samples) + " samples");
  detail::require_positive_samples(samples);
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) throw FitError("gamma fit of constant samples diverges (zero variance)", std::numeric_limits<double>::infinity());

  double sum = 0.0, sum_log = 0.0;
  for (double x : samples) {
    sum += x;
    sum_log += std::log(x);
  }
  const auto n = static_cast<double>(samples.size());
  const double mean = sum / n;
  const double s = std::log(mean) - sum_log / n;
  if (!(s > 0.0)) throw FitError("gamma fit statistic ln(mean) - mean(ln x) is not positive", s);

  double alpha = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < 200; ++it) {
    residual = std::log(alpha) - specfun::digamma(alpha) - s;
    if (std::abs(residual) < 1e-10) break;
    // Newton step in log(alpha), which keeps alpha positive.
    const double slope = 1.0 - alpha * specfun::trigamma(alpha);
    alpha *= std::exp(-residual / slope);
  }
  if (!(std::abs(residual) < 1e-10)) throw FitError("gamma ML iteration did not converge", residual);

  GammaFit fit;
  fit.alpha = alpha;
  fit.beta = mean / alpha;
  fit.iterations = it;
  fit.log_likelihood = gamma_log_likelihood(samples, fit.alpha, fit.beta);
  auto cdf = [&fit](double x) { return gamma_cdf(x, fit.alpha, fit.beta); };
  if (samples.size() >= min_chi2_samples) {
    const Chi2Result chi2 = chi_square_gof(samples, cdf, 2, level);
    fit.chi2_stat = chi2.stat;
    fit.chi2_pass = chi2.pass;
  } else {
    fit.chi2_stat = std::numeric_limits<double>::quiet_NaN();
  }
  const KsResult ks = ks_gof(samples, cdf, level);
  fit.ks_stat = ks.stat;
  fit.ks_pass = ks.pass;
  return fit;
}

}  // namespace mucap::statfit

#endif  // MUCAP_STATFIT_HPP
