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

#ifndef MUCAP_RNG_HPP
#define MUCAP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "mucap/error.hpp"

namespace mucap {

// SplitMix64 finalizer. Used to turn (seed, index, ...) tuples into
// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine_seed(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto w : words) h = mix64(h ^ mix64(w));
  return h;
}

// A deterministic random stream. All variates are generated from the raw
// 64-bit output of std::mt19937_64 with our own transforms, so sequences are
// reproducible across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent sub-stream for a Monte Carlo trial. `attempt` > 0 is used
  // when a trial has to be redrawn.
  static RandomStream derive(std::uint64_t master, std::uint64_t index, std::uint64_t attempt = 0) {
    return RandomStream(combine_seed({master, index, attempt}));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  bool coin() { return (engine_() >> 63) != 0; }

  // Standard normal, Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Gamma(shape, scale). Marsaglia-Tsang for shape >= 1, Ahrens-Dieter GS
  // rejection for shape < 1 (exact, no shape boosting).
  double gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
      throw DomainError("gamma variate requires positive finite shape and scale");
    return (shape >= 1.0 ? gamma_mt(shape) : gamma_gs(shape)) * scale;
  }

  double exponential(double mean) { return -mean * std::log(uniform()); }

 private:
  double gamma_mt(double a) {
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double gamma_gs(double a) {
    const double b = (std::numbers::e + a) / std::numbers::e;
    for (;;) {
      const double p = b * uniform();
      if (p <= 1.0) {
        const double x = std::pow(p, 1.0 / a);
        if (uniform() <= std::exp(-x)) return x;
      } else {
        const double x = -std::log((b - p) / a);
        if (uniform() <= std::pow(x, a - 1.0)) return x;
      }
    }
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mucap

#endif  // MUCAP_RNG_HPP
