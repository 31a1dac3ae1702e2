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

#ifndef MUCAP_SYSTEM_CONFIG_HPP
#define MUCAP_SYSTEM_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "mucap/channel.hpp"
#include "mucap/correlation.hpp"
#include "mucap/error.hpp"

namespace mucap {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// One MU-MIMO operating point. Each transmit antenna carries one
// single-antenna user, so n_users == n_t.
struct SystemConfig {
  std::size_t n_t = 8;
  std::size_t n_r = 8;
  std::size_t n_users = 8;
  double snr_db = 10.0;
  FadingParams fading{};
  CorrelationSpec correlation{8, 0.0, 7};
  SemiCorrelationMode mode{};
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  PsdPolicy psd_policy = PsdPolicy::error;

  double snr_linear() const { return db_to_linear(snr_db); }

  const SystemConfig& validate() const {
    if (n_t == 0 || n_r == 0) throw DomainError("antenna counts must be positive");
    if (n_users != n_t) throw DomainError("n_users must equal n_t (one stream per transmit antenna)");
    if (n_r < n_t) throw DomainError("zero-forcing needs n_r >= n_t (n_r=" + std::to_string(n_r) + ", n_t=" + std::to_string(n_t) + ")");
    if (!std::isfinite(snr_db)) throw DomainError("snr_db must be finite");
    if (trials == 0) throw DomainError("trials must be positive");
    fading.validated();
    correlation.validated();
    const std::size_t need = mode.correlated_dim(n_t, n_r);
    if (correlation.n != need)
      throw ShapeError("correlation dimension must equal the antenna count on the correlated side", need, correlation.n);
    return *this;
  }
};

}  // namespace mucap

#endif  // MUCAP_SYSTEM_CONFIG_HPP
