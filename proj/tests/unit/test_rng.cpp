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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mucap/error.hpp"
#include "mucap/rng.hpp"

using mucap::RandomStream;

TEST(Seeds, CombineIsOrderSensitiveAndStable) {
  EXPECT_EQ(mucap::combine_seed({1, 2, 3}), mucap::combine_seed({1, 2, 3}));
  EXPECT_NE(mucap::combine_seed({1, 2, 3}), mucap::combine_seed({3, 2, 1}));
  EXPECT_NE(mucap::combine_seed({1, 2}), mucap::combine_seed({1, 2, 0}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 10000; ++t) seen.insert(mucap::combine_seed({7, t, 0}));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(RandomStream, DerivedStreamsReproduce) {
  auto a = RandomStream::derive(5, 17), b = RandomStream::derive(5, 17), c = RandomStream::derive(5, 17, 1);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(RandomStream, UniformOpenInterval) {
  RandomStream rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 1e5, 0.5, 0.005);
}

TEST(RandomStream, NormalMoments) {
  RandomStream rng(2);
  double s = 0.0, ss = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    ss += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(ss / n, 1.0, 0.01);
}

TEST(RandomStream, GammaMoments) {
  for (double shape : {0.05, 0.35, 1.0, 1.25, 7.0}) {
    RandomStream rng(3);
    const double scale = 2.0;
    double s = 0.0, ss = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const double g = rng.gamma(shape, scale);
      ASSERT_GE(g, 0.0);
      s += g;
      ss += g * g;
    }
    const double mean = s / n, var = ss / n - mean * mean;
    EXPECT_NEAR(mean, shape * scale, 0.01 * shape * scale + 5.0 * std::sqrt(shape * scale * scale / n)) << shape;
    EXPECT_NEAR(var, shape * scale * scale, 0.05 * shape * scale * scale) << shape;
  }
}

TEST(RandomStream, GammaRejectsBadArguments) {
  RandomStream rng(4);
  EXPECT_THROW(rng.gamma(0.0, 1.0), mucap::DomainError);
  EXPECT_THROW(rng.gamma(1.0, -1.0), mucap::DomainError);
  EXPECT_THROW(rng.gamma(NAN, 1.0), mucap::DomainError);
}

TEST(RandomStream, CoinIsFair) {
  RandomStream rng(5);
  int heads = 0;
  for (int i = 0; i < 100000; ++i) heads += rng.coin() ? 1 : 0;
  EXPECT_NEAR(heads, 50000, 5 * 158);
}
