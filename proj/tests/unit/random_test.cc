/*
 * Copyright 2026 The qpvkex Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qpvkex/random.h"

#include <gtest/gtest.h>

#include <set>

namespace qpvkex {
namespace {

TEST(RandomTest, DeriveSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(DeriveSeed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(DeriveSeed(42, 7), DeriveSeed(42, 7));
  EXPECT_NE(DeriveSeed(42, 7), DeriveSeed(43, 7));
}

TEST(RandomTest, UniformHelpersStayInRange) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    double u = Uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(UniformInt(rng, 7), 7u);
  }
  EXPECT_FALSE(Bernoulli(rng, 0.0));
  EXPECT_TRUE(Bernoulli(rng, 1.0));
}

TEST(RandomTest, BernoulliFrequency) {
  Rng rng(9);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += Bernoulli(rng, 0.3);
  EXPECT_NEAR(hits / static_cast<double>(n), 0.3, 3 * std::sqrt(0.21 / n));
}

TEST(RandomTest, SameSeedSameBits) {
  Rng a(5), b(5);
  EXPECT_EQ(RandomBits(a, 200), RandomBits(b, 200));
}

}  // namespace
}  // namespace qpvkex
