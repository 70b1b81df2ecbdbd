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

#include "qpvkex/trials.h"

#include <gtest/gtest.h>

#include <stdexcept>

namespace qpvkex {
namespace {

TEST(RunTrialsTest, ResultsInIndexOrderWithDerivedSeeds) {
  auto r = RunTrials(100, 9, 4, [](std::size_t i, std::uint64_t seed) {
    return std::make_pair(i, seed);
  });
  ASSERT_EQ(r.size(), 100u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(r[i].first, i);
    EXPECT_EQ(r[i].second, DeriveSeed(9, i));
  }
}

TEST(RunTrialsTest, OutputIndependentOfWorkerCount) {
  auto fn = [](std::size_t, std::uint64_t seed) {
    Rng rng(seed);
    return UniformInt(rng, 1000000);
  };
  auto serial = RunTrials(500, 3, 1, fn);
  EXPECT_EQ(serial, RunTrials(500, 3, 3, fn));
  EXPECT_EQ(serial, RunTrials(500, 3, 16, fn));
}

TEST(RunTrialsTest, EmptyBatch) {
  EXPECT_TRUE(RunTrials(0, 1, 4, [](std::size_t, std::uint64_t) { return 0; }).empty());
}

TEST(RunTrialsTest, PropagatesExceptions) {
  auto fn = [](std::size_t i, std::uint64_t) -> int {
    if (i == 37) throw std::runtime_error("trial failed");
    return 0;
  };
  EXPECT_THROW(RunTrials(100, 1, 1, fn), std::runtime_error);
  EXPECT_THROW(RunTrials(100, 1, 4, fn), std::runtime_error);
}

}  // namespace
}  // namespace qpvkex
