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

#include "qpvkex/qpv.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qpvkex/errors.h"
#include "qpvkex/quantum.h"
#include "qpvkex/random.h"
#include "test_support.h"

namespace qpvkex::qpv {
namespace {

using testing::BinomialSigma;

QpvConfig Config(int rounds, double eta = 1.0) {
  QpvConfig c;
  c.rounds = rounds;
  c.eta = eta;
  return c;
}

TEST(QpvConfigTest, Validation) {
  QpvConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.eta = 0.0;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QpvConfig{};
  c.num_bases = 1;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QpvConfig{};
  c.error_threshold = 1.0;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QpvConfig{};
  c.delta_t = c.RunDuration() * 0.5;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QpvConfig{};
  c.deviation_weights = {1.0, 2.0};
  EXPECT_THROW(c.Validate(), ValidationError);
}

TEST(BasisFunctionTest, Deterministic) {
  Rng rng(1);
  BitString x = RandomBits(rng, 16), y = RandomBits(rng, 16);
  EXPECT_EQ(BasisFunction(9, x, y, 2), BasisFunction(9, x, y, 2));
  EXPECT_THROW(BasisFunction(9, x, RandomBits(rng, 15), 2), ValidationError);
  EXPECT_THROW(BasisFunction(9, x, y, 0), ValidationError);
}

TEST(BasisFunctionTest, UniformOverTwoBases) {
  Rng rng(2);
  const int n = 100000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) {
    zeros += BasisFunction(0x5eed, RandomBits(rng, 16), RandomBits(rng, 16), 2) == 0;
  }
  double f = zeros / static_cast<double>(n);
  EXPECT_GE(f, 0.494);
  EXPECT_LE(f, 0.506);
}

TEST(BasisFunctionTest, UniformOverFiveBasesChiSquare) {
  Rng rng(3);
  const int n = 100000, k = 5;
  std::vector<int> counts(k);
  for (int i = 0; i < n; ++i) {
    ++counts[BasisFunction(0x5eed, RandomBits(rng, 16), RandomBits(rng, 16), k)];
  }
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / double(k)) * (c - n / double(k)) / (n / double(k));
  EXPECT_LT(chi2, 18.47);  // 99.9% quantile, 4 degrees of freedom
}

TEST(BasisFunctionTest, SeedsAreIndependent) {
  Rng rng(4);
  const int n = 10000;
  int agree = 0;
  for (int i = 0; i < n; ++i) {
    BitString x = RandomBits(rng, 16), y = RandomBits(rng, 16);
    agree += BasisFunction(1, x, y, 2) == BasisFunction(2, x, y, 2);
  }
  EXPECT_NEAR(agree / double(n), 0.5, 3 * BinomialSigma(0.5, n));
}

TEST(ConditionalErrorRateTest, Examples) {
  QpvStats s;
  s.detections = 100;
  EXPECT_DOUBLE_EQ(ConditionalErrorRate(s), 0.0);
  s.errors = 5;
  EXPECT_DOUBLE_EQ(ConditionalErrorRate(s), 0.05);
  s.detections = 0;
  s.errors = 0;
  EXPECT_THROW(ConditionalErrorRate(s), UndefinedRateError);
}

TEST(QpvSingleTest, HonestNoiselessPasses) {
  auto r = RunQpvSingle(Config(10000), ProverStrategy::Honest(1.0), 1);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.errors, 0);
  EXPECT_EQ(r.stats.detections, 10000);
  EXPECT_EQ(r.stats.rounds_run, 10000);
  EXPECT_DOUBLE_EQ(ConditionalErrorRate(r.stats), 0.0);
}

TEST(QpvSingleTest, AbsentFails) {
  auto r = RunQpvSingle(Config(200), ProverStrategy::Absent(), 2);
  EXPECT_EQ(r.verdict, Verdict::kFail);
  EXPECT_EQ(r.stats.detections, 0);
}

TEST(QpvSingleTest, HonestLossyTransmission) {
  const int n = 100000;
  auto r = RunQpvSingle(Config(n, 0.8), ProverStrategy::Honest(0.8), 3);
  EXPECT_NEAR(r.stats.Transmission(), 0.8, 3 * BinomialSigma(0.8, n));
  EXPECT_EQ(r.stats.errors, 0);
  EXPECT_EQ(r.verdict, Verdict::kPass);
}

TEST(QpvSingleTest, BasisGuessPostSelects) {
  const int n = 100000;
  auto r = RunQpvSingle(Config(n), ProverStrategy::BasisGuess(), 4);
  EXPECT_EQ(r.stats.errors, 0);
  EXPECT_EQ(r.stats.timing_failures, 0);
  EXPECT_EQ(r.stats.mismatch_failures, 0);
  EXPECT_NEAR(r.stats.detections / double(r.stats.rounds_run), 0.5, 3 * BinomialSigma(0.5, n));
}

TEST(QpvSingleTest, FixedBasisInterceptError) {
  QpvConfig c = Config(100000);
  c.error_threshold = 0.5;
  auto r = RunQpvSingle(c, ProverStrategy::FixedBasis(std::numbers::pi / 8), 5);
  // sin^2(pi/8), mpmath.
  EXPECT_NEAR(ConditionalErrorRate(r.stats), 0.14644660940672623780, 0.01);
  EXPECT_EQ(r.stats.detections, 100000);
}

TEST(QpvSingleTest, ErrorThresholdIsStrict) {
  QpvConfig c = Config(1000);
  c.channel_noise = 0.1;
  c.error_threshold = 0.0;
  EXPECT_EQ(RunQpvSingle(c, ProverStrategy::Honest(1.0), 6).verdict, Verdict::kFail);
  c.channel_noise = 0.0;
  EXPECT_EQ(RunQpvSingle(c, ProverStrategy::Honest(1.0), 6).verdict, Verdict::kPass);
}

TEST(QpvSingleTest, MismatchFailsWholeRun) {
  auto r = RunQpvSingle(Config(100), ProverStrategy::MismatchAt(3), 7, true);
  EXPECT_EQ(r.verdict, Verdict::kFail);
  ASSERT_EQ(r.records.size(), 100u);
  EXPECT_EQ(r.records[3].verdict, RoundVerdict::kMismatchFail);
  EXPECT_EQ(r.stats.mismatch_failures, 1);
  for (std::size_t i = 4; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].verdict, RoundVerdict::kOk);
  }
}

TEST(QpvSingleTest, OffPositionRelayFailsTiming) {
  QpvConfig c = Config(500);
  c.t_delta = 0.0;
  auto r = RunQpvSingle(c, ProverStrategy::OffsetRelay(0.3), 8, true);
  EXPECT_EQ(r.verdict, Verdict::kFail);
  for (const auto& rec : r.records) EXPECT_EQ(rec.verdict, RoundVerdict::kTimingFail);
  EXPECT_EQ(r.stats.timing_failures, 500);
}

TEST(QpvSingleTest, RelayWithinSlackPasses) {
  QpvConfig c = Config(200);
  c.t_delta = 1.0;  // exceeds the 2 * 0.3 geometric disadvantage
  EXPECT_EQ(RunQpvSingle(c, ProverStrategy::OffsetRelay(0.3), 9).verdict, Verdict::kPass);
}

TEST(QpvSingleTest, RecordInvariants) {
  QpvConfig c = Config(5000, 0.6);
  c.channel_noise = 0.05;
  c.error_threshold = 0.5;
  auto r = RunQpvSingle(c, ProverStrategy::Honest(0.6), 10, true);
  std::int64_t det = 0, err = 0;
  for (const auto& rec : r.records) {
    bool both = rec.response1 != Response::kNone && rec.response2 != Response::kNone;
    EXPECT_EQ(rec.verdict == RoundVerdict::kMismatchFail, both && rec.response1 != rec.response2);
    if (rec.verdict == RoundVerdict::kError) {
      EXPECT_EQ(rec.response1, rec.response2);
      EXPECT_NE(static_cast<int>(rec.response1), rec.z_sent);
    }
    det += both;
    err += rec.verdict == RoundVerdict::kError;
  }
  EXPECT_EQ(det, r.stats.detections);
  EXPECT_EQ(err, r.stats.errors);
  EXPECT_LE(r.stats.errors, r.stats.detections);
  EXPECT_LE(r.stats.detections, r.stats.rounds_run);
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 2; ++t) {
      EXPECT_EQ(r.stats.CellTotal(s, t),
                r.stats.Count(0, s, t) + r.stats.Count(1, s, t) + r.stats.Count(2, s, t));
    }
  }
}

TEST(QpvSingleTest, AbstractPassFrequency) {
  const int trials = 4000;
  int passes = 0;
  for (int i = 0; i < trials; ++i) {
    passes += RunQpvSingle(Config(4), ProverStrategy::AbstractPass(0.2), DeriveSeed(11, i))
                  .verdict == Verdict::kPass;
  }
  EXPECT_NEAR(passes / double(trials), 0.2, 4 * BinomialSigma(0.2, trials));
}

TEST(QpvSingleTest, RunFaultBlocksHonestProver) {
  QpvConfig c = Config(8);
  c.run_fault_probability = 1.0;
  auto r = RunQpvSingle(c, ProverStrategy::Honest(1.0), 12);
  EXPECT_TRUE(r.faulted);
  EXPECT_EQ(r.verdict, Verdict::kFail);
}

TEST(QpvSingleTest, SameSeedSameResult) {
  auto a = RunQpvSingle(Config(300, 0.7), ProverStrategy::Honest(0.7), 13);
  auto b = RunQpvSingle(Config(300, 0.7), ProverStrategy::Honest(0.7), 13);
  EXPECT_EQ(a.stats.detections, b.stats.detections);
  EXPECT_EQ(a.stats.counts, b.stats.counts);
}

TEST(QpvMultiTest, HonestLossyPasses) {
  QpvConfig c = Config(200000, 0.8);
  c.num_bases = 3;
  auto r = RunQpvMultiBasis(c, ProverStrategy::Honest(0.8), 14);
  EXPECT_LE(r.total_deviation, 0.02);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_TRUE(r.empty_cells.empty());
}

TEST(QpvMultiTest, BasisGuessMatchesLossyStatistics) {
  for (int n : {2, 3, 4}) {
    QpvConfig c = Config(100000, 1.0 / n);
    c.num_bases = n;
    auto r = RunQpvMultiBasis(c, ProverStrategy::BasisGuess(), 15 + n);
    EXPECT_NEAR(r.stats.Transmission(), 1.0 / n, 4 * BinomialSigma(1.0 / n, c.rounds));
    for (int z = 0; z < 2; ++z) {
      for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < n; ++t) EXPECT_LT(r.deviations[z][s][t], 0.03);
      }
    }
    EXPECT_LT(r.total_deviation, 0.01);
  }
}

TEST(QpvMultiTest, DeviationFormulaOracle) {
  QpvConfig c = Config(20000, 0.9);
  c.num_bases = 3;
  auto r = RunQpvMultiBasis(c, ProverStrategy::Honest(0.9), 20);
  double total = 0;
  for (int z = 0; z < 2; ++z) {
    for (int s = 0; s < 4; ++s) {
      for (int t = 0; t < 3; ++t) {
        double p = quantum::OutcomeProbability(quantum::Bb84StateByIndex(s),
                                               quantum::BasisAngle(BasisAngleFor(t, 3)), z);
        double expected = std::abs(double(r.stats.Count(z, s, t)) / r.stats.CellTotal(s, t) - 0.9 * p);
        EXPECT_NEAR(r.deviations[z][s][t], expected, 1e-12);
        total += expected;
      }
    }
  }
  EXPECT_NEAR(r.total_deviation, total / 12.0, 1e-12);
}

TEST(QpvMultiTest, EmptyCellsAreFlagged) {
  QpvConfig c = Config(2, 0.5);
  c.num_bases = 4;
  auto r = RunQpvMultiBasis(c, ProverStrategy::Honest(0.5), 21);
  EXPECT_FALSE(r.empty_cells.empty());
  for (const auto& cell : r.empty_cells) {
    double p = quantum::OutcomeProbability(quantum::Bb84StateByIndex(cell[1]),
                                           quantum::BasisAngle(BasisAngleFor(cell[2], 4)), cell[0]);
    EXPECT_NEAR(r.deviations[cell[0]][cell[1]][cell[2]], 0.5 * p, 1e-12);
  }
}

TEST(QpvMultiTest, AbortsOnMismatch) {
  QpvConfig c = Config(100);
  c.num_bases = 3;
  auto r = RunQpvMultiBasis(c, ProverStrategy::MismatchAt(5), 22);
  EXPECT_TRUE(r.aborted);
  EXPECT_EQ(r.verdict, Verdict::kFail);
}

TEST(QpvMultiTest, TwoBasesAgreesWithSingleBasisVerdicts) {
  QpvConfig c = Config(3000);
  c.num_bases = 2;
  c.deviation_threshold = c.error_threshold;
  std::vector<ProverStrategy> strategies = {ProverStrategy::Honest(1.0), ProverStrategy::Absent(),
                                            ProverStrategy::MismatchAt(10),
                                            ProverStrategy::OffsetRelay(0.4)};
  for (const auto& s : strategies) {
    for (std::uint64_t seed = 30; seed < 33; ++seed) {
      EXPECT_EQ(RunQpvSingle(c, s, seed).verdict, RunQpvMultiBasis(c, s, seed).verdict)
          << StrategyKindName(s.kind);
    }
  }
}

}  // namespace
}  // namespace qpvkex::qpv
