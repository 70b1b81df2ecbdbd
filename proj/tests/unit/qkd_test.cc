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

#include "qpvkex/qkd.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qpvkex/errors.h"
#include "qpvkex/quantum.h"
#include "qpvkex/random.h"

namespace qpvkex::kex {
namespace {

TEST(QkdConfigTest, Validation) {
  QkdConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.pe_threshold = 0.5;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QkdConfig{};
  c.channel_qber = 1.5;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = QkdConfig{};
  c.ec_passes = 0;
  EXPECT_THROW(c.Validate(), ValidationError);
}

TEST(QkdTest, NoiselessAgreesAndPasses) {
  QkdConfig c;
  QkdResult r = RunToyQkd(c, 1);
  EXPECT_TRUE(r.i_pe_a);
  EXPECT_TRUE(r.i_pe_b);
  EXPECT_EQ(r.corrected_a, r.corrected_b);
  EXPECT_EQ(r.KeyA(), r.KeyB());
  EXPECT_GT(r.KeyA().size(), 0u);
  EXPECT_DOUBLE_EQ(r.qber_estimate_a, 0.0);
  EXPECT_NEAR(r.sifted_a / double(c.signal_count), 0.5, 0.03);
  EXPECT_EQ(r.m_a, r.m_a_received);
  EXPECT_EQ(r.m_b, r.m_b_received);
}

TEST(QkdTest, HighErrorRateAborts) {
  QkdConfig c;
  c.channel_qber = 0.2;
  for (int seed = 0; seed < 200; ++seed) {
    QkdResult r = RunToyQkd(c, DeriveSeed(2, seed));
    EXPECT_FALSE(r.i_pe_a);
    EXPECT_FALSE(r.i_pe_b);
  }
}

TEST(QkdTest, ModerateNoiseIsCorrected) {
  QkdConfig c;
  c.channel_qber = 0.02;
  int agree = 0;
  const int trials = 1000;
  for (int seed = 0; seed < trials; ++seed) {
    QkdResult r = RunToyQkd(c, DeriveSeed(3, seed));
    agree += r.i_pe_a && r.i_pe_b && r.corrected_a == r.corrected_b;
  }
  EXPECT_GE(agree, 990);
}

TEST(QkdTest, VerifiedKeysAgree) {
  QkdConfig c;
  c.signal_count = 2000;
  c.channel_qber = 0.04;
  c.ec_passes = 2;
  c.pe_threshold = 0.2;
  int verified = 0;
  for (int seed = 0; seed < 300; ++seed) {
    QkdResult r = RunToyQkd(c, DeriveSeed(4, seed));
    if (r.verify_a && r.verify_b) {
      ++verified;
      EXPECT_EQ(r.corrected_a, r.corrected_b);
    }
  }
  EXPECT_GT(verified, 0);
}

TEST(QkdTest, CorrectionSurvivesZeroErrorEstimate) {
  QkdConfig c;
  c.signal_count = 1000;
  c.channel_qber = 0.02;
  int zero_estimates = 0, verified = 0;
  for (int seed = 0; seed < 200; ++seed) {
    QkdResult r = RunToyQkd(c, DeriveSeed(6, seed));
    if (r.qber_estimate_a != 0.0) continue;
    ++zero_estimates;
    verified += r.verify_a && r.verify_b;
  }
  ASSERT_GT(zero_estimates, 30);
  EXPECT_GE(verified, zero_estimates * 95 / 100);
}

TEST(QkdTest, TranscriptsStayWithinBound) {
  QkdConfig c;
  c.signal_count = 1000;
  QkdTranscriptBound bound = MaxTranscriptBits(c);
  for (double qber : {0.0, 0.03, 0.05, 0.2, 0.5}) {
    c.channel_qber = qber;
    for (int seed = 0; seed < 20; ++seed) {
      QkdResult r = RunToyQkd(c, DeriveSeed(8, seed));
      EXPECT_LE(r.m_a.size(), bound.alice_bits) << "qber=" << qber;
      EXPECT_LE(r.m_b.size(), bound.bob_bits) << "qber=" << qber;
    }
  }
}

TEST(QkdTest, FaultInjectionFailsEstimation) {
  QkdConfig c;
  c.fault_probability = 1.0;
  QkdResult r = RunToyQkd(c, 5);
  EXPECT_TRUE(r.faulted);
  EXPECT_FALSE(r.i_pe_a);
  EXPECT_FALSE(r.i_pe_b);
}

TEST(QkdTest, Deterministic) {
  QkdConfig c;
  c.channel_qber = 0.03;
  QkdResult a = RunToyQkd(c, 6), b = RunToyQkd(c, 6);
  EXPECT_EQ(a.m_a, b.m_a);
  EXPECT_EQ(a.m_b, b.m_b);
  EXPECT_EQ(a.KeyA(), b.KeyA());
}

TEST(QkdTest, TamperedBobStreamIsRecorded) {
  QkdConfig c;
  c.signal_count = 1000;
  ClassicalChannel ch({0, 5, 1003});
  QkdResult r = RunToyQkd(c, 7, ch);
  BitString diff = r.m_b ^ r.m_b_received;
  EXPECT_EQ(diff.HammingWeight(), 3u);
  EXPECT_TRUE(diff[0]);
  EXPECT_TRUE(diff[5]);
  EXPECT_TRUE(diff[1003]);
  EXPECT_EQ(r.m_a, r.m_a_received);
}

TEST(QkdTest, LeakCountsDisclosedParities) {
  QkdConfig c;
  c.channel_qber = 0.03;
  QkdResult r = RunToyQkd(c, 8);
  EXPECT_GE(r.leak, static_cast<std::size_t>(c.verification_tag_bits));
  EXPECT_EQ(r.pa_length_a, DefaultPaLength(r.sifted_a, c.pe_threshold, r.leak));
}

TEST(QkdTest, DefaultPaLengthFormula) {
  double h = quantum::BinaryEntropy(0.05);
  EXPECT_EQ(DefaultPaLength(5000, 0.05, 800),
            static_cast<std::size_t>(std::floor(5000 * (1 - 2 * h)) - 800));
  EXPECT_EQ(DefaultPaLength(100, 0.05, 1000), 0u);
}

TEST(ToeplitzTest, LinearAndDeterministic) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    BitString a = RandomBits(rng, 300), b = RandomBits(rng, 300);
    std::uint64_t seed = rng();
    BitString ha = ToeplitzHash(a, seed, 100);
    EXPECT_EQ(ha.size(), 100u);
    EXPECT_EQ(ha, ToeplitzHash(a, seed, 100));
    EXPECT_EQ(ToeplitzHash(a ^ b, seed, 100), ha ^ ToeplitzHash(b, seed, 100));
  }
  EXPECT_EQ(ToeplitzHash(BitString(64), 1, 32), BitString(32));
}

TEST(ToeplitzTest, ConstantAlongDiagonals) {
  // Column j of the matrix is the image of the j-th unit vector; Toeplitz
  // structure means M[i][j] = M[i+1][j+1].
  const std::size_t n = 40, m = 24;
  std::vector<BitString> cols;
  for (std::size_t j = 0; j < n; ++j) {
    BitString e(n);
    e.set(j, true);
    cols.push_back(ToeplitzHash(e, 77, m));
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) EXPECT_EQ(cols[j][i], cols[j + 1][i + 1]);
  }
}

}  // namespace
}  // namespace qpvkex::kex
