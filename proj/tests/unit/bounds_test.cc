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

#include "qpvkex/bounds.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "qpvkex/errors.h"
#include "qpvkex/msg_auth.h"
#include "qpvkex/quantum.h"

namespace qpvkex::bounds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Thm1BoundTest, Examples) {
  EXPECT_DOUBLE_EQ(Thm1Bound(0, 1, 0, Thm1Variant::kLiteral).value, 1.0);
  EXPECT_NEAR(Thm1Bound(1e-10, 64, 1e-6, Thm1Variant::kLiteral).value, 0.0156260001, 1e-17);
  EXPECT_EQ(Thm1Bound(0, 64, 0, Thm1Variant::kExponential).value, std::ldexp(1.0, -64));
}

TEST(Thm1BoundTest, ClampsAndKeepsRaw) {
  BoundValue b = Thm1Bound(0.5, 1, 0.5, Thm1Variant::kLiteral);
  EXPECT_DOUBLE_EQ(b.raw, 2.0);
  EXPECT_DOUBLE_EQ(b.value, 1.0);
  EXPECT_THROW(Thm1Bound(0, 0, 0, Thm1Variant::kLiteral), DomainError);
}

SecurityParams Sec(double eps_qkd, double delta, int key_bits, double eps_qpv) {
  SecurityParams p;
  p.eps_qkd = eps_qkd;
  p.delta_hash = delta;
  p.key_bits = key_bits;
  p.eps_qpv = eps_qpv;
  return p;
}

TEST(Protocol3BoundTest, SecurityExamples) {
  EXPECT_EQ(Protocol3Security(SecurityParams{}).value, 0.0);
  EXPECT_NEAR(Protocol3Security(Sec(1e-9, std::ldexp(1.0, -31), 76, 1e-5)).value,
              0.001540002931322574615, 1e-18);
  BoundValue clamped = Protocol3Security(Sec(0, 0, 2, 0.25));
  EXPECT_DOUBLE_EQ(clamped.raw, 1.5);
  EXPECT_DOUBLE_EQ(clamped.value, 1.0);
}

TEST(Protocol3BoundTest, RobustnessExamples) {
  EXPECT_EQ(Protocol3Robustness(SecurityParams{}).value, 0.0);
  SecurityParams p;
  p.eps_rob_qkd = 1e-3;
  p.key_bits = 76;
  p.eps_rob_qpv = 1e-4;
  EXPECT_NEAR(Protocol3Robustness(p).value, 5.1e-3, 1e-17);
  for (int key_bits : {1, 10, 300}) {
    p.eps_rob_qkd = 0.5;
    p.eps_rob_qpv = 0.5;
    p.key_bits = key_bits;
    EXPECT_DOUBLE_EQ(Protocol3Robustness(p).value, 1.0);
  }
}

TEST(Protocol3BoundTest, RejectsInvalidParams) {
  SecurityParams p;
  p.eps_qkd = 1.5;
  EXPECT_THROW(p.Validate(), ValidationError);
  p = SecurityParams{};
  p.key_bits = -1;
  EXPECT_THROW(p.Validate(), ValidationError);
}

TEST(NetSizesTest, Examples) {
  EXPECT_DOUBLE_EQ(ComputeNetSizes(1, 2.0).log2_ns, 32.0);
  EXPECT_NEAR(ComputeNetSizes(1, 1.0).log2_ns, 50.71880002307699780, 1e-12);
  NetSizes z = ComputeNetSizes(0, 1.0);
  EXPECT_NEAR(z.log2_na, 202.87520009230799122, 1e-12);
  EXPECT_NEAR(z.log2_nb, 25.359400011538498903, 1e-12);
  EXPECT_THROW(ComputeNetSizes(1, 0.0), DomainError);
  EXPECT_THROW(ComputeNetSizes(1, -1.0), DomainError);
}

TEST(ClassicalRoundingTest, Examples) {
  EXPECT_EQ(ClassicalRoundingSize(0, 12.0 / 31.0), 768u);
  EXPECT_EQ(ClassicalRoundingSize(0, 0.5), 768u);
  EXPECT_EQ(ClassicalRoundingSize(1, 0.5), 49152u);
  EXPECT_THROW(ClassicalRoundingSize(0, 0.0), DomainError);
  EXPECT_THROW(ClassicalRoundingSize(0, 1.5), DomainError);
}

TEST(ClassicalRoundingTest, DominatesAttackerNetAtSixthResolution) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> qubits(0, 4);
  std::uniform_real_distribution<double> delta(1e-6, 1.0);
  for (int i = 0; i < 10; ++i) {
    int q = qubits(rng);
    double d = delta(rng);
    EXPECT_GE(static_cast<double>(ClassicalRoundingSize(q, d)), ComputeNetSizes(q, d / 6.0).log2_na)
        << "q=" << q << " delta_tilde=" << d;
  }
}

TEST(NuTest, Examples) {
  EXPECT_DOUBLE_EQ(NuValue(kInf, 0.5, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(NuArgument(4, 0.5, 1e-10), 1.0 - 6.0 * std::ldexp(1.0, -15) - 1e-10);
  double nu = NuValue(4, 0.5, 1e-10);
  EXPECT_NEAR(nu, 0.49203401797810540772, 1e-12);
  EXPECT_NEAR(quantum::BinaryEntropy(nu), NuArgument(4, 0.5, 1e-10), 1e-12);
}

TEST(NuTest, ZeroArgumentGivesZero) {
  // 2^(9-6 q0) * 6 = 1 at q0 = (9 + log2 6) / 6 with delta_tilde = 0.5.
  double q0 = (9.0 + std::log2(6.0)) / 6.0;
  double arg = NuArgument(q0, 0.5, 0.0);
  EXPECT_NEAR(arg, 0.0, 1e-15);
  if (arg >= 0.0) EXPECT_NEAR(NuValue(q0, 0.5, 0.0), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(quantum::BinaryEntropyInv(0.0), 0.0);
}

TEST(NuTest, NegativeArgumentIsInfeasible) {
  EXPECT_THROW(NuValue(1, 0.5, 0.0), InfeasibleError);
  EXPECT_THROW(NuValue(10, 0.5, 2.0), InfeasibleError);
}

TEST(NuTest, AlphaOverTwoToTheNEntryPoint) {
  // alpha / 2^n = a equals alpha / 2^(2n) = a * 2^-n.
  EXPECT_DOUBLE_EQ(NuValueAlphaOver2n(4, 0.5, 1e-10, 10), NuValue(4, 0.5, std::ldexp(1e-10, -10)));
}

TEST(NuTest, EntropyConsistencyProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> q0(2.0, 12.0), dt(1e-3, 1.0), af(0.0, 1e-3);
  int feasible = 0;
  for (int i = 0; i < 200; ++i) {
    double a = q0(rng), d = dt(rng), f = af(rng);
    double arg = NuArgument(a, d, f);
    if (arg < 0.0) {
      EXPECT_THROW(NuValue(a, d, f), InfeasibleError);
      continue;
    }
    ++feasible;
    double nu = NuValue(a, d, f);
    EXPECT_GE(nu, 0.0);
    EXPECT_LE(nu, 0.5);
    EXPECT_NEAR(quantum::BinaryEntropy(nu), arg, 1e-10);
  }
  EXPECT_GT(feasible, 100);
}

TEST(LpTest, Examples) {
  // eps_thres * eta = 0.1.
  EXPECT_NEAR(LpErrorLowerBound(0.9, 0.5, 0.2, 0.5, 0.8), 0.06, 1e-15);
  EXPECT_NEAR(LpBruteForceOracle(0.9, 0.5, 0.2, 0.5, 0.8, 1e-3), 0.06, 1e-3);
  // 1 - nu above the coverage ratio: primal value 0.
  EXPECT_EQ(LpErrorLowerBound(0.6, 0.5, 0.2, 0.5, 0.1), 0.0);
  EXPECT_EQ(LpBruteForceOracle(0.6, 0.5, 0.2, 0.5, 0.1, 1e-3), 0.0);
  EXPECT_EQ(LpErrorLowerBound(0.7, 0.7, 0.3, 0.9, 1.0), 0.0);
  EXPECT_EQ(LpErrorLowerBound(0.9, 0.2, 0.3, 0.9, 0.0), 0.0);
  EXPECT_EQ(LpBruteForceOracle(0.9, 0.2, 0.3, 0.9, 0.0, 1e-3), 0.0);
  EXPECT_THROW(LpErrorLowerBound(0.9, 1.0, 0.1, 0.9, 0.5), DomainError);
  EXPECT_THROW(LpBruteForceOracle(0.9, 1.0, 0.1, 0.9, 0.5, 1e-3), DomainError);
}

TEST(LpTest, ClosedFormMatchesBruteForce) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double step = 1e-2;
  for (int i = 0; i < 200; ++i) {
    double eta_thres = 0.95 * u(rng);
    double eta_r = eta_thres + (1.0 - eta_thres) * u(rng);
    double eps_thres = u(rng), eta = u(rng), nu = 0.5 * u(rng);
    double closed = LpErrorLowerBound(eta_r, eta_thres, eps_thres, eta, nu);
    double grid = LpBruteForceOracle(eta_r, eta_thres, eps_thres, eta, nu, step);
    EXPECT_GE(grid, closed - 1e-12);
    EXPECT_LE(grid - closed, step * eps_thres * eta + 1e-12);
  }
}

TEST(EpsLowerBoundTest, Examples) {
  EXPECT_NEAR(EpsLowerBound(0.9, 0.5, 0.1, 0.8, 30), 0.05999999994412064552, 1e-17);
  EXPECT_DOUBLE_EQ(EpsLowerBound(1.0, 0.0, 0.37, 1.0, kInf), 0.37);
  EXPECT_EQ(EpsLowerBound(0.6, 0.5, 0.1, 0.1, kInf), 0.0);
}

TEST(EpsLowerBoundTest, PartitionParamsUseAlphaFraction) {
  PartitionParams p;
  p.eta = 0.9;
  p.eta_thres = 0.5;
  p.eps_thres = 0.1;
  p.nu = 0.45;
  p.alpha_frac = 30.0 / 1024.0;
  EXPECT_DOUBLE_EQ(EpsLowerBound(p, 5), EpsLowerBound(0.9, 0.5, 0.1, 0.45, 30.0));
  p.eta_thres = 0.95;
  EXPECT_THROW(EpsLowerBound(p, 5), DomainError);
  p.eta_thres = 0.5;
  p.nu = 0.6;
  EXPECT_THROW(EpsLowerBound(p, 5), DomainError);
}

TEST(EpsLowerBoundTest, AffineInEpsThres) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    double eta = 0.5 + 0.5 * u(rng), eta_thres = 0.4 * u(rng), nu = 0.3 + 0.2 * u(rng);
    double alpha = 1.0 + 40.0 * u(rng);
    double a = EpsLowerBound(eta, eta_thres, 0.1, nu, alpha);
    double b = EpsLowerBound(eta, eta_thres, 0.2, nu, alpha);
    double c = EpsLowerBound(eta, eta_thres, 0.3, nu, alpha);
    EXPECT_NEAR(c - b, b - a, 1e-15);
    EXPECT_NEAR(EpsLowerBound(eta, eta_thres, 0.0, nu, alpha), 0.0, 1e-15);
  }
}

TEST(MonotonicityTest, BoundsNondecreasingInEpsArguments) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> bits(1, 128);
  const double h = 1e-3;
  for (int i = 0; i < 100; ++i) {
    double e1 = 0.3 * u(rng), e2 = 0.3 * u(rng), e3 = 0.3 * u(rng);
    int l = bits(rng);
    for (auto v : {Thm1Variant::kLiteral, Thm1Variant::kExponential}) {
      double base = Thm1Bound(e1, l, e2, v).value;
      EXPECT_LE(base, Thm1Bound(e1 + h, l, e2, v).value);
      EXPECT_LE(base, Thm1Bound(e1, l, e2 + h, v).value);
    }
    SecurityParams p = Sec(e1, e2, l, e3 / 64);
    p.eps_rob_qkd = e2;
    p.eps_rob_qpv = e3 / 64;
    double sec = Protocol3Security(p).value, rob = Protocol3Robustness(p).value;
    for (double SecurityParams::*field : {&SecurityParams::eps_qkd, &SecurityParams::eps_qpv,
                                          &SecurityParams::delta_hash, &SecurityParams::eps_rob_qkd,
                                          &SecurityParams::eps_rob_qpv}) {
      SecurityParams q = p;
      q.*field += h;
      EXPECT_LE(sec, Protocol3Security(q).value);
      EXPECT_LE(rob, Protocol3Robustness(q).value);
    }
    EXPECT_LE(Protocol2Soundness(l, e1 / 64, e2).value, Protocol2Soundness(l, e1 / 64 + h, e2).value);
    EXPECT_LE(Protocol2Soundness(l, e1 / 64, e2).value, Protocol2Soundness(l, e1 / 64, e2 + h).value);
    EXPECT_LE(Protocol2Robustness(l, e1 / 64).value, Protocol2Robustness(l, e1 / 64 + h).value);
    double eta_thres = 0.5 * u(rng), eta = eta_thres + (1 - eta_thres) * u(rng), nu = 0.5 * u(rng);
    EXPECT_LE(EpsLowerBound(eta, eta_thres, e1, nu, 20), EpsLowerBound(eta, eta_thres, e1 + h, nu, 20));
    EXPECT_LE(LpErrorLowerBound(eta, eta_thres, e1, eta, nu),
              LpErrorLowerBound(eta, eta_thres, e1 + h, eta, nu));
  }
}

TEST(DelegationTest, Protocol2BoundsForwardToMsgAuth) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 0.01);
  std::uniform_int_distribution<int> bits(1, 200);
  for (int i = 0; i < 3; ++i) {
    int l = bits(rng);
    double e = u(rng), d = u(rng);
    EXPECT_EQ(Protocol2Soundness(l, e, d).raw, msgauth::SoundnessBoundMsgAuth(l, e, d).raw);
    EXPECT_EQ(Protocol2Robustness(l, e).raw, msgauth::RobustnessBoundMsgAuth(l, e).raw);
  }
}

TEST(ManifestTest, ListsEveryTheorem) {
  std::set<std::string> ids;
  for (const auto& e : TheoremManifest()) {
    EXPECT_FALSE(e.function.empty());
    EXPECT_FALSE(e.statement.empty());
    EXPECT_TRUE(ids.insert(e.id).second) << "duplicate " << e.id;
  }
  for (const char* id : {"thm1", "thm2-soundness", "thm2-robustness", "thm3-security",
                         "thm3-robustness", "net-sizes", "classical-rounding", "nu", "lp-error",
                         "eps-lb", "fig2"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
}

DeltaTildeTable UniformTable(double value) {
  std::vector<DeltaTableEntry> entries;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) entries.push_back({0.05 * i, 0.1 * j, value});
  }
  return DeltaTildeTable(DeltaTableMeta{0, 0.0, "test"}, entries);
}

TEST(OptimizerTest, InfeasibleTableIsFlagged) {
  ThresholdOptimum r = OptimizeThresholds(0.8, 2.0, 1e-10, UniformTable(1e-9));
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.best_eps_lb, 0.0);
  EXPECT_FALSE(r.eta_thres.has_value());
  EXPECT_FALSE(r.eps_thres.has_value());
  ThresholdOptimum z = OptimizeThresholds(0.8, 10.0, 1e-10, UniformTable(0.0));
  EXPECT_FALSE(z.feasible);
}

TEST(OptimizerTest, ConstantTableHasClosedFormOptimum) {
  // Constant delta_tilde fixes nu, so the bound peaks at the largest eps_thres.
  DeltaTildeTable t = UniformTable(0.5);
  double nu = NuValue(10.0, 0.5, 1e-10);
  ThresholdOptimum r = OptimizeThresholds(0.9, 10.0, 1e-10, t);
  ASSERT_TRUE(r.feasible);
  double expect = 0.0;
  for (int i = 0; i <= 90; ++i) {
    expect = std::max(expect, EpsLowerBound(0.9, 0.01 * i, 0.5, nu, kInf));
  }
  EXPECT_NEAR(r.best_eps_lb, expect, 1e-12);
  EXPECT_NEAR(*r.eps_thres, 0.5, 1e-12);
  EXPECT_NEAR(r.nu, nu, 1e-15);
}

TEST(OptimizerTest, OffGridEtaIsCoverageError) {
  std::vector<DeltaTableEntry> entries;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 2; ++j) entries.push_back({0.05 * i, 0.1 * j, 0.5});
  }
  DeltaTildeTable t(DeltaTableMeta{0, 0.0, "test"}, entries);
  EXPECT_THROW(OptimizeThresholds(0.5, 10.0, 1e-10, t), CoverageError);
}

TEST(OptimizerTest, StubCurvesAreMonotoneAndOrderedInQ0) {
  DeltaTildeTable t = LoadDeltaTable(QPVKEX_DATA_DIR "/delta_tilde_stub.json");
  double prev10 = 0.0, prev15 = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double eta = 0.05 * i;
    double lb10 = OptimizeThresholds(eta, 10.0, 1e-10, t).best_eps_lb;
    double lb15 = OptimizeThresholds(eta, 15.0, 1e-10, t).best_eps_lb;
    EXPECT_GE(lb10, prev10) << "eta=" << eta;
    EXPECT_GE(lb15, prev15) << "eta=" << eta;
    EXPECT_GE(lb15, lb10) << "eta=" << eta;
    prev10 = lb10;
    prev15 = lb15;
  }
  EXPECT_GT(prev10, 0.0);
}

}  // namespace
}  // namespace qpvkex::bounds
