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

#ifndef QPVKEX_BOUNDS_H_
#define QPVKEX_BOUNDS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qpvkex/delta_table.h"
#include "qpvkex/probability.h"

namespace qpvkex::bounds {

enum class Thm1Variant { kLiteral, kExponential };

// eps_qkd + 1/l_T + eps_qpv (literal) or eps_qkd + 2^-l_T + eps_qpv.
BoundValue Thm1Bound(double eps_qkd, int tag_bits, double eps_qpv, Thm1Variant variant);

struct SecurityParams {
  double eps_qkd = 0.0;
  double eps_qpv = 0.0;
  double eps_rob_qkd = 0.0;
  double eps_rob_qpv = 0.0;
  double delta_hash = 0.0;
  int tag_bits = 0;
  int key_bits = 0;
  int code_bits = 0;

  void Validate() const;
};

// 2 eps_qkd + 2 delta + (4 ceil(l_K/2) + 2) eps_qpv.
BoundValue Protocol3Security(const SecurityParams& p);
// eps_rob_qkd + (ceil(l_K/2) + 3) eps_rob_qpv.
BoundValue Protocol3Robustness(const SecurityParams& p);

// Re-exported message-authentication bounds.
BoundValue Protocol2Soundness(int key_bits, double eps_qpv, double delta);
BoundValue Protocol2Robustness(int key_bits, double eps_rob);

struct NetSizes {
  double log2_ns = 0.0;  // 2^(4q+1) log2(1 + 2/delta)
  double log2_na = 0.0;  // 2^(6q+7) log2(1 + 2/delta)
  double log2_nb = 0.0;  // 2^(6q+4) log2(1 + 2/delta)
};
NetSizes ComputeNetSizes(int qubits, double delta);

// ceil(log2(1 + 12/delta_tilde)) + 1.
std::uint64_t RoundingLogFactor(double delta_tilde);
// k = 2^(6q+7) (ceil(log2(1 + 12/delta_tilde)) + 1). Throws DomainError on
// overflow of 64 bits.
std::uint64_t ClassicalRoundingSize(int qubits, double delta_tilde);

// Argument of h^-1 in the nu formula:
// 1 - 2^(9 - 6 q0) (ceil(log2(1 + 12/delta_tilde)) + 1) - alpha_frac.
double NuArgument(double q0, double delta_tilde, double alpha_frac);
// h^-1(NuArgument). Throws InfeasibleError if the argument is negative.
// alpha_frac is alpha / 2^(2n).
double NuValue(double q0, double delta_tilde, double alpha_frac);
// Same with alpha supplied as alpha / 2^n for a stated n.
double NuValueAlphaOver2n(double q0, double delta_tilde, double alpha_over_2n, int n);

// max{eps_thres eta [(eta_r - eta_thres)/(1 - eta_thres) - 1 + nu], 0}.
double LpErrorLowerBound(double eta_r, double eta_thres, double eps_thres, double eta, double nu);
// Grid minimisation of (l3 + l4) eps_thres eta over the feasible simplex.
double LpBruteForceOracle(double eta_r, double eta_thres, double eps_thres, double eta,
                          double nu, double grid_step);

struct PartitionParams {
  double eta = 0.0;
  double eta_thres = 0.0;
  double eps_thres = 0.0;
  double nu = 0.0;
  int qubits = 0;
  double q0 = 0.0;
  double alpha_frac = 0.0;
  double delta_tilde = 1.0;

  void Validate() const;
};

// (1 - 2^-alpha)((eta - eta_thres)/(1 - eta_thres) - 1 + nu) eps_thres,
// floored at 0. alpha may be +infinity.
double EpsLowerBound(double eta, double eta_thres, double eps_thres, double nu, double alpha);
// As above with alpha = alpha_frac * 2^(2n).
double EpsLowerBound(const PartitionParams& p, int n);

struct ThresholdGrid {
  double eta_thres_step = 0.01;
  double eps_thres_min = 1e-4;
  double eps_thres_max = 0.5;
  int eps_thres_points = 50;
  // Entropy-accumulation exponent; infinity drops the 1 - 2^-alpha factor.
  double alpha = std::numeric_limits<double>::infinity();
  // Golden-section refinement of eps_thres around each row's best grid point.
  bool refine = true;
};

struct ThresholdOptimum {
  double best_eps_lb = 0.0;
  bool feasible = false;  // false: every grid point was infeasible
  std::optional<double> eta_thres;
  std::optional<double> eps_thres;
  double nu = 0.0;
  double delta_tilde = 0.0;
};

// Grid search for the partition thresholds maximising EpsLowerBound, with
// nu = NuValue(q0, table(eps_thres * eta, eta_thres), alpha_frac). Each
// eta_thres row is refined in eps_thres unless grid.refine is off.
ThresholdOptimum OptimizeThresholds(double eta, double q0, double alpha_frac,
                                    const DeltaTildeTable& table, const ThresholdGrid& grid = {});

struct TheoremEntry {
  std::string id;
  std::string function;
  std::string statement;
};
const std::vector<TheoremEntry>& TheoremManifest();

}  // namespace qpvkex::bounds

#endif  // QPVKEX_BOUNDS_H_
