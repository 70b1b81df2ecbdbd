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

#include <cmath>
#include <limits>
#include <optional>

#include "qpvkex/errors.h"
#include "qpvkex/msg_auth.h"
#include "qpvkex/quantum.h"

namespace qpvkex::bounds {

namespace {

void RequireProbability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1]");
}

double HalfCeil(int bits) { return static_cast<double>((bits + 1) / 2); }

}  // namespace

BoundValue Thm1Bound(double eps_qkd, int tag_bits, double eps_qpv, Thm1Variant variant) {
  if (tag_bits < 1) throw DomainError("l_T must be at least 1");
  RequireProbability(eps_qkd, "eps_qkd");
  RequireProbability(eps_qpv, "eps_qpv");
  double hash_term = variant == Thm1Variant::kLiteral ? 1.0 / tag_bits
                                                           : std::ldexp(1.0, -tag_bits);
  return MakeBound(eps_qkd + hash_term + eps_qpv);
}

void SecurityParams::Validate() const {
  RequireProbability(eps_qkd, "eps_qkd");
  RequireProbability(eps_qpv, "eps_qpv");
  RequireProbability(eps_rob_qkd, "eps_rob_qkd");
  RequireProbability(eps_rob_qpv, "eps_rob_qpv");
  RequireProbability(delta_hash, "delta");
  if (tag_bits < 0 || key_bits < 0 || code_bits < 0) {
    throw DomainError("bit counts must be nonnegative");
  }
}

BoundValue Protocol3Security(const SecurityParams& p) {
  p.Validate();
  return MakeBound(2 * p.eps_qkd + 2 * p.delta_hash + (4 * HalfCeil(p.key_bits) + 2) * p.eps_qpv);
}

BoundValue Protocol3Robustness(const SecurityParams& p) {
  p.Validate();
  return MakeBound(p.eps_rob_qkd + (HalfCeil(p.key_bits) + 3) * p.eps_rob_qpv);
}

BoundValue Protocol2Soundness(int key_bits, double eps_qpv, double delta) {
  return msgauth::SoundnessBoundMsgAuth(key_bits, eps_qpv, delta);
}

BoundValue Protocol2Robustness(int key_bits, double eps_rob) {
  return msgauth::RobustnessBoundMsgAuth(key_bits, eps_rob);
}

NetSizes ComputeNetSizes(int qubits, double delta) {
  if (!(delta > 0.0)) throw DomainError("net resolution delta must be positive");
  if (qubits < 0) throw DomainError("qubit count must be nonnegative");
  double l = std::log2(1.0 + 2.0 / delta);
  return NetSizes{std::ldexp(l, 4 * qubits + 1), std::ldexp(l, 6 * qubits + 7),
                  std::ldexp(l, 6 * qubits + 4)};
}

std::uint64_t RoundingLogFactor(double delta_tilde) {
  if (!(delta_tilde > 0.0 && delta_tilde <= 1.0)) {
    throw DomainError("delta_tilde must lie in (0,1]");
  }
  // The slack keeps exact powers of two from rounding up a whole step.
  double c = std::ceil(std::log2(1.0 + 12.0 / delta_tilde) - 1e-12);
  return static_cast<std::uint64_t>(c) + 1;
}

std::uint64_t ClassicalRoundingSize(int qubits, double delta_tilde) {
  if (qubits < 0) throw DomainError("qubit count must be nonnegative");
  std::uint64_t factor = RoundingLogFactor(delta_tilde);
  int shift = 6 * qubits + 7;
  if (shift >= 64 || (factor >> (64 - shift)) != 0) {
    throw DomainError("classical rounding size exceeds 64 bits");
  }
  return factor << shift;
}

double NuArgument(double q0, double delta_tilde, double alpha_frac) {
  if (std::isnan(q0)) throw DomainError("q0 is NaN");
  if (!(alpha_frac >= 0.0)) throw DomainError("alpha fraction must be nonnegative");
  double factor = static_cast<double>(RoundingLogFactor(delta_tilde));
  return 1.0 - std::exp2(9.0 - 6.0 * q0) * factor - alpha_frac;
}

double NuValue(double q0, double delta_tilde, double alpha_frac) {
  double arg = NuArgument(q0, delta_tilde, alpha_frac);
  if (arg < 0.0) throw InfeasibleError("nu argument is negative");
  return quantum::BinaryEntropyInv(std::min(arg, 1.0));
}

double NuValueAlphaOver2n(double q0, double delta_tilde, double alpha_over_2n, int n) {
  if (n < 0) throw DomainError("n must be nonnegative");
  return NuValue(q0, delta_tilde, std::ldexp(alpha_over_2n, -n));
}

double LpErrorLowerBound(double eta_r, double eta_thres, double eps_thres, double eta,
                         double nu) {
  if (!(eta_thres < 1.0)) throw DomainError("eta_thres must be below 1");
  double bracket = (eta_r - eta_thres) / (1.0 - eta_thres) - 1.0 + nu;
  return std::max(eps_thres * eta * bracket, 0.0);
}

double LpBruteForceOracle(double eta_r, double eta_thres, double eps_thres, double eta,
                          double nu, double grid_step) {
  if (!(eta_thres < 1.0)) throw DomainError("eta_thres must be below 1");
  if (!(grid_step > 0.0 && grid_step <= 0.5)) throw DomainError("grid step must lie in (0,0.5]");
  const long steps = std::lround(std::ceil(1.0 / grid_step));
  const double h = 1.0 / static_cast<double>(steps);
  const double l1_max = 1.0 - nu;
  const double cover = (eta_r - eta_thres) / (1.0 - eta_thres);
  constexpr double kTol = 1e-12;
  // l1 runs down from its cap 1 - nu; l3 and l4 sit on multiples of h, and l3
  // may also take the simplex face value 1 - l1.
  double best = -1.0;
  for (long a = 0; l1_max - a * h >= -kTol; ++a) {
    const double l1 = std::max(l1_max - a * h, 0.0);
    const double l3_max = 1.0 - l1;
    for (long c = 0;; ++c) {
      const double l3 = std::min(c * h, l3_max);
      if (best >= 0.0 && l3 >= best) break;
      if (l1 + l3 >= cover - kTol) {
        // l4 only grows the objective; stop at the first value that cannot win.
        for (long d = 0; l3 + d * h <= l3_max + kTol; ++d) {
          double objective = l3 + d * h;
          if (best >= 0.0 && objective >= best) break;
          best = objective;
        }
      }
      if (l3 >= l3_max) break;
    }
  }
  if (best < 0.0) throw InfeasibleError("partition LP has no feasible grid point");
  return best * eps_thres * eta;
}

void PartitionParams::Validate() const {
  RequireProbability(eta, "eta");
  RequireProbability(eta_thres, "eta_thres");
  if (eta_thres > eta) throw DomainError("eta_thres must not exceed eta");
  if (!(nu >= 0.0 && nu <= 0.5)) throw DomainError("nu must lie in [0,1/2]");
  if (!(eps_thres >= 0.0)) throw DomainError("eps_thres must be nonnegative");
  if (!(delta_tilde > 0.0 && delta_tilde <= 1.0)) throw DomainError("delta_tilde must lie in (0,1]");
  if (!(alpha_frac >= 0.0)) throw DomainError("alpha fraction must be nonnegative");
  if (qubits < 0) throw DomainError("qubit count must be nonnegative");
}

double EpsLowerBound(double eta, double eta_thres, double eps_thres, double nu, double alpha) {
  if (!(eta_thres < 1.0)) throw DomainError("eta_thres must be below 1");
  if (std::isnan(alpha) || alpha < 0.0) throw DomainError("alpha must be nonnegative");
  double concentration = std::isinf(alpha) ? 1.0 : -std::expm1(-alpha * std::log(2.0));
  double bracket = (eta - eta_thres) / (1.0 - eta_thres) - 1.0 + nu;
  return std::max(concentration * bracket * eps_thres, 0.0);
}

double EpsLowerBound(const PartitionParams& p, int n) {
  p.Validate();
  if (n < 0) throw DomainError("n must be nonnegative");
  return EpsLowerBound(p.eta, p.eta_thres, p.eps_thres, p.nu, std::ldexp(p.alpha_frac, 2 * n));
}

ThresholdOptimum OptimizeThresholds(double eta, double q0, double alpha_frac,
                                    const DeltaTildeTable& table, const ThresholdGrid& grid) {
  RequireProbability(eta, "eta");
  if (!(grid.eta_thres_step > 0.0)) throw DomainError("eta_thres step must be positive");
  if (!(grid.eps_thres_min > 0.0 && grid.eps_thres_max >= grid.eps_thres_min) ||
      grid.eps_thres_points < 1) {
    throw DomainError("invalid eps_thres grid");
  }
  const int m = grid.eps_thres_points;
  const double log_lo = std::log(grid.eps_thres_min);
  const double log_hi = std::log(grid.eps_thres_max);
  std::vector<double> log_eps;
  for (int k = 0; k < m; ++k) {
    double t = m == 1 ? 0.0 : static_cast<double>(k) / (m - 1);
    log_eps.push_back(log_lo + t * (log_hi - log_lo));
  }

  ThresholdOptimum best;
  auto consider = [&](double eta_thres, double eps_thres) -> std::optional<double> {
    double delta_tilde = table.Lookup(eps_thres * eta, eta_thres);
    if (!(delta_tilde > 0.0)) return std::nullopt;
    double nu;
    try {
      nu = NuValue(q0, std::min(delta_tilde, 1.0), alpha_frac);
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
    double value = EpsLowerBound(eta, eta_thres, eps_thres, nu, grid.alpha);
    if (!best.feasible || value > best.best_eps_lb) {
      best.feasible = true;
      best.best_eps_lb = value;
      best.eta_thres = eta_thres;
      best.eps_thres = eps_thres;
      best.nu = nu;
      best.delta_tilde = delta_tilde;
    }
    return value;
  };

  const long eta_steps = static_cast<long>(std::floor(eta / grid.eta_thres_step + 1e-9));
  for (long i = 0; i <= eta_steps; ++i) {
    double eta_thres = std::min(static_cast<double>(i) * grid.eta_thres_step, eta);
    if (eta_thres >= 1.0) continue;
    int arg = -1;
    double arg_value = 0.0;
    for (int k = 0; k < m; ++k) {
      double eps = k == 0 ? grid.eps_thres_min
                   : k == m - 1 ? grid.eps_thres_max
                                : std::exp(log_eps[static_cast<std::size_t>(k)]);
      auto v = consider(eta_thres, eps);
      if (v && (arg < 0 || *v > arg_value)) {
        arg = k;
        arg_value = *v;
      }
    }
    if (!grid.refine || arg < 0 || m < 2) continue;
    // Golden-section search in log eps_thres around the best grid point.
    // Infeasible points score -inf, so the search also finds the
    // feasibility edge when the bound peaks there.
    auto score = [&](double log_e) {
      auto v = consider(eta_thres, std::exp(log_e));
      return v ? *v : -std::numeric_limits<double>::infinity();
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = log_eps[static_cast<std::size_t>(std::max(arg - 1, 0))];
    double b = log_eps[static_cast<std::size_t>(std::min(arg + 1, m - 1))];
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = score(x1), f2 = score(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = score(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = score(x2);
      }
    }
  }
  return best;
}

const std::vector<TheoremEntry>& TheoremManifest() {
  static const std::vector<TheoremEntry> manifest = {
      {"thm1", "Thm1Bound", "Protocol 1 security: eps_qkd + 1/l_T + eps_qpv (or 2^-l_T)"},
      {"thm2-soundness", "Protocol2Soundness", "delta + 2 ceil(l_K/2) eps_qpv"},
      {"thm2-robustness", "Protocol2Robustness", "(ceil(l_K/2) + 2) eps_rob"},
      {"thm3-security", "Protocol3Security",
       "2 eps_qkd + 2 delta + (4 ceil(l_K/2) + 2) eps_qpv"},
      {"thm3-robustness", "Protocol3Robustness", "eps_rob_qkd + (ceil(l_K/2) + 3) eps_rob_qpv"},
      {"net-sizes", "ComputeNetSizes",
       "log2|N_S|, log2|N_A|, log2|N_B| <= 2^(4q+1), 2^(6q+7), 2^(6q+4) times log2(1 + 2/delta)"},
      {"classical-rounding", "ClassicalRoundingSize",
       "k = 2^(6q+7) (ceil(log2(1 + 12/delta_tilde)) + 1)"},
      {"nu", "NuValue",
       "nu = h^-1(1 - 2^(9-6 q0) (ceil(log2(1 + 12/delta_tilde)) + 1) - alpha/2^(2n))"},
      {"lp-error", "LpErrorLowerBound",
       "max{eps_thres eta [(eta_r - eta_thres)/(1 - eta_thres) - 1 + nu], 0}"},
      {"eps-lb", "EpsLowerBound",
       "(1 - 2^-alpha)((eta - eta_thres)/(1 - eta_thres) - 1 + nu) eps_thres"},
      {"fig2", "OptimizeThresholds", "max over (eta_thres, eps_thres) of eps-lb"},
  };
  return manifest;
}

}  // namespace qpvkex::bounds
