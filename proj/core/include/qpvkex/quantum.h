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

#ifndef QPVKEX_QUANTUM_H_
#define QPVKEX_QUANTUM_H_

#include <array>
#include <complex>

namespace qpvkex::quantum {

using Complex = std::complex<double>;

// Normalized single-qubit state amp0|0> + amp1|1>.
class PureState {
 public:
  // Throws ValidationError if |amp0|^2 + |amp1|^2 differs from 1 by > 1e-12.
  PureState(Complex amp0, Complex amp1);

  const Complex& amp0() const { return amp0_; }
  const Complex& amp1() const { return amp1_; }

 private:
  Complex amp0_;
  Complex amp1_;
};

// Measurement basis in the X-Z plane. The outcome-0 vector for angle phi is
// cos(phi/2)|0> + sin(phi/2)|1>, so 0 is the Z basis and pi/2 is X.
class BasisAngle {
 public:
  // Throws ValidationError unless angle lies in [0, pi).
  explicit BasisAngle(double angle);
  double angle() const { return angle_; }

  static BasisAngle Z() { return BasisAngle(0.0); }
  static BasisAngle X();

 private:
  double angle_;
};

// 2x2 density matrix, row-major.
class DensityMatrix2 {
 public:
  // Validates Hermiticity, unit trace and positivity, each within 1e-12.
  explicit DensityMatrix2(const std::array<std::array<Complex, 2>, 2>& m);
  static DensityMatrix2 FromPure(const PureState& psi);

  const Complex& operator()(int r, int c) const { return m_[r][c]; }

 private:
  std::array<std::array<Complex, 2>, 2> m_;
};

// basis 0 -> |0>,|1>; basis 1 -> |+>,|->. Both arguments must be 0 or 1.
PureState Bb84State(int basis, int value);

// State index s in [0,4) as used by the multi-basis protocol:
// s = 2 * basis + value.
inline PureState Bb84StateByIndex(int s) { return Bb84State(s / 2, s % 2); }

// Born-rule probability of `outcome` (0 or 1) when measuring in `basis`.
double OutcomeProbability(const PureState& state, BasisAngle basis, int outcome);

// Post-measurement state for a given basis and outcome.
PureState BasisVector(BasisAngle basis, int outcome);

// Half the trace norm of rho - sigma. Inputs are validated on construction.
double TraceDistance(const DensityMatrix2& rho, const DensityMatrix2& sigma);

// sqrt(1 - |<psi0|psi1>|^2).
double TraceDistancePure(const PureState& psi0, const PureState& psi1);

// Throws DomainError outside [0,1]; h(0) = h(1) = 0.
double BinaryEntropy(double x);

// Inverse on [0, 1/2] by bisection. Throws DomainError outside [0,1].
double BinaryEntropyInv(double y);

}  // namespace qpvkex::quantum

#endif  // QPVKEX_QUANTUM_H_
