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

#include "qpvkex/quantum.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpvkex/errors.h"

namespace qpvkex::quantum {

namespace {

constexpr double kTol = 1e-12;

}  // namespace

PureState::PureState(Complex amp0, Complex amp1) : amp0_(amp0), amp1_(amp1) {
  double norm = std::norm(amp0) + std::norm(amp1);
  if (!(std::abs(norm - 1.0) <= kTol)) {
    throw ValidationError("state is not normalized");
  }
}

BasisAngle::BasisAngle(double angle) : angle_(angle) {
  if (!(angle >= 0.0 && angle < std::numbers::pi)) {
    throw ValidationError("basis angle must lie in [0, pi)");
  }
}

BasisAngle BasisAngle::X() { return BasisAngle(std::numbers::pi / 2); }

DensityMatrix2::DensityMatrix2(
    const std::array<std::array<Complex, 2>, 2>& m)
    : m_(m) {
  if (std::abs(m[0][0].imag()) > kTol || std::abs(m[1][1].imag()) > kTol ||
      std::abs(m[0][1] - std::conj(m[1][0])) > kTol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  double a = m[0][0].real();
  double d = m[1][1].real();
  if (std::abs(a + d - 1.0) > kTol) {
    throw ValidationError("density matrix trace is not 1");
  }
  // Smaller eigenvalue of a Hermitian 2x2 matrix.
  double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m[0][1]));
  if (0.5 * (a + d) - half_gap < -kTol) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

DensityMatrix2 DensityMatrix2::FromPure(const PureState& psi) {
  const Complex& a = psi.amp0();
  const Complex& b = psi.amp1();
  return DensityMatrix2({{{a * std::conj(a), a * std::conj(b)},
                          {b * std::conj(a), b * std::conj(b)}}});
}

PureState Bb84State(int basis, int value) {
  if ((basis != 0 && basis != 1) || (value != 0 && value != 1)) {
    throw ValidationError("BB84 basis and value must be bits");
  }
  if (basis == 0) {
    return value == 0 ? PureState(1.0, 0.0) : PureState(0.0, 1.0);
  }
  const double r = std::numbers::sqrt2 / 2;
  return PureState(r, value == 0 ? r : -r);
}

PureState BasisVector(BasisAngle basis, int outcome) {
  double c = std::cos(basis.angle() / 2);
  double s = std::sin(basis.angle() / 2);
  if (outcome == 0) return PureState(c, s);
  if (outcome == 1) return PureState(-s, c);
  throw ValidationError("measurement outcome must be 0 or 1");
}

double OutcomeProbability(const PureState& state, BasisAngle basis,
                          int outcome) {
  PureState v = BasisVector(basis, outcome);
  // The basis vectors are real, so the overlap needs no conjugation.
  Complex overlap = v.amp0().real() * state.amp0() +
                    v.amp1().real() * state.amp1();
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double TraceDistance(const DensityMatrix2& rho, const DensityMatrix2& sigma) {
  // rho - sigma is traceless Hermitian with eigenvalues +-sqrt(a^2 + |b|^2).
  double a = rho(0, 0).real() - sigma(0, 0).real();
  Complex b = rho(0, 1) - sigma(0, 1);
  return std::clamp(std::sqrt(a * a + std::norm(b)), 0.0, 1.0);
}

double TraceDistancePure(const PureState& psi0, const PureState& psi1) {
  Complex overlap = std::conj(psi0.amp0()) * psi1.amp0() +
                    std::conj(psi0.amp1()) * psi1.amp1();
  return std::sqrt(std::clamp(1.0 - std::norm(overlap), 0.0, 1.0));
}

double BinaryEntropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary entropy needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double BinaryEntropyInv(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("inverse binary entropy needs y in [0,1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (BinaryEntropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(BinaryEntropy(lo) - y) <= std::abs(BinaryEntropy(hi) - y) ? lo
                                                                            : hi;
}

}  // namespace qpvkex::quantum
