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

#ifndef QPVKEX_GF2_H_
#define QPVKEX_GF2_H_

#include <cstdint>

namespace qpvkex::auth {

// Arithmetic in GF(2^w) for 1 <= w <= 64. Elements are the low w bits of a
// uint64, coefficient of x^i at bit i.
class Gf2Field {
 public:
  // Throws ValidationError for widths outside [1, 64].
  explicit Gf2Field(int width);

  int width() const { return width_; }
  std::uint64_t mask() const { return mask_; }
  // Reduction polynomial without its leading x^w term.
  std::uint64_t modulus_low() const { return low_; }

  static std::uint64_t Add(std::uint64_t a, std::uint64_t b) { return a ^ b; }
  std::uint64_t Mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t Pow(std::uint64_t a, std::uint64_t e) const;
  // Throws DomainError for zero.
  std::uint64_t Inv(std::uint64_t a) const;

 private:
  int width_;
  std::uint64_t mask_;
  std::uint64_t low_;
};

// Low bits of the fixed irreducible polynomial used for width w.
std::uint64_t IrreducibleLowBits(int width);

}  // namespace qpvkex::auth

#endif  // QPVKEX_GF2_H_
