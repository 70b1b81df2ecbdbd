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

#include "qpvkex/gf2.h"

#include <array>

#include "qpvkex/errors.h"

namespace qpvkex::auth {

namespace {

// Index w-1. Every entry p gives the irreducible x^w + p(x).
constexpr std::array<std::uint64_t, 64> kLowBits = {
    0x1,      0x3,        0x3,      0x3,       0x5,       0x3,        0x3,      0x87,
    0x3,      0x9,        0x5,      0x9,       0x27,      0x21,       0x3,      0x47,
    0x9,      0x9,        0x27,     0x9,       0x5,       0x3,        0x21,     0x87,
    0x9,      0x47,       0x27,     0x3,       0x5,       0x3,        0x9,      0x400007,
    0x401,    0x81,       0x5,      0x201,     0x207,     0x87,       0x11,     0x8000007,
    0x9,      0x81,       0x1007,   0x21,      0x20007,   0x3,        0x21,     0x20007,
    0x201,    0x207,      0x10000007, 0x9,     0x47,      0x201,      0x81,     0x200007,
    0x11,     0x80001,    0x1000007, 0x3,      0x27,      0x20000001, 0x3,      0x807,
};

}  // namespace

std::uint64_t IrreducibleLowBits(int width) {
  if (width < 1 || width > 64) throw ValidationError("field width must lie in [1, 64]");
  return kLowBits[static_cast<std::size_t>(width - 1)];
}

Gf2Field::Gf2Field(int width)
    : width_(width),
      mask_(width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1),
      low_(IrreducibleLowBits(width)) {}

std::uint64_t Gf2Field::Mul(std::uint64_t a, std::uint64_t b) const {
  a &= mask_;
  b &= mask_;
  const std::uint64_t top = std::uint64_t{1} << (width_ - 1);
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    bool carry = (a & top) != 0;
    a = (a << 1) & mask_;
    if (carry) a ^= low_;
  }
  return r;
}

std::uint64_t Gf2Field::Pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 & mask_;
  if (width_ == 1) result = 1;
  std::uint64_t base = a & mask_;
  while (e != 0) {
    if (e & 1) result = Mul(result, base);
    base = Mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t Gf2Field::Inv(std::uint64_t a) const {
  a &= mask_;
  if (a == 0) throw DomainError("zero has no inverse");
  // a^(2^w - 2) = prod_{i=1}^{w-1} a^(2^i).
  std::uint64_t result = 1;
  std::uint64_t sq = a;
  for (int i = 1; i < width_; ++i) {
    sq = Mul(sq, sq);
    result = Mul(result, sq);
  }
  return result;
}

}  // namespace qpvkex::auth
