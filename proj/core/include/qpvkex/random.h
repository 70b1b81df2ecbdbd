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

#ifndef QPVKEX_RANDOM_H_
#define QPVKEX_RANDOM_H_

#include <cstdint>
#include <random>

#include "qpvkex/bits.h"

namespace qpvkex {

// All stochastic code draws from this engine. The helpers below avoid the
// standard distributions, whose output is implementation-defined, so that a
// seed reproduces the same transcript with any standard library.
using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Independent stream seed for trial `index` of a batch seeded with `base`.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

// Uniform double in [0, 1) with 53 random bits.
double Uniform01(Rng& rng);

// Uniform integer in [0, bound). bound must be nonzero.
std::uint64_t UniformInt(Rng& rng, std::uint64_t bound);

bool Bernoulli(Rng& rng, double p);

BitString RandomBits(Rng& rng, std::size_t size);

}  // namespace qpvkex

#endif  // QPVKEX_RANDOM_H_
