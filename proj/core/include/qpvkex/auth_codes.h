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

#ifndef QPVKEX_AUTH_CODES_H_
#define QPVKEX_AUTH_CODES_H_

#include <cstdint>
#include <string>

#include "qpvkex/bits.h"

namespace qpvkex::auth {

// Parameters of the polynomial-evaluation hash family over GF(2^tag_bits).
struct HashFamilyParams {
  int message_bits = 0;  // n, maximum message length
  int tag_bits = 0;      // l_T, at most 64
  int key_bits = 0;      // l_K = 2 floor(l_T + log2(n / l_T) + 1)
  double delta = 0.0;    // 2^(1 - l_T)

  // Number of message blocks of an n-bit message.
  int Blocks() const;
  // Collision bound this construction actually guarantees for two distinct
  // n-bit messages: Blocks() * 2^-l_T. It equals `delta` when n <= 2 l_T.
  double EffectiveDelta() const;
};

// Throws ValidationError unless n >= l_T >= 1 and l_T <= 64.
HashFamilyParams MakeHashFamilyParams(int message_bits, int tag_bits);

// tag = k2 + sum_i m_i k1^i over GF(2^l_T). k1 is the first l_T key bits and
// k2 the next l_T; further key bits are not read. The message is extended
// with a single 1 bit and zeros to a multiple of l_T and cut into blocks
// m_1, m_2, ... from the left. Throws ValidationError when the key length
// differs from l_K or the message exceeds n bits.
BitString HashTag(const HashFamilyParams& params, const BitString& key,
                  const BitString& message);

// Constant-weight code of length 2 l_C + 2 carrying l_K key bits.
struct CodecParams {
  int key_bits = 0;         // l_K
  int half_length = 0;      // l_C, smallest l with C(2l, l) > 2^l_K
  int code_length = 0;      // 2 l_C + 2
  int interior_weight = 0;  // l_C
  // Whether l_C <= ceil(l_K / 2) + 1. False from l_K = 8 upwards.
  bool within_half_bound = true;

  int Weight() const { return interior_weight + 2; }
};

// Throws ValidationError for l_K < 1.
CodecParams MakeCodecParams(int key_bits);

// Sets both end bits and places the colex-unranked l_C-subset of rank
// value(K) in the 2 l_C interior positions.
BitString Encode(const CodecParams& params, const BitString& key);

// True iff the word has the right length, both end bits set and weight
// l_C + 2.
bool PassesTamperCheck(const CodecParams& params, const BitString& word);

// Inverse of Encode. Throws MalformedCodewordError when the tamper check
// fails or the interior rank does not correspond to any key.
BitString Decode(const CodecParams& params, const BitString& codeword);

}  // namespace qpvkex::auth

#endif  // QPVKEX_AUTH_CODES_H_
