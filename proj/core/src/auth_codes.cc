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

#include "qpvkex/auth_codes.h"

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpvkex/errors.h"
#include "qpvkex/gf2.h"

namespace qpvkex::auth {

namespace {

using boost::multiprecision::cpp_int;

cpp_int Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

cpp_int ToInteger(const BitString& bits) {
  cpp_int v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    v <<= 1;
    if (bits[i]) v |= 1;
  }
  return v;
}

BitString FromInteger(cpp_int v, std::size_t size) {
  BitString out(size);
  for (std::size_t i = size; i-- > 0;) {
    out.set(i, bit_test(v, 0));
    v >>= 1;
  }
  return out;
}

}  // namespace

int HashFamilyParams::Blocks() const {
  return (message_bits + tag_bits - 1) / tag_bits;
}

double HashFamilyParams::EffectiveDelta() const {
  return Blocks() * std::ldexp(1.0, -tag_bits);
}

HashFamilyParams MakeHashFamilyParams(int message_bits, int tag_bits) {
  if (tag_bits < 1) throw ValidationError("tag length must be at least 1");
  if (tag_bits > 64) throw ValidationError("tag length above 64 is not supported");
  if (message_bits < tag_bits) {
    throw ValidationError("message length must be at least the tag length");
  }
  HashFamilyParams p;
  p.message_bits = message_bits;
  p.tag_bits = tag_bits;
  double inner = tag_bits + std::log2(static_cast<double>(message_bits) / tag_bits) + 1.0;
  p.key_bits = 2 * static_cast<int>(std::floor(inner));
  p.delta = std::ldexp(1.0, 1 - tag_bits);
  return p;
}

BitString HashTag(const HashFamilyParams& params, const BitString& key,
                  const BitString& message) {
  if (key.size() != static_cast<std::size_t>(params.key_bits)) {
    throw ValidationError("hash key length must equal l_K");
  }
  if (message.size() > static_cast<std::size_t>(params.message_bits)) {
    throw ValidationError("message longer than the hash family supports");
  }
  const std::size_t w = static_cast<std::size_t>(params.tag_bits);
  Gf2Field field(params.tag_bits);
  std::uint64_t k1 = key.ReadUint(0, w);
  std::uint64_t k2 = key.ReadUint(w, w);

  std::size_t padded = (message.size() / w + 1) * w;
  std::size_t blocks = padded / w;
  auto block = [&](std::size_t b) {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < w; ++j) {
      std::size_t pos = b * w + j;
      int bit = pos < message.size() ? (message[pos] ? 1 : 0) : (pos == message.size() ? 1 : 0);
      v = (v << 1) | static_cast<std::uint64_t>(bit);
    }
    return v;
  };
  std::uint64_t acc = 0;
  for (std::size_t b = blocks; b-- > 0;) {
    acc = field.Mul(acc ^ block(b), k1);
  }
  return BitString::FromUint(acc ^ k2, w);
}

CodecParams MakeCodecParams(int key_bits) {
  if (key_bits < 1) throw ValidationError("key length must be at least 1");
  CodecParams p;
  p.key_bits = key_bits;
  cpp_int limit = cpp_int(1) << key_bits;
  int l = 1;
  while (Binomial(2 * l, l) <= limit) ++l;
  p.half_length = l;
  p.code_length = 2 * l + 2;
  p.interior_weight = l;
  p.within_half_bound = l <= (key_bits + 1) / 2 + 1;
  return p;
}

BitString Encode(const CodecParams& params, const BitString& key) {
  if (key.size() != static_cast<std::size_t>(params.key_bits)) {
    throw ValidationError("key length must equal l_K");
  }
  const int k = params.interior_weight;
  const int n = 2 * params.half_length;
  cpp_int rank = ToInteger(key);
  if (rank >= Binomial(n, k)) throw ValidationError("key rank exceeds the codebook size");
  BitString word(static_cast<std::size_t>(params.code_length));
  word.set(0, true);
  word.set(word.size() - 1, true);
  int c = n - 1;
  for (int i = k; i >= 1; --i) {
    while (Binomial(c, i) > rank) --c;
    rank -= Binomial(c, i);
    word.set(static_cast<std::size_t>(c) + 1, true);
    --c;
  }
  return word;
}

bool PassesTamperCheck(const CodecParams& params, const BitString& word) {
  return word.size() == static_cast<std::size_t>(params.code_length) && word[0] &&
         word[word.size() - 1] &&
         word.HammingWeight() == static_cast<std::size_t>(params.Weight());
}

BitString Decode(const CodecParams& params, const BitString& codeword) {
  if (!PassesTamperCheck(params, codeword)) {
    throw MalformedCodewordError("codeword fails the end-bit or weight check");
  }
  cpp_int rank = 0;
  int i = 0;
  for (int c = 0; c < 2 * params.half_length; ++c) {
    if (codeword[static_cast<std::size_t>(c) + 1]) rank += Binomial(c, ++i);
  }
  if (rank >= (cpp_int(1) << params.key_bits)) {
    throw MalformedCodewordError("codeword rank does not correspond to a key");
  }
  return FromInteger(rank, static_cast<std::size_t>(params.key_bits));
}

}  // namespace qpvkex::auth
