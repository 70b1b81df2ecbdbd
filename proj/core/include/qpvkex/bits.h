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

#ifndef QPVKEX_BITS_H_
#define QPVKEX_BITS_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpvkex {

// An ordered sequence of bits. Index 0 is the leftmost bit ("bit 1" in
// one-based protocol notation) and is the most significant bit whenever the
// string is read as an integer or printed as hex.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false)
      : bits_(size, value ? 1 : 0) {}
  BitString(std::initializer_list<int> bits);

  // "0110..." -> bits. Throws ValidationError on any other character.
  static BitString FromBinary(std::string_view text);
  // Hex digits expand to four bits each. When `size` is smaller than
  // 4 * digits the surplus leading bits must be zero and are dropped, so
  // FromHex("3", 2) == "11".
  static BitString FromHex(std::string_view text, std::size_t size);
  static BitString FromHex(std::string_view text) {
    return FromHex(text, 4 * text.size());
  }
  // The low `size` bits of `value`, most significant first.
  static BitString FromUint(std::uint64_t value, std::size_t size);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }
  void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
  void Append(const BitString& other);
  void AppendUint(std::uint64_t value, std::size_t width);
  void resize(std::size_t size) { bits_.resize(size, 0); }

  std::size_t HammingWeight() const;
  BitString Slice(std::size_t begin, std::size_t length) const;
  // Reads `width` (<= 64) bits starting at `begin` as a big-endian integer.
  std::uint64_t ReadUint(std::size_t begin, std::size_t width) const;
  std::uint64_t ToUint() const { return ReadUint(0, size()); }

  std::string ToBinary() const;
  // Left-pads with zero bits up to a multiple of four.
  std::string ToHex() const;

  std::span<const std::uint8_t> raw() const { return bits_; }

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) {
    a ^= b;
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qpvkex

#endif  // QPVKEX_BITS_H_
