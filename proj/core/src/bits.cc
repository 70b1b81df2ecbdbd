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

#include "qpvkex/bits.h"

#include <algorithm>
#include <cctype>

#include "qpvkex/errors.h"

namespace qpvkex {

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValidationError("bit values must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::FromBinary(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ValidationError("binary string contains a character other than 0/1");
    }
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::FromHex(std::string_view text, std::size_t size) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  BitString full;
  full.bits_.reserve(4 * text.size());
  for (char c : text) {
    int v = HexValue(c);
    if (v < 0) throw ValidationError("hex string contains a non-hex character");
    for (int b = 3; b >= 0; --b) full.bits_.push_back((v >> b) & 1);
  }
  if (size > full.size()) {
    throw ValidationError("hex string too short for the requested bit length");
  }
  std::size_t surplus = full.size() - size;
  for (std::size_t i = 0; i < surplus; ++i) {
    if (full.bits_[i]) {
      throw ValidationError("hex value does not fit in the requested bit length");
    }
  }
  return full.Slice(surplus, size);
}

BitString BitString::FromUint(std::uint64_t value, std::size_t size) {
  BitString out(size);
  for (std::size_t i = 0; i < size && i < 64; ++i) {
    out.bits_[size - 1 - i] = (value >> i) & 1;
  }
  if (size < 64 && (value >> size) != 0) {
    throw ValidationError("integer does not fit in the requested bit length");
  }
  return out;
}

void BitString::Append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::AppendUint(std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) {
    bits_.push_back(i < 64 ? (value >> i) & 1 : 0);
  }
}

std::size_t BitString::HammingWeight() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BitString BitString::Slice(std::size_t begin, std::size_t length) const {
  if (begin > size() || length > size() - begin) {
    throw ValidationError("bit slice out of range");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(begin),
                   bits_.begin() + static_cast<std::ptrdiff_t>(begin + length));
  return out;
}

std::uint64_t BitString::ReadUint(std::size_t begin, std::size_t width) const {
  if (width > 64) throw ValidationError("cannot read more than 64 bits");
  if (begin > size() || width > size() - begin) {
    throw ValidationError("bit read out of range");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits_[begin + i];
  return v;
}

std::string BitString::ToBinary() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string BitString::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::size_t pad = (4 - size() % 4) % 4;
  std::string s;
  s.reserve((size() + pad) / 4);
  int acc = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < pad + size(); ++i) {
    int bit = i < pad ? 0 : bits_[i - pad];
    acc = (acc << 1) | bit;
    if (++n == 4) {
      s.push_back(kDigits[acc]);
      acc = 0;
      n = 0;
    }
  }
  return s;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size() != size()) throw ValidationError("xor of unequal lengths");
  for (std::size_t i = 0; i < size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

}  // namespace qpvkex
