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

#include <gtest/gtest.h>

#include "qpvkex/errors.h"

namespace qpvkex {
namespace {

TEST(BitStringTest, BinaryRoundTrip) {
  BitString b = BitString::FromBinary("101100");
  EXPECT_EQ(b.size(), 6u);
  EXPECT_TRUE(b[0]);
  EXPECT_FALSE(b[1]);
  EXPECT_EQ(b.ToBinary(), "101100");
  EXPECT_THROW(BitString::FromBinary("10a"), ValidationError);
}

TEST(BitStringTest, HexIsBigEndian) {
  EXPECT_EQ(BitString::FromHex("a").ToBinary(), "1010");
  EXPECT_EQ(BitString::FromHex("3", 2).ToBinary(), "11");
  EXPECT_EQ(BitString::FromHex("0x0f", 6).ToBinary(), "001111");
  EXPECT_THROW(BitString::FromHex("f", 2), ValidationError);
  EXPECT_THROW(BitString::FromHex("g"), ValidationError);
  EXPECT_EQ(BitString::FromBinary("111001").ToHex(), "39");
  EXPECT_EQ(BitString::FromBinary("1").ToHex(), "1");
}

TEST(BitStringTest, UintConversions) {
  BitString b = BitString::FromUint(5, 4);
  EXPECT_EQ(b.ToBinary(), "0101");
  EXPECT_EQ(b.ToUint(), 5u);
  b.AppendUint(3, 2);
  EXPECT_EQ(b.ToBinary(), "010111");
  EXPECT_EQ(b.ReadUint(1, 3), 5u);
  EXPECT_EQ(BitString::FromUint(~0ULL, 64).HammingWeight(), 64u);
}

TEST(BitStringTest, XorSliceAndWeight) {
  BitString a = BitString::FromBinary("1100");
  BitString b = BitString::FromBinary("1010");
  EXPECT_EQ((a ^ b).ToBinary(), "0110");
  EXPECT_EQ(a.Slice(1, 2).ToBinary(), "10");
  EXPECT_EQ(a.HammingWeight(), 2u);
  EXPECT_THROW(a ^= BitString::FromBinary("1"), ValidationError);
  a.flip(3);
  EXPECT_EQ(a.ToBinary(), "1101");
  BitString c{1, 0, 1};
  EXPECT_EQ(c.ToBinary(), "101");
}

}  // namespace
}  // namespace qpvkex
