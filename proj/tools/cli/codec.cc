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

#include "commands.h"
#include "qpvkex/auth_codes.h"
#include "qpvkex/errors.h"

namespace qpvkex::cli {
namespace {

BitString RequiredBits(const std::string& name, const std::string& text, std::size_t bits) {
  if (text.empty()) throw ValidationError(name + " is required");
  return ParseBitsText(name, text, bits);
}

Json BitsJson(const BitString& b) { return {{"bits", b.ToBinary()}, {"hex", b.ToHex()}}; }

CommandResult RunEncode(const Json& c) {
  auth::CodecParams p = auth::MakeCodecParams(GetInt(c, "lk"));
  BitString key = RequiredBits("key", GetString(c, "key"), static_cast<std::size_t>(p.key_bits));
  BitString word = auth::Encode(p, key);
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"half_length", p.half_length}, {"code_length", p.code_length}, {"codeword", BitsJson(word)}};
  out.text = word.ToBinary() + "\n";
  return out;
}

CommandResult RunDecode(const Json& c) {
  auth::CodecParams p = auth::MakeCodecParams(GetInt(c, "lk"));
  BitString word = RequiredBits("codeword", GetString(c, "codeword"), static_cast<std::size_t>(p.code_length));
  BitString key = auth::Decode(p, word);
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"half_length", p.half_length}, {"code_length", p.code_length}, {"key", BitsJson(key)}};
  out.text = key.ToBinary() + "\n";
  return out;
}

CommandResult RunTag(const Json& c) {
  auth::HashFamilyParams p = auth::MakeHashFamilyParams(GetInt(c, "message_bits"), GetInt(c, "tag_bits"));
  BitString key = RequiredBits("key", GetString(c, "key"), static_cast<std::size_t>(p.key_bits));
  const std::string text = GetString(c, "message");
  BitString message;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    message = BitString::FromHex(text.substr(2));
  } else {
    message = BitString::FromBinary(text);
  }
  BitString tag = auth::HashTag(p, key, message);
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"key_bits", p.key_bits},
                {"delta", p.delta},
                {"effective_delta", p.EffectiveDelta()},
                {"message_length", message.size()},
                {"tag", BitsJson(tag)}};
  out.text = tag.ToBinary() + "\n";
  return out;
}

}  // namespace

BitString ParseBitsText(const std::string& name, const std::string& text, std::size_t bits) {
  if (text.empty()) return {};
  BitString out;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    out = BitString::FromHex(text.substr(2), bits);
  } else {
    out = BitString::FromBinary(text);
  }
  if (out.size() != bits) {
    throw ValidationError(name + " must have " + std::to_string(bits) + " bits, got " +
                          std::to_string(out.size()));
  }
  return out;
}

std::vector<Command> CodecCommands() {
  return {
      {"codec", "enc", "encode an l_K-bit key as a constant-weight codeword",
       {IntParam("lk", 2, "key length l_K"), TextParam("key", "", "key bits (binary, or hex with 0x)")},
       RunEncode},
      {"codec", "dec", "decode a constant-weight codeword",
       {IntParam("lk", 2, "key length l_K"), TextParam("codeword", "", "codeword bits (binary, or hex with 0x)")},
       RunDecode},
      {"hash", "tag", "tag a message with the polynomial hash family",
       {IntParam("message_bits", 16, "maximum message length n"), IntParam("tag_bits", 8, "tag length l_T"),
        TextParam("key", "", "l_K key bits (binary, or hex with 0x)"),
        TextParam("message", "", "message bits (binary, or hex with 0x); empty is the empty message")},
       RunTag},
  };
}

}  // namespace qpvkex::cli
