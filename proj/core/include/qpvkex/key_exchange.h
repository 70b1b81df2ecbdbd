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

#ifndef QPVKEX_KEY_EXCHANGE_H_
#define QPVKEX_KEY_EXCHANGE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "qpvkex/auth_codes.h"
#include "qpvkex/bits.h"
#include "qpvkex/msg_auth.h"
#include "qpvkex/qkd.h"
#include "qpvkex/qpv.h"

namespace qpvkex::kex {

struct ChannelAdversary {
  enum class Kind {
    kNone,
    kTamperBobMessages,           // flip bits of Bob's classical stream
    kTamperTag,                   // xor a mask into the tag Alice sends
    kBlockFinalQpv,               // jam Bob's answers in the final QPV
    kImpersonateAtWrongPosition,  // spoil the tag, then answer the final QPV
  };
  Kind kind = Kind::kNone;
  std::vector<std::size_t> positions;  // kTamperBobMessages
  BitString tag_mask;                  // empty: flip the first tag bit
  // Chance that an off-position party passes a QPV run in Bob's absence.
  // Applies to every adversary kind whenever Bob does not answer.
  double force_probability = 0.0;

  static ChannelAdversary None() { return {}; }
  static ChannelAdversary TamperBobMessages(std::vector<std::size_t> positions,
                                            double force_probability = 0.0);
  static ChannelAdversary TamperTag(BitString mask = {});
  static ChannelAdversary BlockFinalQpv();
  static ChannelAdversary ImpersonateAtWrongPosition(double force_probability);
};

const char* ChannelAdversaryName(ChannelAdversary::Kind kind);

struct Indicators {
  bool i_pe_a = false;
  bool i_pe_b = false;
  bool i = false;      // Bob's message check
  bool i_qpv = false;  // Alice's final QPV verdict
  bool omega_m = false;
  bool omega_pe_a = false;
  bool omega_pe_b = false;
  bool omega_pe_a_ideal = false;  // from untampered messages
  bool omega_pe_b_ideal = false;
  bool omega_h = false;
  bool omega_qpv = false;
  bool omega_k = false;
  bool omega_t = false;
};

struct ExchangeOutcome {
  int protocol = 0;
  std::optional<BitString> key_a;
  std::optional<BitString> key_b;
  Indicators indicators;
  std::uint64_t transcript_digest = 0;
  std::size_t sifted = 0;
  std::size_t leak = 0;
  double qber_estimate = 0.0;
  std::size_t msg_auth_runs = 0;

  bool Aborted() const { return !key_a || !key_b; }
};

struct Protocol1Options {
  // Probability that Alice's authenticated hash message is lost. Default 0.
  double alice_channel_loss = 0.0;
};

// Hash family sized so that every transcript of `qkd` fits as a message.
auth::HashFamilyParams TranscriptHashParams(const QkdConfig& qkd, int tag_bits);

ExchangeOutcome RunProtocol1(const QkdConfig& qkd, const qpv::QpvConfig& qpv,
                             const auth::HashFamilyParams& hash,
                             const ChannelAdversary& adversary,
                             std::uint64_t seed,
                             const Protocol1Options& options = {});

ExchangeOutcome RunProtocol3(const QkdConfig& qkd,
                             const msgauth::MsgAuthConfig& msg_auth,
                             const qpv::QpvConfig& qpv,
                             const ChannelAdversary& adversary,
                             std::uint64_t seed);

}  // namespace qpvkex::kex

#endif  // QPVKEX_KEY_EXCHANGE_H_
