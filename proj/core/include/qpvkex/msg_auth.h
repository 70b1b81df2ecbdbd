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

#ifndef QPVKEX_MSG_AUTH_H_
#define QPVKEX_MSG_AUTH_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "qpvkex/auth_codes.h"
#include "qpvkex/bits.h"
#include "qpvkex/probability.h"
#include "qpvkex/qpv.h"
#include "qpvkex/random.h"

namespace qpvkex::msgauth {

struct MsgAuthConfig {
  auth::HashFamilyParams hash;
  auth::CodecParams codec;
  qpv::QpvConfig qpv;
  double delta_t = 0.0;  // 0 selects the run duration plus one time unit
  double t_start = 0.0;

  // Derives hash and codec parameters. The per-run QPV uses 64 rounds
  // unless `qpv` says otherwise.
  static MsgAuthConfig Make(int message_bits, int tag_bits,
                            const qpv::QpvConfig& qpv);
  static qpv::QpvConfig DefaultQpv();

  void Validate() const;
  int Runs() const { return codec.code_length; }
  double EffectiveDeltaT() const;
};

struct MsgAdversary {
  enum class Kind {
    kNone,
    kFlip,         // jam listed runs and/or try to force listed silent runs
    kSwap,         // jam the first interior 1-run, force 0-runs until one passes
    kDesync,       // shift the receiver's runs by `shift` slots
    kDelayMsgTag,  // substitute the message and tag
  };
  Kind kind = Kind::kNone;
  std::vector<int> one_to_zero;  // 1-based run indices
  std::vector<int> zero_to_one;  // 1-based run indices
  double force_probability = 0.0;
  int shift = 0;
  BitString message_mask;  // xor applied to the message (empty: unchanged)
  BitString tag_mask;      // xor applied to the tag (empty: unchanged)
  std::optional<BitString> substitute_tag;
  // Delay variant: withhold message and tag until after the sender's slots,
  // then run the whole transfer alone with a key of the adversary's choice.
  bool learn_key = false;

  static MsgAdversary None() { return {}; }
  static MsgAdversary FlipOneToZero(std::vector<int> runs);
  static MsgAdversary FlipZeroToOne(std::vector<int> runs, double eps);
  static MsgAdversary Swap(double eps);
  static MsgAdversary Desync(int shift, double eps);
  static MsgAdversary DelayMsgTag(BitString message_mask, BitString tag_mask);
  static MsgAdversary DelayLearnKey(BitString message_mask, double eps);

  void Validate(const MsgAuthConfig& config) const;
};

const char* AdversaryKindName(MsgAdversary::Kind kind);

struct MsgAuthOutcome {
  BitString key;               // K chosen by the sender
  BitString tag;               // T sent
  BitString codeword;          // C
  BitString message_received;  // M-hat
  BitString tag_received;      // T-hat
  BitString c_hat;
  bool tamper_check_pass = false;
  std::optional<BitString> decoded_key;
  bool auth_pass = false;
  bool omega_tc = false;  // tamper check passes
  bool omega_mt = true;   // message and tag arrive before the QPV runs
  std::vector<qpv::Verdict> run_verdicts;

  bool KeyMismatchAccepted() const {
    return tamper_check_pass && decoded_key && *decoded_key != key;
  }
};

// Full sender-side run of the protocol: draws K, computes T = h_K(M),
// encodes and transfers K.
MsgAuthOutcome SendAuthenticated(const MsgAuthConfig& config,
                                 const BitString& message,
                                 const MsgAdversary& adversary,
                                 std::uint64_t seed);

// Transfer of a given key and tag. The sender answers only if
// `sender_participates`. Draws all randomness from `rng`.
MsgAuthOutcome TransferKey(const MsgAuthConfig& config,
                           const BitString& message, const BitString& key,
                           const BitString& tag, bool sender_participates,
                           const MsgAdversary& adversary, Rng& rng);

// delta + 2 ceil(l_K / 2) eps_qpv.
BoundValue SoundnessBoundMsgAuth(int key_bits, double eps_qpv, double delta);
// (ceil(l_K / 2) + 2) eps_rob.
BoundValue RobustnessBoundMsgAuth(int key_bits, double eps_rob);

}  // namespace qpvkex::msgauth

#endif  // QPVKEX_MSG_AUTH_H_
