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

#include "qpvkex/msg_auth.h"

#include <algorithm>

#include "qpvkex/errors.h"

namespace qpvkex::msgauth {

namespace {

bool Contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

qpv::QpvConfig MsgAuthConfig::DefaultQpv() {
  qpv::QpvConfig q;
  q.rounds = 64;
  return q;
}

MsgAuthConfig MsgAuthConfig::Make(int message_bits, int tag_bits,
                                  const qpv::QpvConfig& qpv) {
  MsgAuthConfig c;
  c.hash = auth::MakeHashFamilyParams(message_bits, tag_bits);
  c.codec = auth::MakeCodecParams(c.hash.key_bits);
  c.qpv = qpv;
  return c;
}

void MsgAuthConfig::Validate() const {
  qpv.Validate();
  if (codec.key_bits != hash.key_bits) {
    throw ValidationError("codec key length must match the hash key length");
  }
  if (codec.code_length != 2 * codec.half_length + 2 || codec.half_length < 1) {
    throw ValidationError("inconsistent codec parameters");
  }
  if (delta_t != 0.0 && !(delta_t > qpv.RunDuration())) {
    throw ValidationError("delta_t must exceed the duration of one QPV run");
  }
  if (!(t_start >= 0.0)) throw ValidationError("t_start must be non-negative");
}

double MsgAuthConfig::EffectiveDeltaT() const {
  return delta_t != 0.0 ? delta_t : qpv.RunDuration() + 1.0;
}

MsgAdversary MsgAdversary::FlipOneToZero(std::vector<int> runs) {
  MsgAdversary a;
  a.kind = Kind::kFlip;
  a.one_to_zero = std::move(runs);
  return a;
}

MsgAdversary MsgAdversary::FlipZeroToOne(std::vector<int> runs, double eps) {
  MsgAdversary a;
  a.kind = Kind::kFlip;
  a.zero_to_one = std::move(runs);
  a.force_probability = eps;
  return a;
}

MsgAdversary MsgAdversary::Swap(double eps) {
  MsgAdversary a;
  a.kind = Kind::kSwap;
  a.force_probability = eps;
  return a;
}

MsgAdversary MsgAdversary::Desync(int shift, double eps) {
  MsgAdversary a;
  a.kind = Kind::kDesync;
  a.shift = shift;
  a.force_probability = eps;
  return a;
}

MsgAdversary MsgAdversary::DelayMsgTag(BitString message_mask, BitString tag_mask) {
  MsgAdversary a;
  a.kind = Kind::kDelayMsgTag;
  a.message_mask = std::move(message_mask);
  a.tag_mask = std::move(tag_mask);
  return a;
}

MsgAdversary MsgAdversary::DelayLearnKey(BitString message_mask, double eps) {
  MsgAdversary a;
  a.kind = Kind::kDelayMsgTag;
  a.message_mask = std::move(message_mask);
  a.learn_key = true;
  a.force_probability = eps;
  return a;
}

void MsgAdversary::Validate(const MsgAuthConfig& config) const {
  if (!(force_probability >= 0.0 && force_probability <= 1.0)) {
    throw ValidationError("adversary pass probability must lie in [0,1]");
  }
  for (const auto* list : {&one_to_zero, &zero_to_one}) {
    for (int i : *list) {
      if (i < 1 || i > config.Runs()) throw ValidationError("run index out of range");
    }
  }
  if (!tag_mask.empty() && tag_mask.size() != static_cast<std::size_t>(config.hash.tag_bits)) {
    throw ValidationError("tag mask length must equal l_T");
  }
  if (substitute_tag &&
      substitute_tag->size() != static_cast<std::size_t>(config.hash.tag_bits)) {
    throw ValidationError("substitute tag length must equal l_T");
  }
}

const char* AdversaryKindName(MsgAdversary::Kind kind) {
  switch (kind) {
    case MsgAdversary::Kind::kNone: return "none";
    case MsgAdversary::Kind::kFlip: return "flip";
    case MsgAdversary::Kind::kSwap: return "swap";
    case MsgAdversary::Kind::kDesync: return "desync";
    case MsgAdversary::Kind::kDelayMsgTag: return "delay-msg-tag";
  }
  return "unknown";
}

MsgAuthOutcome TransferKey(const MsgAuthConfig& config, const BitString& message,
                           const BitString& key, const BitString& tag,
                           bool sender_participates, const MsgAdversary& adversary,
                           Rng& rng) {
  using Kind = MsgAdversary::Kind;
  using qpv::ProverStrategy;
  config.Validate();
  adversary.Validate(config);
  if (message.size() > static_cast<std::size_t>(config.hash.message_bits)) {
    throw ValidationError("message longer than the hash family supports");
  }
  if (tag.size() != static_cast<std::size_t>(config.hash.tag_bits)) {
    throw ValidationError("tag length must equal l_T");
  }

  MsgAuthOutcome out;
  out.key = key;
  out.tag = tag;
  out.codeword = auth::Encode(config.codec, key);
  out.message_received = message;
  if (!adversary.message_mask.empty()) {
    if (adversary.message_mask.size() != message.size()) {
      throw ValidationError("message mask length must equal the message length");
    }
    out.message_received ^= adversary.message_mask;
  }
  out.tag_received = tag;
  if (adversary.substitute_tag) {
    out.tag_received = *adversary.substitute_tag;
  } else if (!adversary.tag_mask.empty()) {
    out.tag_received ^= adversary.tag_mask;
  }

  const int runs = config.Runs();
  const BitString& c = out.codeword;
  auto sender_active = [&](int i) { return sender_participates && c[static_cast<std::size_t>(i - 1)]; };
  const ProverStrategy honest = ProverStrategy::Honest(config.qpv.eta);
  const ProverStrategy absent = ProverStrategy::Absent();
  const ProverStrategy forced = ProverStrategy::AbstractPass(adversary.force_probability);

  // The adversary's own codeword when it replaces the whole transfer.
  BitString own_codeword;
  bool impersonate_all = adversary.kind == Kind::kDelayMsgTag && adversary.learn_key;
  if (impersonate_all) {
    out.omega_mt = false;
    BitString own_key = RandomBits(rng, static_cast<std::size_t>(config.hash.key_bits));
    own_codeword = auth::Encode(config.codec, own_key);
    out.tag_received = auth::HashTag(config.hash, own_key, out.message_received);
  }

  int swap_block = -1;
  if (adversary.kind == Kind::kSwap) {
    for (int i = 2; i < runs; ++i) {
      if (sender_active(i)) {
        swap_block = i;
        break;
      }
    }
  }
  bool forced_once = false;

  qpv::QpvSession session(config.qpv, rng());
  const double dt = config.EffectiveDeltaT();
  out.c_hat = BitString(static_cast<std::size_t>(runs));
  for (int i = 1; i <= runs; ++i) {
    const ProverStrategy* strategy = sender_active(i) ? &honest : &absent;
    bool forcing = false;
    switch (adversary.kind) {
      case Kind::kNone:
        break;
      case Kind::kFlip:
        if (Contains(adversary.one_to_zero, i)) {
          strategy = &absent;
        } else if (!sender_active(i) && Contains(adversary.zero_to_one, i)) {
          strategy = &forced;
        }
        break;
      case Kind::kSwap:
        if (i == swap_block) {
          strategy = &absent;
        } else if (!sender_active(i) && !forced_once && i > 1 && i < runs) {
          strategy = &forced;
          forcing = true;
        }
        break;
      case Kind::kDesync: {
        int j = i - adversary.shift;
        if (j >= 1 && j <= runs) {
          strategy = sender_active(j) ? &honest : &absent;
        } else {
          strategy = &forced;
        }
        break;
      }
      case Kind::kDelayMsgTag:
        if (impersonate_all) {
          strategy = own_codeword[static_cast<std::size_t>(i - 1)] ? &forced : &absent;
        }
        break;
    }
    qpv::QpvRunResult r = session.RunSingle(*strategy, config.t_start + (i - 1) * dt);
    bool pass = r.verdict == qpv::Verdict::kPass;
    if (forcing && pass) forced_once = true;
    out.run_verdicts.push_back(r.verdict);
    out.c_hat.set(static_cast<std::size_t>(i - 1), pass);
  }

  if (auth::PassesTamperCheck(config.codec, out.c_hat)) {
    try {
      out.decoded_key = auth::Decode(config.codec, out.c_hat);
    } catch (const MalformedCodewordError&) {
      out.decoded_key.reset();
    }
  }
  out.tamper_check_pass = out.decoded_key.has_value();
  out.omega_tc = out.tamper_check_pass;
  if (out.tamper_check_pass) {
    out.auth_pass =
        auth::HashTag(config.hash, *out.decoded_key, out.message_received) == out.tag_received;
  }
  return out;
}

MsgAuthOutcome SendAuthenticated(const MsgAuthConfig& config, const BitString& message,
                                 const MsgAdversary& adversary, std::uint64_t seed) {
  Rng rng(seed);
  BitString key = RandomBits(rng, static_cast<std::size_t>(config.hash.key_bits));
  BitString tag = auth::HashTag(config.hash, key, message);
  return TransferKey(config, message, key, tag, true, adversary, rng);
}

BoundValue SoundnessBoundMsgAuth(int key_bits, double eps_qpv, double delta) {
  if (key_bits < 0) throw ValidationError("key length must be non-negative");
  return MakeBound(delta + 2.0 * ((key_bits + 1) / 2) * eps_qpv);
}

BoundValue RobustnessBoundMsgAuth(int key_bits, double eps_rob) {
  if (key_bits < 0) throw ValidationError("key length must be non-negative");
  return MakeBound(((key_bits + 1) / 2 + 2) * eps_rob);
}

}  // namespace qpvkex::msgauth
