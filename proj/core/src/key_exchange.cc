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

#include "qpvkex/key_exchange.h"

#include "qpvkex/errors.h"
#include "qpvkex/random.h"

namespace qpvkex::kex {

namespace {

using qpv::ProverStrategy;

std::uint64_t Digest(std::uint64_t h, const BitString& bits) {
  h = Mix64(h ^ bits.size());
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    word = (word << 1) | (bits[i] ? 1 : 0);
    if (i % 64 == 63) {
      h = Mix64(h ^ word);
      word = 0;
    }
  }
  return Mix64(h ^ word);
}

std::uint64_t TranscriptDigest(const QkdResult& q, std::initializer_list<const BitString*> extra) {
  std::uint64_t h = 0x7170766b6578ULL;
  for (const BitString* b : {&q.m_a, &q.m_a_received, &q.m_b, &q.m_b_received}) h = Digest(h, *b);
  for (const BitString* b : extra) h = Digest(h, *b);
  return h;
}

ProverStrategy FinalQpvStrategy(bool bob_answers, const ChannelAdversary& adv, double eta) {
  if (bob_answers && adv.kind != ChannelAdversary::Kind::kBlockFinalQpv) {
    return ProverStrategy::Honest(eta);
  }
  if (adv.force_probability > 0.0) return ProverStrategy::AbstractPass(adv.force_probability);
  return ProverStrategy::Absent();
}

void ValidateAdversary(const ChannelAdversary& adv) {
  if (!(adv.force_probability >= 0.0 && adv.force_probability <= 1.0)) {
    throw ValidationError("force_probability must lie in [0,1]");
  }
}

// (|M_A| as 32 bits, M_A, M_B): an injective encoding of the pair.
BitString Frame(const BitString& from_alice, const BitString& from_bob) {
  BitString out = BitString::FromUint(from_alice.size(), 32);
  out.Append(from_alice);
  out.Append(from_bob);
  return out;
}

void FillQkdIndicators(const QkdConfig& qkd, std::uint64_t qkd_seed, const QkdResult& q,
                       Indicators& ind) {
  ind.i_pe_a = q.i_pe_a;
  ind.i_pe_b = q.i_pe_b;
  ind.omega_pe_a = q.i_pe_a;
  ind.omega_pe_b = q.i_pe_b;
  bool untouched = q.m_a == q.m_a_received && q.m_b == q.m_b_received;
  if (untouched) {
    ind.omega_pe_a_ideal = q.i_pe_a;
    ind.omega_pe_b_ideal = q.i_pe_b;
  } else {
    QkdResult clean = RunToyQkd(qkd, qkd_seed);
    ind.omega_pe_a_ideal = clean.i_pe_a;
    ind.omega_pe_b_ideal = clean.i_pe_b;
  }
}

}  // namespace

ChannelAdversary ChannelAdversary::TamperBobMessages(std::vector<std::size_t> positions,
                                                     double force_probability) {
  ChannelAdversary a;
  a.kind = Kind::kTamperBobMessages;
  a.positions = std::move(positions);
  a.force_probability = force_probability;
  return a;
}

ChannelAdversary ChannelAdversary::TamperTag(BitString mask) {
  ChannelAdversary a;
  a.kind = Kind::kTamperTag;
  a.tag_mask = std::move(mask);
  return a;
}

ChannelAdversary ChannelAdversary::BlockFinalQpv() {
  ChannelAdversary a;
  a.kind = Kind::kBlockFinalQpv;
  return a;
}

ChannelAdversary ChannelAdversary::ImpersonateAtWrongPosition(double force_probability) {
  ChannelAdversary a;
  a.kind = Kind::kImpersonateAtWrongPosition;
  a.force_probability = force_probability;
  return a;
}

const char* ChannelAdversaryName(ChannelAdversary::Kind kind) {
  switch (kind) {
    case ChannelAdversary::Kind::kNone: return "none";
    case ChannelAdversary::Kind::kTamperBobMessages: return "tamper-bob-messages";
    case ChannelAdversary::Kind::kTamperTag: return "tamper-tag";
    case ChannelAdversary::Kind::kBlockFinalQpv: return "block-final-qpv";
    case ChannelAdversary::Kind::kImpersonateAtWrongPosition: return "impersonate-at-wrong-position";
  }
  return "unknown";
}

auth::HashFamilyParams TranscriptHashParams(const QkdConfig& qkd, int tag_bits) {
  QkdTranscriptBound b = MaxTranscriptBits(qkd);
  // Frame header plus one side's messages and the other side's as received.
  return auth::MakeHashFamilyParams(static_cast<int>(32 + b.alice_bits + b.bob_bits), tag_bits);
}

ExchangeOutcome RunProtocol1(const QkdConfig& qkd, const qpv::QpvConfig& qpv,
                             const auth::HashFamilyParams& hash,
                             const ChannelAdversary& adversary, std::uint64_t seed,
                             const Protocol1Options& options) {
  qkd.Validate();
  qpv.Validate();
  ValidateAdversary(adversary);
  if (!(options.alice_channel_loss >= 0.0 && options.alice_channel_loss <= 1.0)) {
    throw ValidationError("alice_channel_loss must lie in [0,1]");
  }
  ExchangeOutcome out;
  out.protocol = 1;
  const std::uint64_t qkd_seed = DeriveSeed(seed, 0);
  ClassicalChannel ch(adversary.kind == ChannelAdversary::Kind::kTamperBobMessages
                          ? adversary.positions
                          : std::vector<std::size_t>{});
  QkdResult q = RunToyQkd(qkd, qkd_seed, ch);
  Indicators& ind = out.indicators;
  FillQkdIndicators(qkd, qkd_seed, q, ind);
  ind.omega_m = q.m_b == q.m_b_received;
  // Alice settles the joint estimation verdict and announces it over the
  // authenticated channel.
  const bool i_pe = q.i_pe_a;

  Rng rng(DeriveSeed(seed, 7));
  if (q.m_b.size() > static_cast<std::size_t>(hash.message_bits) ||
      q.m_b_received.size() > static_cast<std::size_t>(hash.message_bits)) {
    throw ValidationError("Bob's transcript exceeds the hash message length");
  }
  BitString key = RandomBits(rng, static_cast<std::size_t>(hash.key_bits));
  BitString tag = auth::HashTag(hash, key, q.m_b_received);
  bool lost = Bernoulli(rng, options.alice_channel_loss);
  ind.i = !lost && auth::HashTag(hash, key, q.m_b) == tag;
  ind.omega_h = ind.i;
  ind.omega_k = true;
  ind.omega_t = !lost;

  qpv::QpvSession session(qpv, DeriveSeed(seed, 9));
  qpv::QpvRunResult run = session.RunSingle(FinalQpvStrategy(ind.i, adversary, qpv.eta));
  ind.i_qpv = run.verdict == qpv::Verdict::kPass;
  ind.omega_qpv = ind.i_qpv;

  if (i_pe && ind.i_qpv) {
    out.key_a = q.KeyA();
    out.key_b = q.KeyB();
  }
  out.transcript_digest = TranscriptDigest(q, {&key, &tag});
  out.sifted = q.sifted_a;
  out.leak = q.leak;
  out.qber_estimate = q.qber_estimate_a;
  return out;
}

ExchangeOutcome RunProtocol3(const QkdConfig& qkd, const msgauth::MsgAuthConfig& msg_auth,
                             const qpv::QpvConfig& qpv, const ChannelAdversary& adversary,
                             std::uint64_t seed) {
  qkd.Validate();
  qpv.Validate();
  msg_auth.Validate();
  ValidateAdversary(adversary);
  using Kind = ChannelAdversary::Kind;
  ExchangeOutcome out;
  out.protocol = 3;
  const std::uint64_t qkd_seed = DeriveSeed(seed, 0);
  ClassicalChannel ch(adversary.kind == Kind::kTamperBobMessages ? adversary.positions
                                                                 : std::vector<std::size_t>{});
  QkdResult q = RunToyQkd(qkd, qkd_seed, ch);
  Indicators& ind = out.indicators;
  FillQkdIndicators(qkd, qkd_seed, q, ind);
  ind.omega_m = q.m_a == q.m_a_received && q.m_b == q.m_b_received;

  const auth::HashFamilyParams& hash = msg_auth.hash;
  BitString alice_view = Frame(q.m_a, q.m_b_received);
  BitString bob_view = Frame(q.m_a_received, q.m_b);
  if (alice_view.size() > static_cast<std::size_t>(hash.message_bits) ||
      bob_view.size() > static_cast<std::size_t>(hash.message_bits)) {
    throw ValidationError("transcript exceeds the hash message length");
  }

  Rng alice(DeriveSeed(seed, 11));
  BitString key = RandomBits(alice, static_cast<std::size_t>(hash.key_bits));
  BitString tag = q.i_pe_a ? auth::HashTag(hash, key, alice_view)
                           : RandomBits(alice, static_cast<std::size_t>(hash.tag_bits));
  BitString tag_at_bob = tag;
  if (adversary.kind == Kind::kTamperTag || adversary.kind == Kind::kImpersonateAtWrongPosition) {
    BitString mask = adversary.tag_mask;
    if (mask.empty()) {
      mask = BitString(static_cast<std::size_t>(hash.tag_bits));
      mask.set(0, true);
    }
    if (mask.size() != tag.size()) throw ValidationError("tag mask length must equal l_T");
    tag_at_bob ^= mask;
  }
  ind.omega_t = tag_at_bob == tag;

  Rng transfer(DeriveSeed(seed, 13));
  msgauth::MsgAuthOutcome mo = msgauth::TransferKey(msg_auth, bob_view, key, tag_at_bob,
                                                    q.i_pe_a, msgauth::MsgAdversary::None(),
                                                    transfer);
  out.msg_auth_runs = static_cast<std::size_t>(msg_auth.Runs());
  ind.i = mo.auth_pass;
  ind.omega_h = ind.i;
  ind.omega_k = mo.decoded_key && *mo.decoded_key == key;

  qpv::QpvSession session(qpv, DeriveSeed(seed, 17));
  bool bob_answers = ind.i && q.i_pe_b;
  qpv::QpvRunResult run = session.RunSingle(FinalQpvStrategy(bob_answers, adversary, qpv.eta));
  ind.i_qpv = run.verdict == qpv::Verdict::kPass;
  ind.omega_qpv = ind.i_qpv;

  if (ind.i_qpv && q.i_pe_a) out.key_a = q.KeyA();
  if (ind.i && q.i_pe_b) out.key_b = q.KeyB();
  out.transcript_digest = TranscriptDigest(q, {&key, &tag, &tag_at_bob, &mo.c_hat});
  out.sifted = q.sifted_a;
  out.leak = q.leak;
  out.qber_estimate = q.qber_estimate_a;
  return out;
}

}  // namespace qpvkex::kex
