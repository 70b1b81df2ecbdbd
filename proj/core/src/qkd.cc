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

#include "qpvkex/qkd.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <utility>

#include "qpvkex/auth_codes.h"
#include "qpvkex/errors.h"
#include "qpvkex/quantum.h"
#include "qpvkex/random.h"

namespace qpvkex::kex {

namespace {

std::vector<std::uint32_t> MakePermutation(std::size_t n, std::uint64_t seed, int pass) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(pass)));
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformInt(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

bool RangeParity(const BitString& key, const std::vector<std::uint32_t>& perm,
                 std::size_t lo, std::size_t hi) {
  bool p = false;
  for (std::size_t i = lo; i < hi; ++i) p ^= key[perm[i]];
  return p;
}

// Error count over the longer of the two samples; missing bits count as
// errors.
double SampleErrorRate(const BitString& own, const BitString& other) {
  std::size_t total = std::max(own.size(), other.size());
  if (total == 0) return 1.0;
  std::size_t common = std::min(own.size(), other.size());
  std::size_t errors = total - common;
  for (std::size_t i = 0; i < common; ++i) errors += own[i] != other[i];
  return static_cast<double>(errors) / static_cast<double>(total);
}

bool Sampled(std::uint64_t seed, std::size_t index, double fraction) {
  if (fraction >= 1.0) return true;
  std::uint64_t threshold = static_cast<std::uint64_t>(std::ldexp(fraction, 64));
  return Mix64(seed ^ Mix64(index)) < threshold;
}

struct Pass {
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> where;  // inverse of perm
  std::size_t block = 1;
  std::size_t blocks = 0;
};

Pass MakePass(std::size_t n, std::uint64_t seed, int index, std::size_t k1) {
  Pass p;
  p.perm = MakePermutation(n, seed, index);
  p.where.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.where[p.perm[i]] = static_cast<std::uint32_t>(i);
  std::size_t shifted = index < 40 ? k1 << index : n;
  p.block = std::max<std::size_t>(1, std::min(shifted, std::max<std::size_t>(n, 1)));
  p.blocks = n == 0 ? 0 : (n + p.block - 1) / p.block;
  return p;
}

std::pair<std::size_t, std::size_t> BlockRange(const Pass& p, std::size_t b, std::size_t n) {
  std::size_t lo = std::min(b * p.block, n);
  return {lo, std::min(lo + p.block, n)};
}

// Bisection searches allowed before Cascade gives up. Twice the tolerated
// error count; a run that needs more fails verification instead.
std::size_t EcSearchBudget(const QkdConfig& config, std::size_t bits) {
  return static_cast<std::size_t>(std::ceil(2.0 * config.pe_threshold * static_cast<double>(bits))) +
         64;
}

}  // namespace

QkdTranscriptBound MaxTranscriptBits(const QkdConfig& config) {
  config.Validate();
  const std::size_t n = static_cast<std::size_t>(config.signal_count);
  const std::size_t searches = EcSearchBudget(config, n);
  const std::size_t steps = static_cast<std::size_t>(std::bit_width(n));
  const std::size_t passes = static_cast<std::size_t>(config.ec_passes);
  const int vt = config.verification_tag_bits;
  const std::size_t ver_key =
      static_cast<std::size_t>(auth::MakeHashFamilyParams(std::max(config.signal_count, vt), vt).key_bits);
  QkdTranscriptBound b;
  // Bases, PE seed and sample, block size, permutation seed, parities
  // (blocks start at 4 bits and double each pass), bisection answers,
  // verification key and tag, PA seed and length.
  b.alice_bits = n + 64 + n + 16 + 64 + (n / 2 + passes) + searches * steps + ver_key +
                 static_cast<std::size_t>(vt) + 64 + 32;
  // Bases, PE sample, block requests with bisection choices, verification bit.
  b.bob_bits = n + n + searches * (40 + steps) + 1;
  return b;
}

void QkdConfig::Validate() const {
  if (signal_count < 1) throw ValidationError("signal_count must be positive");
  if (!(channel_qber >= 0.0 && channel_qber <= 0.5)) {
    throw ValidationError("channel_qber must lie in [0, 0.5]");
  }
  if (!(pe_sample_fraction > 0.0 && pe_sample_fraction < 1.0)) {
    throw ValidationError("pe_sample_fraction must lie in (0,1)");
  }
  if (!(pe_threshold > 0.0 && pe_threshold < 0.5)) {
    throw ValidationError("pe_threshold must lie in (0, 0.5)");
  }
  if (ec_passes < 1 || ec_passes > 16) throw ValidationError("ec_passes must lie in [1, 16]");
  if (pa_output_bits < 0) throw ValidationError("pa_output_bits must be non-negative");
  if (!(eps_qkd_label >= 0.0 && eps_qkd_label <= 1.0)) {
    throw ValidationError("eps_qkd_label must lie in [0,1]");
  }
  if (verification_tag_bits < 1 || verification_tag_bits > 64) {
    throw ValidationError("verification_tag_bits must lie in [1, 64]");
  }
  if (!(fault_probability >= 0.0 && fault_probability <= 1.0)) {
    throw ValidationError("fault_probability must lie in [0,1]");
  }
}

ClassicalChannel::ClassicalChannel(std::vector<std::size_t> tamper_bob_positions)
    : tamper_b_(std::move(tamper_bob_positions)) {
  std::sort(tamper_b_.begin(), tamper_b_.end());
  tamper_b_.erase(std::unique(tamper_b_.begin(), tamper_b_.end()), tamper_b_.end());
}

BitString ClassicalChannel::SendA(const BitString& bits) {
  m_a_.Append(bits);
  m_a_recv_.Append(bits);
  return bits;
}

BitString ClassicalChannel::SendB(const BitString& bits) {
  std::size_t offset = m_b_.size();
  m_b_.Append(bits);
  BitString received = bits;
  auto it = std::lower_bound(tamper_b_.begin(), tamper_b_.end(), offset);
  for (; it != tamper_b_.end() && *it < offset + bits.size(); ++it) {
    received.flip(*it - offset);
  }
  m_b_recv_.Append(received);
  return received;
}

BitString QkdResult::KeyA() const { return ToeplitzHash(corrected_a, pa_seed_a, pa_length_a); }
BitString QkdResult::KeyB() const { return ToeplitzHash(corrected_b, pa_seed_b, pa_length_b); }

std::size_t DefaultPaLength(std::size_t sifted, double pe_threshold, std::size_t leak) {
  double rate = 1.0 - 2.0 * quantum::BinaryEntropy(pe_threshold);
  double raw = std::floor(static_cast<double>(sifted) * rate) - static_cast<double>(leak);
  return raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
}

BitString ToeplitzHash(const BitString& input, std::uint64_t seed, std::size_t out_bits) {
  const std::size_t n = input.size();
  BitString out(out_bits);
  if (n == 0 || out_bits == 0) return out;
  // out_i = parity(s[i .. i+n) & reversed(input)).
  const std::size_t seed_bits = n + out_bits - 1;
  std::vector<std::uint64_t> s((seed_bits + 63) / 64 + 1, 0);
  Rng rng(seed);
  for (std::size_t w = 0; w + 1 < s.size(); ++w) s[w] = rng();
  if (seed_bits % 64 != 0) s[s.size() - 2] &= (std::uint64_t{1} << (seed_bits % 64)) - 1;
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> r(words, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (input[n - 1 - k]) r[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  for (std::size_t i = 0; i < out_bits; ++i) {
    std::size_t base = i / 64;
    unsigned shift = static_cast<unsigned>(i % 64);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t lo = s[base + w];
      std::uint64_t hi = base + w + 1 < s.size() ? s[base + w + 1] : 0;
      std::uint64_t window = shift == 0 ? lo : (lo >> shift) | (hi << (64 - shift));
      acc ^= window & r[w];
    }
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

QkdResult RunToyQkd(const QkdConfig& config, std::uint64_t seed) {
  ClassicalChannel channel;
  return RunToyQkd(config, seed, channel);
}

QkdResult RunToyQkd(const QkdConfig& config, std::uint64_t seed, ClassicalChannel& ch) {
  config.Validate();
  Rng alice(DeriveSeed(seed, 1));
  Rng bob(DeriveSeed(seed, 2));
  Rng noise(DeriveSeed(seed, 3));
  const std::size_t n = static_cast<std::size_t>(config.signal_count);
  QkdResult r;

  // Quantum phase.
  r.faulted = Bernoulli(noise, config.fault_probability);
  const double qber = r.faulted ? 0.5 : config.channel_qber;
  BitString a = RandomBits(alice, n);
  BitString alpha = RandomBits(alice, n);
  BitString beta = RandomBits(bob, n);
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool flip = Bernoulli(noise, qber);
    bool coin = (noise() & 1) != 0;
    b.set(i, alpha[i] == beta[i] ? (a[i] != flip) : coin);
  }
  r.raw_a = a;
  r.raw_b = b;

  // Sifting.
  BitString beta_hat = ch.SendB(beta);
  BitString alpha_hat = ch.SendA(alpha);
  std::vector<std::size_t> sift_a, sift_b;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == beta_hat[i]) sift_a.push_back(i);
    if (alpha_hat[i] == beta[i]) sift_b.push_back(i);
  }
  r.sifted_a = sift_a.size();
  r.sifted_b = sift_b.size();

  // Parameter estimation on a seeded sample of the sifted positions.
  std::uint64_t sample_seed = alice();
  std::uint64_t sample_seed_b = ch.SendA(BitString::FromUint(sample_seed, 64)).ToUint();
  BitString sample_a, sample_b, x, y;
  for (std::size_t k = 0; k < sift_a.size(); ++k) {
    (Sampled(sample_seed, k, config.pe_sample_fraction) ? sample_a : x).push_back(a[sift_a[k]]);
  }
  for (std::size_t k = 0; k < sift_b.size(); ++k) {
    (Sampled(sample_seed_b, k, config.pe_sample_fraction) ? sample_b : y).push_back(b[sift_b[k]]);
  }
  r.sample_size = sample_a.size();
  BitString sample_a_at_b = ch.SendA(sample_a);
  BitString sample_b_at_a = ch.SendB(sample_b);
  r.qber_estimate_a = SampleErrorRate(sample_a, sample_b_at_a);
  r.qber_estimate_b = SampleErrorRate(sample_b, sample_a_at_b);
  r.pe_pass_a = !sample_a.empty() && r.qber_estimate_a <= config.pe_threshold;
  r.pe_pass_b = !sample_b.empty() && r.qber_estimate_b <= config.pe_threshold;

  // Cascade. Alice holds the reference; Bob corrects.
  const std::size_t na = x.size(), nb = y.size();
  // First block sized for the worst QBER that estimation accepts; a small
  // sample often estimates zero.
  double q = std::clamp(std::max(r.qber_estimate_a, config.pe_threshold), 0.005, 0.5);
  std::size_t k1 = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(0.73 / q)));
  k1 = std::min<std::size_t>(k1, 0xffff);
  r.block_size = static_cast<int>(k1);
  std::uint64_t perm_seed = alice();
  std::size_t k1_b = std::max<std::uint64_t>(1, ch.SendA(BitString::FromUint(k1, 16)).ToUint());
  std::uint64_t perm_seed_b = ch.SendA(BitString::FromUint(perm_seed, 64)).ToUint();

  std::vector<Pass> pass_a, pass_b;
  std::vector<BitString> parity_at_b;
  std::size_t searches = 0;
  const std::size_t max_searches = EcSearchBudget(config, nb);
  for (int p = 0; p < config.ec_passes; ++p) {
    pass_a.push_back(MakePass(na, perm_seed, p, k1));
    pass_b.push_back(MakePass(nb, perm_seed_b, p, k1_b));
    const Pass& pa = pass_a.back();
    BitString par(pa.blocks);
    for (std::size_t blk = 0; blk < pa.blocks; ++blk) {
      auto [lo, hi] = BlockRange(pa, blk, na);
      par.set(blk, RangeParity(x, pa.perm, lo, hi));
    }
    r.leak += pa.blocks;
    parity_at_b.push_back(ch.SendA(par));

    std::deque<std::pair<int, std::size_t>> queue;
    for (std::size_t blk = 0; blk < pass_b[static_cast<std::size_t>(p)].blocks; ++blk) {
      queue.emplace_back(p, blk);
    }
    while (!queue.empty() && searches < max_searches) {
      auto [qp, blk] = queue.front();
      queue.pop_front();
      const Pass& pb = pass_b[static_cast<std::size_t>(qp)];
      const BitString& alice_par = parity_at_b[static_cast<std::size_t>(qp)];
      if (blk >= alice_par.size() || blk >= pb.blocks) continue;
      auto [lo_b, hi_b] = BlockRange(pb, blk, nb);
      if (RangeParity(y, pb.perm, lo_b, hi_b) == alice_par[blk]) continue;
      ++searches;

      // Bob names the block; Alice parses the request against her layout.
      BitString req = BitString::FromUint(static_cast<std::uint64_t>(qp), 8);
      req.AppendUint(blk, 32);
      BitString req_at_a = ch.SendB(req);
      std::size_t qa = static_cast<std::size_t>(req_at_a.ReadUint(0, 8));
      std::size_t blk_a = static_cast<std::size_t>(req_at_a.ReadUint(8, 32));
      bool valid = qa < pass_a.size() && blk_a < pass_a[qa].blocks;
      std::size_t lo_a = 0, hi_a = 0;
      if (valid) std::tie(lo_a, hi_a) = BlockRange(pass_a[qa], blk_a, na);

      while (hi_b - lo_b > 1) {
        std::size_t mid_b = (lo_b + hi_b) / 2;
        std::size_t mid_a = (lo_a + hi_a) / 2;
        bool alice_bit = valid && RangeParity(x, pass_a[qa].perm, lo_a, mid_a);
        ++r.leak;
        BitString ab(1, alice_bit);
        bool alice_bit_at_b = ch.SendA(ab)[0];
        bool left = alice_bit_at_b != RangeParity(y, pb.perm, lo_b, mid_b);
        (left ? hi_b : lo_b) = mid_b;
        BitString choice(1, !left);
        bool right_at_a = ch.SendB(choice)[0];
        (right_at_a ? lo_a : hi_a) = mid_a;
      }
      std::size_t j = pb.perm[lo_b];
      y.flip(j);
      for (int other = 0; other <= p; ++other) {
        if (other == qp) continue;
        const Pass& po = pass_b[static_cast<std::size_t>(other)];
        queue.emplace_back(other, po.where[j] / po.block);
      }
    }
  }

  // Verification of the corrected keys.
  const int vt = config.verification_tag_bits;
  auth::HashFamilyParams vp = auth::MakeHashFamilyParams(std::max(config.signal_count, vt), vt);
  BitString ver_key = RandomBits(alice, static_cast<std::size_t>(vp.key_bits));
  BitString ver_key_b = ch.SendA(ver_key);
  BitString tag_a = auth::HashTag(vp, ver_key, x);
  BitString tag_a_at_b = ch.SendA(tag_a);
  r.leak += static_cast<std::size_t>(vt);
  r.verify_b = auth::HashTag(vp, ver_key_b, y) == tag_a_at_b;
  r.verify_a = ch.SendB(BitString(1, r.verify_b))[0];
  r.i_pe_a = r.pe_pass_a && r.verify_a;
  r.i_pe_b = r.pe_pass_b && r.verify_b;
  r.corrected_a = std::move(x);
  r.corrected_b = std::move(y);

  // Privacy amplification parameters, announced by Alice.
  r.pa_seed_a = alice();
  r.pa_length_a = config.pa_output_bits > 0
                      ? static_cast<std::size_t>(config.pa_output_bits)
                      : DefaultPaLength(r.sifted_a, config.pe_threshold, r.leak);
  r.pa_seed_b = ch.SendA(BitString::FromUint(r.pa_seed_a, 64)).ToUint();
  r.pa_length_b = std::min<std::size_t>(
      ch.SendA(BitString::FromUint(r.pa_length_a, 32)).ToUint(), 4 * n);

  r.m_a = ch.m_a();
  r.m_a_received = ch.m_a_received();
  r.m_b = ch.m_b();
  r.m_b_received = ch.m_b_received();
  return r;
}

}  // namespace qpvkex::kex
