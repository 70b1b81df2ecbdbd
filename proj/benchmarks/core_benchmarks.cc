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

#include <benchmark/benchmark.h>

#include "qpvkex/auth_codes.h"
#include "qpvkex/bounds.h"
#include "qpvkex/delta_table.h"
#include "qpvkex/key_exchange.h"
#include "qpvkex/msg_auth.h"
#include "qpvkex/qpv.h"
#include "qpvkex/random.h"

namespace qpvkex {
namespace {

void BM_CodecRoundTrip(benchmark::State& state) {
  auth::CodecParams p = auth::MakeCodecParams(static_cast<int>(state.range(0)));
  Rng rng(1);
  BitString key = RandomBits(rng, static_cast<std::size_t>(p.key_bits));
  for (auto _ : state) {
    BitString word = auth::Encode(p, key);
    benchmark::DoNotOptimize(auth::Decode(p, word));
  }
}
BENCHMARK(BM_CodecRoundTrip)->Arg(4)->Arg(12)->Arg(32)->Arg(62);

void BM_HashTag(benchmark::State& state) {
  auth::HashFamilyParams p = auth::MakeHashFamilyParams(static_cast<int>(state.range(0)), 16);
  Rng rng(2);
  BitString key = RandomBits(rng, static_cast<std::size_t>(p.key_bits));
  BitString message = RandomBits(rng, static_cast<std::size_t>(p.message_bits));
  for (auto _ : state) benchmark::DoNotOptimize(auth::HashTag(p, key, message));
  state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_HashTag)->Arg(64)->Arg(4096)->Arg(65536);

void BM_QpvSingleHonest(benchmark::State& state) {
  qpv::QpvConfig c;
  c.rounds = static_cast<int>(state.range(0));
  c.eta = 0.8;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpv::RunQpvSingle(c, qpv::ProverStrategy::Honest(0.8), ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QpvSingleHonest)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MsgAuthHonest(benchmark::State& state) {
  qpv::QpvConfig q = msgauth::MsgAuthConfig::DefaultQpv();
  msgauth::MsgAuthConfig c = msgauth::MsgAuthConfig::Make(static_cast<int>(state.range(0)), 16, q);
  BitString message(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(msgauth::SendAuthenticated(c, message, msgauth::MsgAdversary::None(), ++seed));
  }
}
BENCHMARK(BM_MsgAuthHonest)->Arg(16)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_Protocol3Honest(benchmark::State& state) {
  kex::QkdConfig qkd;
  qkd.signal_count = static_cast<int>(state.range(0));
  qkd.channel_qber = 0.02;
  qpv::QpvConfig q = msgauth::MsgAuthConfig::DefaultQpv();
  q.rounds = 16;
  msgauth::MsgAuthConfig auth =
      msgauth::MsgAuthConfig::Make(kex::TranscriptHashParams(qkd, 16).message_bits, 16, q);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kex::RunProtocol3(qkd, auth, q, kex::ChannelAdversary::None(), ++seed));
  }
}
BENCHMARK(BM_Protocol3Honest)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LpBruteForce(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::LpBruteForceOracle(0.9, 0.5, 0.2, 0.5, 0.3, step));
  }
}
BENCHMARK(BM_LpBruteForce)->Arg(100)->Arg(1000);

void BM_OptimizeThresholds(benchmark::State& state) {
  bounds::DeltaTildeTable table = bounds::LoadDeltaTable(QPVKEX_DATA_DIR "/delta_tilde_stub.json");
  bounds::ThresholdGrid grid;
  grid.refine = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::OptimizeThresholds(0.85, 10.0, 1e-10, table, grid));
  }
}
BENCHMARK(BM_OptimizeThresholds)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qpvkex

BENCHMARK_MAIN();
