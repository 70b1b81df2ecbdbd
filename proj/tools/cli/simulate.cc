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

#include <cmath>
#include <cstdint>
#include <sstream>
#include <thread>

#include "commands.h"
#include "qpvkex/errors.h"
#include "qpvkex/key_exchange.h"
#include "qpvkex/msg_auth.h"
#include "qpvkex/qkd.h"
#include "qpvkex/qpv.h"
#include "qpvkex/random.h"
#include "qpvkex/trials.h"

namespace qpvkex::cli {
namespace {

constexpr double kPi = 3.14159265358979323846;

Param Seed() {
  return {"seed", ParamType::kUint, std::uint64_t{1}, "base seed; trial i uses a seed derived from it", {}};
}

unsigned Workers(const Json& c) {
  int p = GetInt(c, "parallel");
  if (p < 0) throw ValidationError("parallel must be nonnegative");
  if (p == 0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(p);
}

std::size_t TrialCount(const Json& c) {
  int t = GetInt(c, "trials");
  if (t < 1) throw ValidationError("trials must be at least 1");
  return static_cast<std::size_t>(t);
}

Json RateOrNull(std::int64_t num, std::int64_t den) {
  if (den == 0) return nullptr;
  return static_cast<double>(num) / static_cast<double>(den);
}

// ---- simulate qpv ----------------------------------------------------------

std::vector<Param> QpvParams() {
  return {
      Seed(),
      ChoiceParam("strategy", "honest",
             {"honest", "absent", "basis-guess", "fixed-basis", "abstract-pass", "offset-relay"},
             "prover strategy"),
      ChoiceParam("mode", "single", {"single", "multi"}, "two-basis protocol or multi-basis variant"),
      IntParam("rounds", 1000, "rounds per run"),
      IntParam("n_bits", 16, "length of each of x and y"),
      RealParam("eta", 1.0, "honest detection probability; also the verifiers' expected transmission"),
      RealParam("error_threshold", 0.1, "conditional error threshold"),
      RealParam("deviation_threshold", 0.03, "total deviation threshold (multi mode)"),
      IntParam("num_bases", 2, "number of measurement bases (multi mode)"),
      RealParam("channel_noise", 0.0, "honest outcome flip probability"),
      RealParam("run_fault_probability", 0.0, "probability that a whole run is lost"),
      RealParam("distance", 1.0, "verifiers sit at -distance and +distance"),
      RealParam("quantum_speed", 1.0, "quantum signal speed as a fraction of c"),
      {"function_seed", ParamType::kUint, std::uint64_t{0x5eed}, "seed of the public basis function", {}},
      RealParam("fixed_angle", kPi / 8, "fixed-basis measurement angle in state space"),
      RealParam("pass_probability", 0.0, "abstract-pass success probability"),
      RealParam("offset", 0.5, "offset-relay position"),
      RealParam("adversary_offset", 0.5, "colluders sit at -offset and +offset"),
      IntParam("trials", 1, "independent runs"),
      IntParam("parallel", 1, "worker threads; 0 uses all cores"),
      TextParam("sweep", "", "eta sweep START:STOP:STEP; emits one CSV row per eta"),
      BoolParam("emit_trials", false, "include per-run summaries"),
  };
}

qpv::QpvConfig QpvConfigFrom(const Json& c) {
  qpv::QpvConfig q;
  q.rounds = GetInt(c, "rounds");
  q.n_bits = GetInt(c, "n_bits");
  q.eta = GetReal(c, "eta");
  q.error_threshold = GetReal(c, "error_threshold");
  q.deviation_threshold = GetReal(c, "deviation_threshold");
  q.num_bases = GetInt(c, "num_bases");
  q.channel_noise = GetReal(c, "channel_noise");
  q.run_fault_probability = GetReal(c, "run_fault_probability");
  q.distance = GetReal(c, "distance");
  q.quantum_speed = GetReal(c, "quantum_speed");
  q.function_seed = GetUint(c, "function_seed");
  q.Validate();
  return q;
}

qpv::ProverStrategy StrategyFrom(const Json& c) {
  const std::string s = GetString(c, "strategy");
  qpv::ProverStrategy out;
  if (s == "honest") out = qpv::ProverStrategy::Honest(GetReal(c, "eta"));
  if (s == "absent") out = qpv::ProverStrategy::Absent();
  if (s == "basis-guess") out = qpv::ProverStrategy::BasisGuess();
  if (s == "fixed-basis") out = qpv::ProverStrategy::FixedBasis(GetReal(c, "fixed_angle"));
  if (s == "abstract-pass") out = qpv::ProverStrategy::AbstractPass(GetReal(c, "pass_probability"));
  if (s == "offset-relay") out = qpv::ProverStrategy::OffsetRelay(GetReal(c, "offset"));
  out.adversary_offset = GetReal(c, "adversary_offset");
  return out;
}

struct QpvTrial {
  std::int64_t rounds = 0, detections = 0, errors = 0, timing = 0, mismatch = 0;
  double total_deviation = 0.0;
  bool pass = false;
  bool faulted = false;
};

Json TrialJson(const QpvTrial& t, bool multi) {
  Json j;
  j["rounds"] = t.rounds;
  j["detections"] = t.detections;
  j["errors"] = t.errors;
  j["transmission"] = RateOrNull(t.detections, t.rounds);
  j["conditional_error"] = RateOrNull(t.errors, t.detections);
  j["total_deviation"] = multi ? Json(t.total_deviation) : Json(nullptr);
  j["verdict"] = t.pass ? "pass" : "fail";
  return j;
}

struct QpvAggregate {
  Json json;
  double transmission = 0.0;
  Json conditional_error;
  double pass_rate = 0.0;
};

QpvAggregate RunQpvBatch(const Json& c) {
  qpv::QpvConfig config = QpvConfigFrom(c);
  qpv::ProverStrategy strategy = StrategyFrom(c);
  strategy.Validate(config);
  const bool multi = GetString(c, "mode") == "multi";
  auto trials = RunTrials(TrialCount(c), GetUint(c, "seed"), Workers(c),
                          [&](std::size_t, std::uint64_t seed) {
                            QpvTrial t;
                            const qpv::QpvStats* stats = nullptr;
                            qpv::QpvRunResult single;
                            qpv::QpvMultiResult many;
                            if (multi) {
                              many = qpv::RunQpvMultiBasis(config, strategy, seed);
                              stats = &many.stats;
                              t.total_deviation = many.total_deviation;
                              t.pass = many.verdict == qpv::Verdict::kPass;
                              t.faulted = many.faulted;
                            } else {
                              single = qpv::RunQpvSingle(config, strategy, seed);
                              stats = &single.stats;
                              t.pass = single.verdict == qpv::Verdict::kPass;
                              t.faulted = single.faulted;
                            }
                            t.rounds = stats->rounds_run;
                            t.detections = stats->detections;
                            t.errors = stats->errors;
                            t.timing = stats->timing_failures;
                            t.mismatch = stats->mismatch_failures;
                            return t;
                          });
  QpvTrial sum;
  std::int64_t passes = 0;
  double deviation = 0.0;
  for (const auto& t : trials) {
    sum.rounds += t.rounds;
    sum.detections += t.detections;
    sum.errors += t.errors;
    sum.timing += t.timing;
    sum.mismatch += t.mismatch;
    passes += t.pass;
    deviation += t.total_deviation;
  }
  QpvAggregate agg;
  Json& j = agg.json;
  j["strategy"] = GetString(c, "strategy");
  j["mode"] = GetString(c, "mode");
  j["trials"] = trials.size();
  j["passes"] = passes;
  j["pass_rate"] = static_cast<double>(passes) / static_cast<double>(trials.size());
  j["rounds"] = sum.rounds;
  j["detections"] = sum.detections;
  j["errors"] = sum.errors;
  j["transmission"] = RateOrNull(sum.detections, sum.rounds);
  j["conditional_error"] = RateOrNull(sum.errors, sum.detections);
  j["timing_failures"] = sum.timing;
  j["mismatch_failures"] = sum.mismatch;
  j["mean_total_deviation"] =
      multi ? Json(deviation / static_cast<double>(trials.size())) : Json(nullptr);
  if (GetBool(c, "emit_trials")) {
    Json list = Json::array();
    for (const auto& t : trials) list.push_back(TrialJson(t, multi));
    j["per_trial"] = std::move(list);
  }
  agg.transmission = sum.rounds ? static_cast<double>(sum.detections) / static_cast<double>(sum.rounds) : 0.0;
  agg.conditional_error = j["conditional_error"];
  agg.pass_rate = j["pass_rate"].get<double>();
  return agg;
}

std::vector<double> ParseSweep(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("sweep must be START:STOP:STEP, got '" + text + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw ValidationError("sweep must be START:STOP:STEP with STEP > 0 and STOP >= START");
  }
  std::vector<double> values;
  const long steps = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long i = 0; i <= steps; ++i) values.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return values;
}

CommandResult RunSimulateQpv(const Json& c) {
  CommandResult out;
  const std::string sweep = GetString(c, "sweep");
  if (sweep.empty()) {
    out.result = RunQpvBatch(c).json;
    return out;
  }
  out.preferred = Format::kCsv;
  out.csv_header = {"eta", "transmission", "conditional_error", "pass_rate"};
  Json points = Json::array();
  for (double eta : ParseSweep(sweep)) {
    Json point_config = c;
    point_config["eta"] = eta;
    QpvAggregate agg = RunQpvBatch(point_config);
    Json p;
    p["eta"] = eta;
    p["transmission"] = agg.transmission;
    p["conditional_error"] = agg.conditional_error;
    p["pass_rate"] = agg.pass_rate;
    out.csv_rows.push_back({FormatReal(eta), FormatReal(agg.transmission),
                            agg.conditional_error.is_null() ? "" : agg.conditional_error.dump(),
                            FormatReal(agg.pass_rate)});
    points.push_back(std::move(p));
  }
  out.result["strategy"] = GetString(c, "strategy");
  out.result["sweep"] = std::move(points);
  return out;
}

// ---- simulate msgauth ------------------------------------------------------

std::vector<Param> MsgAuthParams() {
  return {
      Seed(),
      IntParam("trials", 100, "independent transfers"),
      IntParam("parallel", 1, "worker threads; 0 uses all cores"),
      IntParam("message_bits", 16, "hash family message length n"),
      IntParam("tag_bits", 8, "tag length l_T"),
      IntParam("qpv_rounds", 64, "rounds per QPV run"),
      RealParam("qpv_eta", 1.0, "honest detection probability in each QPV run"),
      ChoiceParam("adversary", "none",
             {"none", "flip-one-to-zero", "flip-zero-to-one", "swap", "desync", "delay-msg-tag",
              "delay-learn-key"},
             "channel adversary"),
      {"runs", ParamType::kIntList, Json::array(), "1-based run indices for the flip adversaries", {}},
      RealParam("force_probability", 0.1, "chance of passing a QPV run without the sender"),
      IntParam("shift", 1, "desync shift in run slots"),
      TextParam("message_mask", "", "xor mask on the message (binary or 0x hex); empty flips bit 1"),
      TextParam("tag_mask", "", "xor mask on the tag (binary or 0x hex); empty leaves the tag"),
      BoolParam("emit_trials", false, "include per-transfer outcomes"),
  };
}

msgauth::MsgAuthConfig MsgAuthConfigFrom(const Json& c) {
  qpv::QpvConfig q = msgauth::MsgAuthConfig::DefaultQpv();
  q.rounds = GetInt(c, "qpv_rounds");
  q.eta = GetReal(c, "qpv_eta");
  msgauth::MsgAuthConfig m =
      msgauth::MsgAuthConfig::Make(GetInt(c, "message_bits"), GetInt(c, "tag_bits"), q);
  m.Validate();
  return m;
}

msgauth::MsgAdversary MsgAdversaryFrom(const Json& c, const msgauth::MsgAuthConfig& m) {
  const std::string kind = GetString(c, "adversary");
  const double eps = GetReal(c, "force_probability");
  auto message_mask = [&] {
    BitString mask = ParseBitsText("message_mask", GetString(c, "message_mask"),
                                  static_cast<std::size_t>(m.hash.message_bits));
    if (mask.empty()) {
      mask = BitString(static_cast<std::size_t>(m.hash.message_bits));
      mask.set(0, true);
    }
    return mask;
  };
  msgauth::MsgAdversary a;
  if (kind == "flip-one-to-zero") a = msgauth::MsgAdversary::FlipOneToZero(GetIntList(c, "runs"));
  if (kind == "flip-zero-to-one") a = msgauth::MsgAdversary::FlipZeroToOne(GetIntList(c, "runs"), eps);
  if (kind == "swap") a = msgauth::MsgAdversary::Swap(eps);
  if (kind == "desync") a = msgauth::MsgAdversary::Desync(GetInt(c, "shift"), eps);
  if (kind == "delay-msg-tag") {
    a = msgauth::MsgAdversary::DelayMsgTag(
        message_mask(), ParseBitsText("tag_mask", GetString(c, "tag_mask"),
                                     static_cast<std::size_t>(m.hash.tag_bits)));
  }
  if (kind == "delay-learn-key") a = msgauth::MsgAdversary::DelayLearnKey(message_mask(), eps);
  a.Validate(m);
  return a;
}

struct MsgTrial {
  bool auth_pass = false;
  bool tamper_check_pass = false;
  bool key_recovered = false;
  bool key_mismatch_accepted = false;
  bool forged_accept = false;
  std::string key, decoded;
};

CommandResult RunSimulateMsgAuth(const Json& c) {
  msgauth::MsgAuthConfig m = MsgAuthConfigFrom(c);
  msgauth::MsgAdversary adversary = MsgAdversaryFrom(c, m);
  auto trials = RunTrials(TrialCount(c), GetUint(c, "seed"), Workers(c),
                          [&](std::size_t, std::uint64_t seed) {
                            Rng message_rng(DeriveSeed(seed, 1));
                            BitString message =
                                RandomBits(message_rng, static_cast<std::size_t>(m.hash.message_bits));
                            msgauth::MsgAuthOutcome o =
                                msgauth::SendAuthenticated(m, message, adversary, DeriveSeed(seed, 2));
                            MsgTrial t;
                            t.auth_pass = o.auth_pass;
                            t.tamper_check_pass = o.tamper_check_pass;
                            t.key_recovered = o.decoded_key && *o.decoded_key == o.key;
                            t.key_mismatch_accepted = o.KeyMismatchAccepted();
                            t.forged_accept = o.auth_pass && o.message_received != message;
                            t.key = o.key.ToBinary();
                            t.decoded = o.decoded_key ? o.decoded_key->ToBinary() : std::string();
                            return t;
                          });
  std::int64_t auth = 0, tc = 0, rec = 0, mis = 0, forged = 0;
  for (const auto& t : trials) {
    auth += t.auth_pass;
    tc += t.tamper_check_pass;
    rec += t.key_recovered;
    mis += t.key_mismatch_accepted;
    forged += t.forged_accept;
  }
  const auto n = static_cast<std::int64_t>(trials.size());
  const double eps = GetReal(c, "force_probability");
  CommandResult out;
  Json& j = out.result;
  j["adversary"] = GetString(c, "adversary");
  j["parameters"] = {{"key_bits", m.hash.key_bits},
                     {"half_length", m.codec.half_length},
                     {"code_length", m.codec.code_length},
                     {"runs", m.Runs()},
                     {"delta", m.hash.delta},
                     {"effective_delta", m.hash.EffectiveDelta()}};
  j["trials"] = n;
  j["counts"] = {{"auth_pass", auth},
                 {"tamper_check_pass", tc},
                 {"key_recovered", rec},
                 {"key_mismatch_accepted", mis},
                 {"forged_accept", forged}};
  j["rates"] = {{"auth_pass", RateOrNull(auth, n)},
                {"tamper_check_pass", RateOrNull(tc, n)},
                {"key_recovered", RateOrNull(rec, n)},
                {"key_mismatch_accepted", RateOrNull(mis, n)},
                {"forged_accept", RateOrNull(forged, n)}};
  j["soundness_bound"] =
      msgauth::SoundnessBoundMsgAuth(m.hash.key_bits, eps, m.hash.EffectiveDelta()).value;
  if (GetBool(c, "emit_trials")) {
    Json list = Json::array();
    for (const auto& t : trials) {
      list.push_back({{"auth_pass", t.auth_pass},
                      {"tamper_check_pass", t.tamper_check_pass},
                      {"key", t.key},
                      {"decoded_key", t.decoded.empty() ? Json(nullptr) : Json(t.decoded)}});
    }
    j["per_trial"] = std::move(list);
  }
  return out;
}

// ---- simulate keyexchange --------------------------------------------------

std::vector<Param> KeyExchangeParams() {
  return {
      Seed(),
      IntParam("trials", 10, "independent exchanges"),
      IntParam("parallel", 1, "worker threads; 0 uses all cores"),
      IntParam("protocol", 3, "1: one-way authenticated channel; 3: QPV-authenticated transfer"),
      ChoiceParam("adversary", "none",
             {"none", "tamper-bob-messages", "tamper-tag", "block-final-qpv",
              "impersonate-at-wrong-position"},
             "channel adversary"),
      {"positions", ParamType::kIntList, Json::array(), "bit positions of Bob's stream to flip", {}},
      RealParam("force_probability", 0.0, "chance of passing a QPV run in Bob's absence"),
      TextParam("tag_mask", "", "xor mask on Alice's tag (binary or 0x hex); empty flips bit 1"),
      IntParam("signal_count", 1000, "QKD signals"),
      RealParam("channel_qber", 0.0, "QKD channel bit error rate"),
      RealParam("pe_threshold", 0.05, "parameter estimation threshold"),
      RealParam("pe_sample_fraction", 0.1, "fraction of sifted bits sampled for estimation"),
      IntParam("ec_passes", 4, "error correction passes"),
      RealParam("fault_probability", 0.0, "chance that the QKD quantum phase is disrupted"),
      IntParam("verification_tag_bits", 32, "tag length of the key verification hash"),
      IntParam("tag_bits", 16, "transcript tag length l_T"),
      IntParam("qpv_rounds", 64, "rounds per QPV run"),
      RealParam("qpv_eta", 1.0, "honest detection probability in each QPV run"),
      RealParam("qpv_fault_probability", 0.0, "chance that a QPV run is lost"),
      RealParam("alice_channel_loss", 0.0, "protocol 1: loss probability of Alice's hash message"),
      BoolParam("emit_trials", false, "include per-exchange outcomes"),
  };
}

kex::QkdConfig QkdConfigFrom(const Json& c) {
  kex::QkdConfig q;
  q.signal_count = GetInt(c, "signal_count");
  q.channel_qber = GetReal(c, "channel_qber");
  q.pe_threshold = GetReal(c, "pe_threshold");
  q.pe_sample_fraction = GetReal(c, "pe_sample_fraction");
  q.ec_passes = GetInt(c, "ec_passes");
  q.fault_probability = GetReal(c, "fault_probability");
  q.verification_tag_bits = GetInt(c, "verification_tag_bits");
  q.Validate();
  return q;
}

kex::ChannelAdversary ChannelAdversaryFrom(const Json& c) {
  const std::string kind = GetString(c, "adversary");
  const double eps = GetReal(c, "force_probability");
  kex::ChannelAdversary a;
  if (kind == "tamper-bob-messages") {
    std::vector<std::size_t> positions;
    for (int p : GetIntList(c, "positions")) {
      if (p < 0) throw ValidationError("tamper positions must be nonnegative");
      positions.push_back(static_cast<std::size_t>(p));
    }
    a = kex::ChannelAdversary::TamperBobMessages(positions, eps);
  }
  if (kind == "tamper-tag") {
    a = kex::ChannelAdversary::TamperTag(ParseBitsText(
        "tag_mask", GetString(c, "tag_mask"), static_cast<std::size_t>(GetInt(c, "tag_bits"))));
  }
  if (kind == "block-final-qpv") a = kex::ChannelAdversary::BlockFinalQpv();
  if (kind == "impersonate-at-wrong-position") a = kex::ChannelAdversary::ImpersonateAtWrongPosition(eps);
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("force_probability must lie in [0,1]");
  a.force_probability = eps;
  return a;
}

const std::vector<std::pair<const char*, bool kex::Indicators::*>>& IndicatorFields() {
  static const std::vector<std::pair<const char*, bool kex::Indicators::*>> fields = {
      {"i_pe_a", &kex::Indicators::i_pe_a},
      {"i_pe_b", &kex::Indicators::i_pe_b},
      {"i", &kex::Indicators::i},
      {"i_qpv", &kex::Indicators::i_qpv},
      {"omega_m", &kex::Indicators::omega_m},
      {"omega_pe_a", &kex::Indicators::omega_pe_a},
      {"omega_pe_b", &kex::Indicators::omega_pe_b},
      {"omega_pe_a_ideal", &kex::Indicators::omega_pe_a_ideal},
      {"omega_pe_b_ideal", &kex::Indicators::omega_pe_b_ideal},
      {"omega_h", &kex::Indicators::omega_h},
      {"omega_qpv", &kex::Indicators::omega_qpv},
      {"omega_k", &kex::Indicators::omega_k},
      {"omega_t", &kex::Indicators::omega_t},
  };
  return fields;
}

CommandResult RunSimulateKeyExchange(const Json& c) {
  const int protocol = GetInt(c, "protocol");
  if (protocol != 1 && protocol != 3) throw ValidationError("protocol must be 1 or 3");
  kex::QkdConfig qkd = QkdConfigFrom(c);
  qpv::QpvConfig q = msgauth::MsgAuthConfig::DefaultQpv();
  q.rounds = GetInt(c, "qpv_rounds");
  q.eta = GetReal(c, "qpv_eta");
  q.run_fault_probability = GetReal(c, "qpv_fault_probability");
  q.Validate();
  kex::ChannelAdversary adversary = ChannelAdversaryFrom(c);
  auth::HashFamilyParams hash = kex::TranscriptHashParams(qkd, GetInt(c, "tag_bits"));
  msgauth::MsgAuthConfig m = msgauth::MsgAuthConfig::Make(hash.message_bits, hash.tag_bits, q);
  kex::Protocol1Options options;
  options.alice_channel_loss = GetReal(c, "alice_channel_loss");
  if (!(options.alice_channel_loss >= 0.0 && options.alice_channel_loss <= 1.0)) {
    throw ValidationError("alice_channel_loss must lie in [0,1]");
  }

  auto outcomes = RunTrials(TrialCount(c), GetUint(c, "seed"), Workers(c),
                            [&](std::size_t, std::uint64_t seed) {
                              return protocol == 1
                                         ? kex::RunProtocol1(qkd, q, hash, adversary, seed, options)
                                         : kex::RunProtocol3(qkd, m, q, adversary, seed);
                            });

  std::vector<std::pair<std::string, std::int64_t>> counts = {
      {"key_a", 0}, {"key_b", 0}, {"keys_agree", 0}, {"aborted", 0}, {"key_a_only", 0}, {"key_b_only", 0}};
  for (const auto& [name, field] : IndicatorFields()) counts.emplace_back(name, 0);
  for (const auto& o : outcomes) {
    std::size_t k = 0;
    counts[k++].second += o.key_a.has_value();
    counts[k++].second += o.key_b.has_value();
    counts[k++].second += o.key_a && o.key_b && *o.key_a == *o.key_b;
    counts[k++].second += o.Aborted();
    counts[k++].second += o.key_a && !o.key_b;
    counts[k++].second += !o.key_a && o.key_b;
    for (const auto& [name, field] : IndicatorFields()) counts[k++].second += o.indicators.*field;
  }
  const auto n = static_cast<std::int64_t>(outcomes.size());
  CommandResult out;
  Json& j = out.result;
  j["protocol"] = protocol;
  j["adversary"] = GetString(c, "adversary");
  j["hash"] = {{"message_bits", hash.message_bits},
               {"tag_bits", hash.tag_bits},
               {"key_bits", hash.key_bits},
               {"delta", hash.delta},
               {"effective_delta", hash.EffectiveDelta()}};
  j["msg_auth_runs"] = protocol == 3 ? Json(m.Runs()) : Json(0);
  j["trials"] = n;
  Json count_json = Json::object(), freq_json = Json::object();
  out.csv_header = {"flag", "count", "frequency"};
  for (const auto& [name, count] : counts) {
    count_json[name] = count;
    double f = static_cast<double>(count) / static_cast<double>(n);
    freq_json[name] = f;
    out.csv_rows.push_back({name, std::to_string(count), FormatReal(f)});
  }
  j["counts"] = std::move(count_json);
  j["frequencies"] = std::move(freq_json);
  if (GetBool(c, "emit_trials")) {
    Json list = Json::array();
    for (const auto& o : outcomes) {
      Json t;
      t["key_a"] = o.key_a ? Json(o.key_a->ToHex()) : Json(nullptr);
      t["key_b"] = o.key_b ? Json(o.key_b->ToHex()) : Json(nullptr);
      Json ind = Json::object();
      for (const auto& [name, field] : IndicatorFields()) ind[name] = o.indicators.*field;
      t["indicators"] = std::move(ind);
      t["transcript_digest"] = o.transcript_digest;
      t["sifted"] = o.sifted;
      t["leak"] = o.leak;
      t["qber_estimate"] = o.qber_estimate;
      list.push_back(std::move(t));
    }
    j["per_trial"] = std::move(list);
  }
  return out;
}

}  // namespace

std::vector<Command> SimulateCommands() {
  return {
      {"simulate", "qpv", "run the loss-tolerant QPV protocol against a prover strategy", QpvParams(),
       RunSimulateQpv},
      {"simulate", "msgauth", "run QPV-based message authentication against a channel adversary",
       MsgAuthParams(), RunSimulateMsgAuth},
      {"simulate", "keyexchange", "run an authenticated key exchange", KeyExchangeParams(),
       RunSimulateKeyExchange},
  };
}

}  // namespace qpvkex::cli
