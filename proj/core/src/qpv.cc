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

#include "qpvkex/qpv.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qpvkex/errors.h"
#include "qpvkex/quantum.h"

namespace qpvkex::qpv {

using spacetime::AgentHandler;
using spacetime::AgentId;
using spacetime::Delivery;
using spacetime::Payload;
using spacetime::Qubit;
using spacetime::Role;
using spacetime::Simulator;

namespace {

enum Tag : std::uint8_t {
  kTagX = 0,
  kTagY = 1,
  kTagResponse = 2,
  kTagPartner = 3,
  kTagQubit = 4,
};

constexpr std::uint8_t kNoneByte = 0xff;

std::uint64_t MulHi64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t a_lo = a & 0xffffffffULL, a_hi = a >> 32;
  std::uint64_t b_lo = b & 0xffffffffULL, b_hi = b >> 32;
  std::uint64_t lo_lo = a_lo * b_lo;
  std::uint64_t hi_lo = a_hi * b_lo;
  std::uint64_t lo_hi = a_lo * b_hi;
  std::uint64_t hi_hi = a_hi * b_hi;
  std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xffffffffULL) + lo_hi;
  return hi_hi + (hi_lo >> 32) + (cross >> 32);
}

std::uint64_t AbsorbBits(std::uint64_t h, const BitString& bits) {
  h = Mix64(h ^ bits.size());
  std::uint64_t word = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    word = (word << 1) | (bits[i] ? 1 : 0);
    if (++n == 64) {
      h = Mix64(h ^ word);
      word = 0;
      n = 0;
    }
  }
  if (n > 0) h = Mix64(h ^ word ^ (std::uint64_t{n} << 58));
  return h;
}

std::vector<std::uint8_t> EncodeBits(std::uint8_t tag, const BitString& bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size() + 1);
  out.push_back(tag);
  for (std::uint8_t b : bits.raw()) out.push_back(b);
  return out;
}

BitString DecodeBits(const std::vector<std::uint8_t>& data, std::size_t begin) {
  BitString out(data.size() - begin);
  for (std::size_t i = begin; i < data.size(); ++i) out.set(i - begin, data[i] != 0);
  return out;
}

std::uint8_t ResponseByte(Response r) {
  return r == Response::kNone ? kNoneByte : static_cast<std::uint8_t>(r);
}

Response ResponseFromByte(std::uint8_t b) {
  if (b == 0) return Response::kZero;
  if (b == 1) return Response::kOne;
  return Response::kNone;
}

Response FromBit(int bit) { return bit ? Response::kOne : Response::kZero; }

}  // namespace

void QpvConfig::Validate() const {
  if (n_bits < 1) throw ValidationError("n_bits must be at least 1");
  if (rounds < 1) throw ValidationError("rounds must be at least 1");
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in (0,1]");
  if (!(error_threshold >= 0.0 && error_threshold < 1.0)) {
    throw ValidationError("error_threshold must lie in [0,1)");
  }
  if (!(deviation_threshold >= 0.0 && deviation_threshold < 1.0)) {
    throw ValidationError("deviation_threshold must lie in [0,1)");
  }
  if (num_bases < 2) throw ValidationError("num_bases must be at least 2");
  if (!(t_delta >= 0.0)) throw ValidationError("t_delta must be non-negative");
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw ValidationError("distance must be positive");
  }
  if (!(quantum_speed > 0.0 && quantum_speed <= 1.0)) {
    throw ValidationError("quantum_speed must lie in (0,1]");
  }
  if (!std::isnan(preparer_position) && !std::isfinite(preparer_position)) {
    throw ValidationError("preparer_position must be finite");
  }
  if (!(channel_noise >= 0.0 && channel_noise <= 1.0)) {
    throw ValidationError("channel_noise must lie in [0,1]");
  }
  if (!(run_fault_probability >= 0.0 && run_fault_probability <= 1.0)) {
    throw ValidationError("run_fault_probability must lie in [0,1]");
  }
  if (!deviation_weights.empty()) {
    if (deviation_weights.size() != static_cast<std::size_t>(8 * num_bases)) {
      throw ValidationError("deviation_weights must have 8 * num_bases entries");
    }
    for (double w : deviation_weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ValidationError("deviation weights must be finite and non-negative");
      }
    }
  }
  if (delta_t != 0.0 && !(delta_t > RunDuration())) {
    throw ValidationError("delta_t must exceed the duration of one run");
  }
}

double QpvConfig::RoundSpacing() const {
  double prep = std::isnan(preparer_position) ? -distance : preparer_position;
  double lead = std::max(distance, std::abs(prep) / quantum_speed);
  return lead + 3.0 * distance + t_delta + 1.0;
}

double QpvConfig::EffectiveDeltaT() const {
  return delta_t != 0.0 ? delta_t : RunDuration() + 1.0;
}

const char* ResponseName(Response r) {
  switch (r) {
    case Response::kZero: return "0";
    case Response::kOne: return "1";
    case Response::kNone: return "none";
  }
  return "none";
}

const char* RoundVerdictName(RoundVerdict v) {
  switch (v) {
    case RoundVerdict::kOk: return "ok";
    case RoundVerdict::kTimingFail: return "timingFail";
    case RoundVerdict::kMismatchFail: return "mismatchFail";
    case RoundVerdict::kLoss: return "loss";
    case RoundVerdict::kError: return "error";
  }
  return "unknown";
}

const char* StrategyKindName(ProverStrategy::Kind kind) {
  using K = ProverStrategy::Kind;
  switch (kind) {
    case K::kHonest: return "honest";
    case K::kAbsent: return "absent";
    case K::kAbstractPass: return "abstract-pass";
    case K::kBasisGuess: return "basis-guess";
    case K::kFixedBasis: return "fixed-basis";
    case K::kOffsetRelay: return "offset-relay";
    case K::kMismatchAt: return "mismatch-at";
  }
  return "unknown";
}

QpvStats::QpvStats(int bases) : num_bases(bases) {
  for (auto& per_z : counts) {
    for (auto& per_s : per_z) per_s.assign(static_cast<std::size_t>(bases), 0);
  }
}

std::int64_t QpvStats::CellTotal(int s, int theta) const {
  return counts[0][s][theta] + counts[1][s][theta] + counts[2][s][theta];
}

double QpvStats::Transmission() const {
  if (rounds_run == 0) throw UndefinedRateError("no rounds were run");
  return static_cast<double>(detections) / static_cast<double>(rounds_run);
}

double ConditionalErrorRate(const QpvStats& stats) {
  if (stats.detections == 0) {
    throw UndefinedRateError("conditional error rate undefined without detections");
  }
  return static_cast<double>(stats.errors) /
         static_cast<double>(stats.detections);
}

void ProverStrategy::Validate(const QpvConfig& config) const {
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("strategy eta must lie in (0,1]");
  if (!(pass_probability >= 0.0 && pass_probability <= 1.0)) {
    throw ValidationError("pass probability must lie in [0,1]");
  }
  if (kind == Kind::kBasisGuess || kind == Kind::kFixedBasis) {
    if (!(adversary_offset > 0.0 && adversary_offset < config.distance)) {
      throw ValidationError("colluder offset must lie strictly between P and the verifiers");
    }
  }
  if (kind == Kind::kFixedBasis) {
    double a = 2.0 * fixed_angle;
    if (!(a >= 0.0 && a < std::numbers::pi)) {
      throw ValidationError("fixed basis angle must lie in [0, pi/2)");
    }
  }
  if (kind == Kind::kOffsetRelay && !std::isfinite(offset)) {
    throw ValidationError("relay offset must be finite");
  }
  if (kind == Kind::kMismatchAt && round < 0) {
    throw ValidationError("mismatch round must be non-negative");
  }
}

int BasisFunction(std::uint64_t seed, const BitString& x, const BitString& y,
                  int num_bases) {
  if (x.size() != y.size()) throw ValidationError("x and y must have equal length");
  if (num_bases < 1) throw ValidationError("num_bases must be positive");
  std::uint64_t h = Mix64(seed ^ 0x51ed270b27c5a1d3ULL);
  h = AbsorbBits(h, x);
  h = AbsorbBits(h ^ 0xa0761d6478bd642fULL, y);
  return static_cast<int>(MulHi64(Mix64(h), static_cast<std::uint64_t>(num_bases)));
}

double BasisAngleFor(int theta, int num_bases) {
  return theta * std::numbers::pi / num_bases;
}

// Per-round state shared by the agent handlers. Only one round is in flight
// at a time.
struct QpvSession::RoundSetup {
  const QpvConfig* config = nullptr;
  Rng* rng = nullptr;
  AgentId v1 = 0, v2 = 0;
  bool multi = false;
  bool fault = false;
  int round_index = 0;
  ProverStrategy strategy;
  // Verifier-side observations.
  Response r1 = Response::kNone, r2 = Response::kNone;
  double a1 = std::numeric_limits<double>::quiet_NaN();
  double a2 = std::numeric_limits<double>::quiet_NaN();
};

struct QpvSession::Impl {
  struct VerifierHandler : AgentHandler {
    RoundSetup* setup = nullptr;
    bool first = true;
    void OnDelivery(Simulator&, Delivery& d) override {
      if (d.record.data.empty() || d.record.data[0] != kTagResponse) return;
      if (setup->fault) return;
      Response& r = first ? setup->r1 : setup->r2;
      double& a = first ? setup->a1 : setup->a2;
      if (!std::isnan(a)) return;  // keep the first answer only
      r = ResponseFromByte(d.record.data.size() > 1 ? d.record.data[1] : kNoneByte);
      a = d.record.arrive_time;
    }
  };

  // Honest prover, abstract-pass prover, mismatching prover and the
  // off-position relay share this logic: wait for x, y and the qubit, then
  // measure in f(x,y) and answer both verifiers at once.
  struct ProverHandler : AgentHandler {
    RoundSetup* setup = nullptr;
    std::optional<BitString> x, y;
    std::optional<Qubit> q;
    bool answered = false;
    double eta = 1.0;
    double noise = 0.0;
    int mismatch_round = -1;

    void Reset(double eta_in, double noise_in, int mismatch) {
      x.reset();
      y.reset();
      q.reset();
      answered = false;
      eta = eta_in;
      noise = noise_in;
      mismatch_round = mismatch;
    }
    void OnDelivery(Simulator& sim, Delivery& d) override {
      if (d.qubit) {
        q = std::move(d.qubit);
      } else if (!d.record.data.empty() && d.record.data[0] == kTagX) {
        x = DecodeBits(d.record.data, 1);
      } else if (!d.record.data.empty() && d.record.data[0] == kTagY) {
        y = DecodeBits(d.record.data, 1);
      }
      if (answered || !x || !y || !q) return;
      answered = true;
      const QpvConfig& cfg = *setup->config;
      Rng& rng = *setup->rng;
      bool mismatch = setup->round_index == mismatch_round;
      Response r1 = Response::kNone, r2 = Response::kNone;
      if (mismatch || Bernoulli(rng, eta)) {
        int theta = BasisFunction(cfg.function_seed, *x, *y, cfg.num_bases);
        int z = std::move(*q).Measure(
            quantum::BasisAngle(BasisAngleFor(theta, cfg.num_bases)), rng);
        if (Bernoulli(rng, noise)) z ^= 1;
        r1 = r2 = FromBit(z);
        if (mismatch) r2 = FromBit(z ^ 1);
      }
      q.reset();
      AgentId self = d.record.destination;
      sim.SendSignal(self, setup->v1, sim.now(), 1.0,
                     Payload::Classical({kTagResponse, ResponseByte(r1)}));
      sim.SendSignal(self, setup->v2, sim.now(), 1.0,
                     Payload::Classical({kTagResponse, ResponseByte(r2)}));
    }
  };

  // One of two colluders placed on either side of P. The left one holds the
  // qubit and x, the right one holds y. They swap what they hold and answer
  // their nearer verifier.
  struct ColluderHandler : AgentHandler {
    RoundSetup* setup = nullptr;
    ColluderHandler* partner_handler = nullptr;
    AgentId partner = 0;
    AgentId verifier = 0;
    bool holds_qubit = false;
    bool fixed_basis = false;
    double fixed_angle = 0.0;
    std::optional<BitString> own;      // x for the left party, y for the right
    std::optional<BitString> other;
    std::optional<int> guess;          // basis index guessed (basis-guess)
    std::optional<int> outcome;
    bool sent_partner = false;
    bool answered = false;

    void Reset() {
      own.reset();
      other.reset();
      guess.reset();
      outcome.reset();
      sent_partner = false;
      answered = false;
    }
    void OnDelivery(Simulator& sim, Delivery& d) override {
      const QpvConfig& cfg = *setup->config;
      Rng& rng = *setup->rng;
      AgentId self = d.record.destination;
      if (d.qubit) {
        double angle;
        if (fixed_basis) {
          angle = fixed_angle;
        } else {
          guess = static_cast<int>(UniformInt(rng, static_cast<std::uint64_t>(cfg.num_bases)));
          angle = BasisAngleFor(*guess, cfg.num_bases);
        }
        outcome = std::move(*d.qubit).Measure(quantum::BasisAngle(angle), rng);
      } else if (!d.record.data.empty()) {
        std::uint8_t tag = d.record.data[0];
        if (tag == kTagX || tag == kTagY) {
          own = DecodeBits(d.record.data, 1);
        } else if (tag == kTagPartner) {
          // [tag, has_measurement, guess, outcome, bits...]
          if (d.record.data[1]) {
            guess = d.record.data[2] == kNoneByte ? std::optional<int>()
                                                 : std::optional<int>(d.record.data[2]);
            outcome = d.record.data[3];
          }
          other = DecodeBits(d.record.data, 4);
        }
      }
      if (!sent_partner && own && (!holds_qubit || outcome)) {
        sent_partner = true;
        std::vector<std::uint8_t> msg = {kTagPartner,
                                         static_cast<std::uint8_t>(holds_qubit ? 1 : 0),
                                         guess ? static_cast<std::uint8_t>(*guess) : kNoneByte,
                                         outcome ? static_cast<std::uint8_t>(*outcome) : kNoneByte};
        for (std::uint8_t b : own->raw()) msg.push_back(b);
        sim.SendSignal(self, partner, sim.now(), 1.0, Payload::Classical(std::move(msg)));
      }
      if (answered || !own || !other || !outcome) return;
      answered = true;
      const BitString& x = holds_qubit ? *own : *other;
      const BitString& y = holds_qubit ? *other : *own;
      Response r = FromBit(*outcome);
      if (!fixed_basis) {
        int theta = BasisFunction(cfg.function_seed, x, y, cfg.num_bases);
        if (!guess || *guess != theta) r = Response::kNone;
      }
      sim.SendSignal(self, verifier, sim.now(), 1.0,
                     Payload::Classical({kTagResponse, ResponseByte(r)}));
    }
  };

  RoundSetup setup;
  AgentId v1 = 0, v2 = 0, prover = 0, preparer = 0;
  VerifierHandler h_v1, h_v2;
  ProverHandler h_prover;
  std::map<double, AgentId> extra_agents;
  std::map<AgentId, std::unique_ptr<AgentHandler>> extra_handlers;

  AgentId AgentAt(Simulator& sim, double position) {
    auto it = extra_agents.find(position);
    if (it != extra_agents.end()) return it->second;
    AgentId id = sim.AddAgent(position, Role::kAdversary, "adversary");
    extra_agents.emplace(position, id);
    return id;
  }
};

QpvSession::QpvSession(QpvConfig config, std::uint64_t seed, bool record_trace)
    : config_(std::move(config)), rng_(seed), sim_(record_trace),
      impl_(std::make_unique<Impl>()) {
  config_.Validate();
  Impl& im = *impl_;
  im.v1 = sim_.AddAgent(-config_.distance, Role::kVerifier1, "V1");
  im.v2 = sim_.AddAgent(config_.distance, Role::kVerifier2, "V2");
  im.prover = sim_.AddAgent(0.0, Role::kProver, "P");
  double prep = std::isnan(config_.preparer_position) ? -config_.distance
                                                       : config_.preparer_position;
  im.preparer = sim_.AddAgent(prep, Role::kPreparer, "preparer");
  im.setup.config = &config_;
  im.setup.rng = &rng_;
  im.setup.v1 = im.v1;
  im.setup.v2 = im.v2;
  im.h_v1.setup = &im.setup;
  im.h_v1.first = true;
  im.h_v2.setup = &im.setup;
  im.h_v2.first = false;
  im.h_prover.setup = &im.setup;
  sim_.SetHandler(im.v1, &im.h_v1);
  sim_.SetHandler(im.v2, &im.h_v2);
}

QpvSession::~QpvSession() = default;

double QpvSession::Begin(std::optional<double> start_time) {
  double start = start_time.value_or(next_free_);
  if (start < sim_.now()) {
    throw CausalityError("run start lies before the current simulation time");
  }
  return start;
}

QpvRoundRecord QpvSession::PlayRound(Impl& im, const ProverStrategy& strategy,
                                     double t_base, bool multi,
                                     int round_index, bool fault) {
  using K = ProverStrategy::Kind;
  RoundSetup& st = im.setup;
  st.multi = multi;
  st.fault = fault;
  st.round_index = round_index;
  st.strategy = strategy;
  st.r1 = st.r2 = Response::kNone;
  st.a1 = st.a2 = std::numeric_limits<double>::quiet_NaN();

  const QpvConfig& cfg = config_;
  QpvRoundRecord rec;
  rec.x = RandomBits(rng_, static_cast<std::size_t>(cfg.n_bits));
  rec.y = RandomBits(rng_, static_cast<std::size_t>(cfg.n_bits));
  rec.theta = BasisFunction(cfg.function_seed, rec.x, rec.y, cfg.num_bases);
  quantum::PureState state = quantum::Bb84State(0, 0);
  if (multi) {
    rec.prepared_state = static_cast<int>(UniformInt(rng_, 4));
    rec.z_sent = rec.prepared_state % 2;
    state = quantum::Bb84StateByIndex(rec.prepared_state);
  } else {
    rec.z_sent = static_cast<int>(UniformInt(rng_, 2));
    rec.prepared_state = 2 * rec.theta + rec.z_sent;
    state = quantum::Bb84State(rec.theta, rec.z_sent);
  }

  // Route inputs according to who is listening near P.
  AgentId x_dest = im.prover, y_dest = im.prover, q_dest = im.prover;
  sim_.SetHandler(im.prover, nullptr);
  switch (strategy.kind) {
    case K::kHonest:
    case K::kAbstractPass:
    case K::kMismatchAt:
      sim_.SetHandler(im.prover, &im.h_prover);
      break;
    case K::kAbsent:
      break;
    case K::kOffsetRelay: {
      AgentId relay = im.AgentAt(sim_, strategy.offset);
      sim_.SetHandler(relay, &im.h_prover);
      x_dest = y_dest = q_dest = relay;
      break;
    }
    case K::kBasisGuess:
    case K::kFixedBasis: {
      AgentId left = im.AgentAt(sim_, -strategy.adversary_offset);
      AgentId right = im.AgentAt(sim_, strategy.adversary_offset);
      auto& hl = im.extra_handlers[left];
      auto& hr = im.extra_handlers[right];
      if (!hl) hl = std::make_unique<Impl::ColluderHandler>();
      if (!hr) hr = std::make_unique<Impl::ColluderHandler>();
      auto* l = static_cast<Impl::ColluderHandler*>(hl.get());
      auto* r = static_cast<Impl::ColluderHandler*>(hr.get());
      for (auto* c : {l, r}) {
        c->Reset();
        c->setup = &st;
        c->fixed_basis = strategy.kind == K::kFixedBasis;
        c->fixed_angle = 2.0 * strategy.fixed_angle;
      }
      l->partner = right;
      l->verifier = im.v1;
      l->holds_qubit = true;
      r->partner = left;
      r->verifier = im.v2;
      r->holds_qubit = false;
      sim_.SetHandler(left, l);
      sim_.SetHandler(right, r);
      x_dest = q_dest = left;
      y_dest = right;
      break;
    }
  }
  double eta = strategy.eta;
  double noise = cfg.channel_noise;
  int mismatch = strategy.kind == K::kMismatchAt ? strategy.round : -1;
  if (strategy.kind == K::kAbstractPass || strategy.kind == K::kOffsetRelay) {
    eta = 1.0;
    noise = 0.0;
  }
  im.h_prover.Reset(eta, noise, mismatch);

  double quantum_lead = sim_.Distance(im.preparer, im.prover) / cfg.quantum_speed;
  double t_p = t_base + std::max({sim_.Distance(im.v1, im.prover),
                                  sim_.Distance(im.v2, im.prover), quantum_lead});
  rec.t_p = t_p;
  double dep_q = t_p - quantum_lead;
  double dep_x = sim_.DepartureTimeForArrival(im.v1, im.prover, t_p, 1.0);
  double dep_y = sim_.DepartureTimeForArrival(im.v2, im.prover, t_p, 1.0);
  sim_.SendSignal(im.preparer, q_dest, dep_q, cfg.quantum_speed,
                  Payload::Quantum(Qubit(state), {kTagQubit}));
  sim_.SendSignal(im.v1, x_dest, dep_x, 1.0, Payload::Classical(EncodeBits(kTagX, rec.x)));
  sim_.SendSignal(im.v2, y_dest, dep_y, 1.0, Payload::Classical(EncodeBits(kTagY, rec.y)));
  sim_.RunUntilQuiescent();

  rec.response1 = st.r1;
  rec.response2 = st.r2;
  rec.arrival1 = st.a1;
  rec.arrival2 = st.a2;
  bool late = false;
  if (!std::isnan(st.a1) &&
      !spacetime::TimingCheck(st.a1, t_p, sim_.Distance(im.v1, im.prover), cfg.t_delta)) {
    late = true;
  }
  if (!std::isnan(st.a2) &&
      !spacetime::TimingCheck(st.a2, t_p, sim_.Distance(im.v2, im.prover), cfg.t_delta)) {
    late = true;
  }
  if (st.r1 != Response::kNone && st.r2 != Response::kNone && st.r1 != st.r2) {
    rec.verdict = RoundVerdict::kMismatchFail;
  } else if (late) {
    rec.verdict = RoundVerdict::kTimingFail;
  } else if (st.r1 == Response::kNone || st.r2 == Response::kNone) {
    rec.verdict = RoundVerdict::kLoss;
  } else if (!multi && static_cast<int>(st.r1) != rec.z_sent) {
    rec.verdict = RoundVerdict::kError;
  } else {
    rec.verdict = RoundVerdict::kOk;
  }
  return rec;
}

namespace {

void Tally(QpvStats& stats, const QpvRoundRecord& rec) {
  ++stats.rounds_run;
  switch (rec.verdict) {
    case RoundVerdict::kTimingFail:
      ++stats.timing_failures;
      return;
    case RoundVerdict::kMismatchFail:
      ++stats.mismatch_failures;
      return;
    case RoundVerdict::kLoss:
      ++stats.Count(2, rec.prepared_state, rec.theta);
      return;
    case RoundVerdict::kError:
      ++stats.errors;
      [[fallthrough]];
    case RoundVerdict::kOk:
      ++stats.detections;
      ++stats.Count(static_cast<int>(rec.response1), rec.prepared_state, rec.theta);
      return;
  }
}

}  // namespace

QpvRunResult QpvSession::RunSingle(const ProverStrategy& strategy,
                                   std::optional<double> start_time,
                                   bool keep_records) {
  strategy.Validate(config_);
  double start = Begin(start_time);
  QpvRunResult out{QpvStats(config_.num_bases), {}, Verdict::kFail, false};
  out.faulted = Bernoulli(rng_, config_.run_fault_probability);
  ProverStrategy effective = strategy;
  if (strategy.kind == ProverStrategy::Kind::kAbstractPass &&
      !Bernoulli(rng_, strategy.pass_probability)) {
    effective = ProverStrategy::Absent();
  }
  double spacing = config_.RoundSpacing();
  for (int k = 0; k < config_.rounds; ++k) {
    double t_base = std::max(start + k * spacing, sim_.now());
    QpvRoundRecord rec = PlayRound(*impl_, effective, t_base, false, k, out.faulted);
    Tally(out.stats, rec);
    if (keep_records) out.records.push_back(std::move(rec));
  }
  const QpvStats& s = out.stats;
  bool fail = s.timing_failures > 0 || s.mismatch_failures > 0 || s.detections == 0 ||
              ConditionalErrorRate(s) > config_.error_threshold;
  out.verdict = fail ? Verdict::kFail : Verdict::kPass;
  next_free_ = std::max(start + config_.EffectiveDeltaT(), sim_.now());
  return out;
}

void ComputeDeviations(const QpvConfig& config, const QpvStats& stats,
                       QpvMultiResult& out) {
  const int n = config.num_bases;
  double total = 0.0;
  out.empty_cells.clear();
  for (int z = 0; z < 2; ++z) {
    for (int s = 0; s < 4; ++s) {
      out.deviations[z][s].assign(static_cast<std::size_t>(n), 0.0);
      for (int th = 0; th < n; ++th) {
        double p = quantum::OutcomeProbability(
            quantum::Bb84StateByIndex(s), quantum::BasisAngle(BasisAngleFor(th, n)), z);
        std::int64_t cell = stats.CellTotal(s, th);
        double dev;
        if (cell == 0) {
          dev = config.eta * p;
          out.empty_cells.push_back({z, s, th});
        } else {
          dev = std::abs(static_cast<double>(stats.Count(z, s, th)) /
                             static_cast<double>(cell) -
                         config.eta * p);
        }
        out.deviations[z][s][th] = dev;
        double w = config.deviation_weights.empty()
                       ? 1.0
                       : config.deviation_weights[static_cast<std::size_t>((z * 4 + s) * n + th)];
        total += w * dev;
      }
    }
  }
  out.total_deviation = total / (4.0 * n);
}

QpvMultiResult QpvSession::RunMulti(const ProverStrategy& strategy,
                                    std::optional<double> start_time,
                                    bool keep_records) {
  strategy.Validate(config_);
  double start = Begin(start_time);
  QpvMultiResult out;
  out.stats = QpvStats(config_.num_bases);
  out.faulted = Bernoulli(rng_, config_.run_fault_probability);
  ProverStrategy effective = strategy;
  if (strategy.kind == ProverStrategy::Kind::kAbstractPass &&
      !Bernoulli(rng_, strategy.pass_probability)) {
    effective = ProverStrategy::Absent();
  }
  double spacing = config_.RoundSpacing();
  for (int k = 0; k < config_.rounds; ++k) {
    double t_base = std::max(start + k * spacing, sim_.now());
    QpvRoundRecord rec = PlayRound(*impl_, effective, t_base, true, k, out.faulted);
    Tally(out.stats, rec);
    bool round_failed = rec.verdict == RoundVerdict::kTimingFail ||
                        rec.verdict == RoundVerdict::kMismatchFail;
    if (keep_records) out.records.push_back(std::move(rec));
    if (round_failed) {
      out.aborted = true;
      break;
    }
  }
  ComputeDeviations(config_, out.stats, out);
  bool fail = out.aborted || out.total_deviation > config_.deviation_threshold;
  out.verdict = fail ? Verdict::kFail : Verdict::kPass;
  next_free_ = std::max(start + config_.EffectiveDeltaT(), sim_.now());
  return out;
}

QpvRunResult RunQpvSingle(const QpvConfig& config, const ProverStrategy& strategy,
                          std::uint64_t seed, bool keep_records) {
  QpvSession session(config, seed);
  return session.RunSingle(strategy, std::nullopt, keep_records);
}

QpvMultiResult RunQpvMultiBasis(const QpvConfig& config,
                                const ProverStrategy& strategy,
                                std::uint64_t seed, bool keep_records) {
  QpvSession session(config, seed);
  return session.RunMulti(strategy, std::nullopt, keep_records);
}

}  // namespace qpvkex::qpv
