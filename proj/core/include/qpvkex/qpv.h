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

#ifndef QPVKEX_QPV_H_
#define QPVKEX_QPV_H_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpvkex/bits.h"
#include "qpvkex/random.h"
#include "qpvkex/spacetime.h"

namespace qpvkex::qpv {

struct QpvConfig {
  int n_bits = 16;             // length of each of x and y
  int rounds = 1000;           // internal rounds per run
  double eta = 1.0;            // honest detection probability
  double error_threshold = 0.1;
  double deviation_threshold = 0.03;
  int num_bases = 2;
  double t_delta = 0.0;
  double delta_t = 0.0;        // spacing between runs; 0 selects RunDuration()+1
  std::uint64_t function_seed = 0x5eed;
  double distance = 1.0;       // verifiers sit at -distance and +distance
  double quantum_speed = 1.0;  // fraction of c for the quantum signal
  double preparer_position = std::numeric_limits<double>::quiet_NaN();  // NaN: at V1
  double channel_noise = 0.0;  // honest outcome flip probability
  // Probability that a whole run is disrupted (all responses lost). Models
  // the robustness parameter of the run.
  double run_fault_probability = 0.0;
  // Optional per-cell weights for the total deviation, indexed
  // [z][s][theta] flattened as (z * 4 + s) * num_bases + theta. Empty means
  // uniform.
  std::vector<double> deviation_weights;

  // Throws ValidationError on any invariant violation.
  void Validate() const;
  // Time between consecutive rounds of one run.
  double RoundSpacing() const;
  double RunDuration() const { return rounds * RoundSpacing(); }
  double EffectiveDeltaT() const;
};

enum class Response : std::int8_t { kZero = 0, kOne = 1, kNone = -1 };

const char* ResponseName(Response r);

enum class RoundVerdict { kOk, kTimingFail, kMismatchFail, kLoss, kError };

const char* RoundVerdictName(RoundVerdict v);

enum class Verdict { kPass, kFail };

struct QpvRoundRecord {
  BitString x;
  BitString y;
  int theta = 0;
  int prepared_state = 0;  // s = 2 * bb84_basis + value (single-basis mode)
  int z_sent = 0;
  Response response1 = Response::kNone;
  Response response2 = Response::kNone;
  double t_p = 0.0;
  double arrival1 = std::numeric_limits<double>::quiet_NaN();
  double arrival2 = std::numeric_limits<double>::quiet_NaN();
  RoundVerdict verdict = RoundVerdict::kLoss;
};

// counts[z][s][theta] with z in {0, 1, none}.
struct QpvStats {
  int num_bases = 2;
  std::array<std::array<std::vector<std::int64_t>, 4>, 3> counts;
  std::int64_t detections = 0;
  std::int64_t errors = 0;
  std::int64_t rounds_run = 0;
  std::int64_t timing_failures = 0;
  std::int64_t mismatch_failures = 0;

  explicit QpvStats(int bases = 2);
  std::int64_t& Count(int z_index, int s, int theta) {
    return counts[z_index][s][theta];
  }
  std::int64_t Count(int z_index, int s, int theta) const {
    return counts[z_index][s][theta];
  }
  // N_{s theta}, summing over z including no-response.
  std::int64_t CellTotal(int s, int theta) const;
  double Transmission() const;
};

// errors / detections. Throws UndefinedRateError when detections == 0.
double ConditionalErrorRate(const QpvStats& stats);

struct ProverStrategy {
  enum class Kind {
    kHonest,        // prover at P
    kAbsent,        // nobody answers
    kAbstractPass,  // passes the whole run with probability pass_probability
    kBasisGuess,    // two colluders guess the basis and post-select
    kFixedBasis,    // two colluders measure in a fixed basis
    kOffsetRelay,   // one party at `offset` answers honestly, late
    kMismatchAt,    // honest except at `round`, where answers disagree
  };
  Kind kind = Kind::kHonest;
  double eta = 1.0;               // kHonest, kMismatchAt
  double pass_probability = 0.0;  // kAbstractPass
  // kFixedBasis: measurement direction as a state-space angle, so pi/8 is
  // the basis halfway between Z and X.
  double fixed_angle = 0.0;
  double adversary_offset = 0.5;  // colluders at -offset and +offset
  double offset = 0.5;            // kOffsetRelay position
  int round = 0;                  // kMismatchAt, zero based

  static ProverStrategy Honest(double eta) {
    ProverStrategy s;
    s.kind = Kind::kHonest;
    s.eta = eta;
    return s;
  }
  static ProverStrategy Absent() {
    ProverStrategy s;
    s.kind = Kind::kAbsent;
    return s;
  }
  static ProverStrategy AbstractPass(double p) {
    ProverStrategy s;
    s.kind = Kind::kAbstractPass;
    s.pass_probability = p;
    return s;
  }
  static ProverStrategy BasisGuess() {
    ProverStrategy s;
    s.kind = Kind::kBasisGuess;
    return s;
  }
  static ProverStrategy FixedBasis(double angle) {
    ProverStrategy s;
    s.kind = Kind::kFixedBasis;
    s.fixed_angle = angle;
    return s;
  }
  static ProverStrategy OffsetRelay(double offset) {
    ProverStrategy s;
    s.kind = Kind::kOffsetRelay;
    s.offset = offset;
    return s;
  }
  static ProverStrategy MismatchAt(int round, double eta = 1.0) {
    ProverStrategy s;
    s.kind = Kind::kMismatchAt;
    s.round = round;
    s.eta = eta;
    return s;
  }

  void Validate(const QpvConfig& config) const;
};

const char* StrategyKindName(ProverStrategy::Kind kind);

// Seeded public function f(x, y) onto [0, num_bases). Throws
// ValidationError when |x| != |y| or num_bases < 1.
int BasisFunction(std::uint64_t seed, const BitString& x, const BitString& y,
                  int num_bases);

// Measurement angle of basis index theta out of num_bases: theta * pi / n.
double BasisAngleFor(int theta, int num_bases);

struct QpvRunResult {
  QpvStats stats;
  std::vector<QpvRoundRecord> records;
  Verdict verdict = Verdict::kFail;
  bool faulted = false;
};

struct QpvMultiResult {
  QpvStats stats;
  std::vector<QpvRoundRecord> records;
  // deviations[z][s][theta] for z in {0,1}.
  std::array<std::array<std::vector<double>, 4>, 2> deviations;
  std::vector<std::array<int, 3>> empty_cells;  // (z, s, theta)
  double total_deviation = 0.0;
  bool aborted = false;  // stopped early on a per-round failure
  Verdict verdict = Verdict::kFail;
  bool faulted = false;
};

// Owns a simulator with the standard line topology. Successive runs are
// placed on the same timeline.
class QpvSession {
 public:
  QpvSession(QpvConfig config, std::uint64_t seed, bool record_trace = false);
  ~QpvSession();
  QpvSession(const QpvSession&) = delete;
  QpvSession& operator=(const QpvSession&) = delete;

  // Runs the two-basis protocol starting at `start_time` (or at the next
  // free slot when omitted).
  QpvRunResult RunSingle(const ProverStrategy& strategy,
                         std::optional<double> start_time = std::nullopt,
                         bool keep_records = false);
  // Runs the multi-basis protocol.
  QpvMultiResult RunMulti(const ProverStrategy& strategy,
                          std::optional<double> start_time = std::nullopt,
                          bool keep_records = false);

  const QpvConfig& config() const { return config_; }
  const spacetime::Simulator& simulator() const { return sim_; }
  double next_free_time() const { return next_free_; }

 private:
  struct Impl;
  struct RoundSetup;
  QpvRoundRecord PlayRound(Impl& impl, const ProverStrategy& strategy,
                           double t_base, bool multi, int round_index,
                           bool fault);
  double Begin(std::optional<double> start_time);

  QpvConfig config_;
  Rng rng_;
  spacetime::Simulator sim_;
  std::unique_ptr<Impl> impl_;
  double next_free_ = 0.0;
};

QpvRunResult RunQpvSingle(const QpvConfig& config,
                          const ProverStrategy& strategy, std::uint64_t seed,
                          bool keep_records = false);
QpvMultiResult RunQpvMultiBasis(const QpvConfig& config,
                                const ProverStrategy& strategy,
                                std::uint64_t seed, bool keep_records = false);

// Deviation statistics from counts.
void ComputeDeviations(const QpvConfig& config, const QpvStats& stats,
                       QpvMultiResult& out);

}  // namespace qpvkex::qpv

#endif  // QPVKEX_QPV_H_
