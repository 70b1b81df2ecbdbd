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

#ifndef QPVKEX_SPACETIME_H_
#define QPVKEX_SPACETIME_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpvkex/quantum.h"
#include "qpvkex/random.h"

namespace qpvkex::spacetime {

// Units: c = 1. Positions are points on a line.

using AgentId = int;

enum class Role {
  kVerifier1,
  kVerifier2,
  kProver,
  kSender,
  kReceiver,
  kAdversary,
  kPreparer,
};

const char* RoleName(Role role);

struct Agent {
  AgentId id = 0;
  double position = 0.0;
  Role role = Role::kProver;
  std::string name;
};

enum class SignalKind { kClassical, kQuantum };

// A qubit in flight. It can be moved but not copied, and its amplitudes are
// only reachable through a destructive measurement.
class Qubit {
 public:
  explicit Qubit(quantum::PureState state) : state_(state) {}
  Qubit(const Qubit&) = delete;
  Qubit& operator=(const Qubit&) = delete;
  Qubit(Qubit&&) = default;
  Qubit& operator=(Qubit&&) = default;

  // Projective measurement; returns 0 or 1 and consumes the qubit.
  int Measure(quantum::BasisAngle basis, Rng& rng) &&;

 private:
  quantum::PureState state_;
};

struct Payload {
  std::vector<std::uint8_t> data;
  std::optional<Qubit> qubit;

  static Payload Classical(std::vector<std::uint8_t> bytes) {
    return Payload{std::move(bytes), std::nullopt};
  }
  static Payload Quantum(Qubit q, std::vector<std::uint8_t> tag = {}) {
    return Payload{std::move(tag), std::move(q)};
  }
};

struct SignalRecord {
  AgentId origin = 0;
  AgentId destination = 0;
  double depart_time = 0.0;
  double arrive_time = 0.0;
  double speed_fraction = 1.0;
  SignalKind kind = SignalKind::kClassical;
  std::vector<std::uint8_t> data;  // classical content or quantum label
};

struct Delivery {
  SignalRecord record;
  std::optional<Qubit> qubit;
};

class Simulator;

class AgentHandler {
 public:
  virtual ~AgentHandler() = default;
  virtual void OnDelivery(Simulator& sim, Delivery& delivery) = 0;
};

// Single-threaded discrete-event simulator. Events are processed in order
// of (arrival time, destination id, insertion sequence).
class Simulator {
 public:
  explicit Simulator(bool record_trace = true);

  AgentId AddAgent(double position, Role role, std::string name = "");
  // Handlers are not owned. Deliveries to agents without a handler are
  // recorded in the trace and otherwise dropped.
  void SetHandler(AgentId id, AgentHandler* handler);

  const Agent& agent(AgentId id) const;
  const std::vector<Agent>& agents() const { return agents_; }
  double Distance(AgentId a, AgentId b) const;
  double now() const { return now_; }

  // Throws ValidationError for speed <= 0 and CausalityError for speed > 1
  // or a departure before the current time.
  SignalRecord SendSignal(AgentId origin, AgentId destination,
                          double depart_time, double speed_fraction,
                          Payload payload);

  double DepartureTimeForArrival(AgentId origin, AgentId destination,
                                 double target_arrival,
                                 double speed_fraction) const;

  // Delivers every pending event and returns the cumulative trace.
  const std::vector<SignalRecord>& RunUntilQuiescent();

  bool idle() const { return heap_.empty(); }
  const std::vector<SignalRecord>& trace() const { return trace_; }
  void ClearTrace() { trace_.clear(); }
  void set_record_trace(bool on) { record_trace_ = on; }

 private:
  struct Event {
    double time;
    AgentId agent;
    std::uint64_t seq;
    SignalRecord record;
    std::optional<Qubit> qubit;
  };
  static bool Later(const Event& a, const Event& b);

  std::vector<Agent> agents_;
  std::vector<AgentHandler*> handlers_;
  std::vector<Event> heap_;
  std::vector<SignalRecord> trace_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
  bool record_trace_;
};

// Slack absorbed by timing comparisons so that an exact light-speed path
// computed through several additions is not rejected by rounding.
inline constexpr double kTimeSlack = 1e-9;

// True iff response_arrival - t_p <= distance + t_delta.
bool TimingCheck(double response_arrival, double t_p, double distance,
                 double t_delta);

// One JSON object per record and line. Quantum payloads carry no amplitudes.
std::string TraceToJsonLines(const std::vector<SignalRecord>& trace);

}  // namespace qpvkex::spacetime

#endif  // QPVKEX_SPACETIME_H_
