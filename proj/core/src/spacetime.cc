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

#include "qpvkex/spacetime.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "qpvkex/errors.h"

namespace qpvkex::spacetime {

const char* RoleName(Role role) {
  switch (role) {
    case Role::kVerifier1: return "verifier1";
    case Role::kVerifier2: return "verifier2";
    case Role::kProver: return "prover";
    case Role::kSender: return "sender";
    case Role::kReceiver: return "receiver";
    case Role::kAdversary: return "adversary";
    case Role::kPreparer: return "preparer";
  }
  return "unknown";
}

int Qubit::Measure(quantum::BasisAngle basis, Rng& rng) && {
  double p0 = quantum::OutcomeProbability(state_, basis, 0);
  return Uniform01(rng) < p0 ? 0 : 1;
}

Simulator::Simulator(bool record_trace) : record_trace_(record_trace) {}

AgentId Simulator::AddAgent(double position, Role role, std::string name) {
  if (!std::isfinite(position)) throw ValidationError("agent position must be finite");
  AgentId id = static_cast<AgentId>(agents_.size());
  agents_.push_back(Agent{id, position, role, std::move(name)});
  handlers_.push_back(nullptr);
  return id;
}

void Simulator::SetHandler(AgentId id, AgentHandler* handler) {
  agent(id);
  handlers_[static_cast<std::size_t>(id)] = handler;
}

const Agent& Simulator::agent(AgentId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= agents_.size()) {
    throw ValidationError("unknown agent id");
  }
  return agents_[static_cast<std::size_t>(id)];
}

double Simulator::Distance(AgentId a, AgentId b) const {
  return std::abs(agent(a).position - agent(b).position);
}

SignalRecord Simulator::SendSignal(AgentId origin, AgentId destination,
                                   double depart_time, double speed_fraction,
                                   Payload payload) {
  if (speed_fraction > 1.0) {
    throw CausalityError("signal speed exceeds the speed of light");
  }
  if (!(speed_fraction > 0.0)) {
    throw ValidationError("signal speed fraction must be positive");
  }
  if (!(depart_time >= now_)) {
    throw CausalityError("signal departs before the current simulation time");
  }
  SignalRecord rec;
  rec.origin = origin;
  rec.destination = destination;
  rec.depart_time = depart_time;
  rec.arrive_time = depart_time + Distance(origin, destination) / speed_fraction;
  rec.speed_fraction = speed_fraction;
  rec.kind = payload.qubit ? SignalKind::kQuantum : SignalKind::kClassical;
  rec.data = std::move(payload.data);
  heap_.push_back(Event{rec.arrive_time, destination, next_seq_++, rec,
                        std::move(payload.qubit)});
  std::push_heap(heap_.begin(), heap_.end(), &Simulator::Later);
  return rec;
}

double Simulator::DepartureTimeForArrival(AgentId origin, AgentId destination,
                                          double target_arrival,
                                          double speed_fraction) const {
  if (speed_fraction > 1.0) {
    throw CausalityError("signal speed exceeds the speed of light");
  }
  if (!(speed_fraction > 0.0)) {
    throw ValidationError("signal speed fraction must be positive");
  }
  return target_arrival - Distance(origin, destination) / speed_fraction;
}

bool Simulator::Later(const Event& a, const Event& b) {
  if (a.time != b.time) return a.time > b.time;
  if (a.agent != b.agent) return a.agent > b.agent;
  return a.seq > b.seq;
}

const std::vector<SignalRecord>& Simulator::RunUntilQuiescent() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), &Simulator::Later);
    Event ev = std::move(heap_.back());
    heap_.pop_back();
    now_ = ev.time;
    if (record_trace_) trace_.push_back(ev.record);
    AgentHandler* handler = handlers_[static_cast<std::size_t>(ev.agent)];
    if (handler != nullptr) {
      Delivery d{std::move(ev.record), std::move(ev.qubit)};
      handler->OnDelivery(*this, d);
    }
  }
  return trace_;
}

bool TimingCheck(double response_arrival, double t_p, double distance,
                 double t_delta) {
  if (t_delta < 0.0) throw ValidationError("t_delta must be non-negative");
  return response_arrival - t_p <= distance + t_delta + kTimeSlack;
}

std::string TraceToJsonLines(const std::vector<SignalRecord>& trace) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::ostringstream out;
  for (const SignalRecord& r : trace) {
    std::string hex;
    hex.reserve(2 * r.data.size());
    for (std::uint8_t b : r.data) {
      hex.push_back(kHex[b >> 4]);
      hex.push_back(kHex[b & 15]);
    }
    nlohmann::ordered_json j;
    j["origin"] = r.origin;
    j["destination"] = r.destination;
    j["depart_time"] = r.depart_time;
    j["arrive_time"] = r.arrive_time;
    j["speed_fraction"] = r.speed_fraction;
    j["kind"] = r.kind == SignalKind::kQuantum ? "quantum" : "classical";
    j["payload_hex"] = hex;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace qpvkex::spacetime
