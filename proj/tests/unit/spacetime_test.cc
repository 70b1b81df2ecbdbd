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

#include <gtest/gtest.h>

#include <cmath>

#include "qpvkex/errors.h"
#include "qpvkex/qpv.h"

namespace qpvkex::spacetime {
namespace {

class EchoHandler : public AgentHandler {
 public:
  void OnDelivery(Simulator& sim, Delivery& d) override {
    sim.SendSignal(d.record.destination, d.record.origin, sim.now(), 1.0,
                   Payload::Classical(d.record.data));
  }
};

class ScheduleInPast : public AgentHandler {
 public:
  void OnDelivery(Simulator& sim, Delivery& d) override {
    sim.SendSignal(d.record.destination, d.record.origin, sim.now() - 1.0, 1.0,
                   Payload::Classical({}));
  }
};

TEST(SimulatorTest, ArrivalTimes) {
  Simulator sim;
  AgentId a = sim.AddAgent(0, Role::kVerifier1);
  AgentId b = sim.AddAgent(10, Role::kVerifier2);
  EXPECT_DOUBLE_EQ(sim.SendSignal(a, b, 0, 1.0, Payload::Classical({})).arrive_time, 10.0);
  EXPECT_DOUBLE_EQ(sim.SendSignal(a, b, 5, 0.5, Payload::Classical({})).arrive_time, 25.0);
  EXPECT_DOUBLE_EQ(sim.SendSignal(a, a, 3, 1.0, Payload::Classical({})).arrive_time, 3.0);
}

TEST(SimulatorTest, RejectsSuperluminalAndNonpositiveSpeed) {
  Simulator sim;
  AgentId a = sim.AddAgent(0, Role::kVerifier1);
  AgentId b = sim.AddAgent(1, Role::kVerifier2);
  EXPECT_THROW(sim.SendSignal(a, b, 0, 1.01, Payload::Classical({})), CausalityError);
  EXPECT_THROW(sim.SendSignal(a, b, 0, 0.0, Payload::Classical({})), ValidationError);
}

TEST(SimulatorTest, DepartureForArrival) {
  Simulator sim;
  AgentId o = sim.AddAgent(0, Role::kVerifier1);
  AgentId d10 = sim.AddAgent(10, Role::kProver);
  AgentId d3 = sim.AddAgent(3, Role::kProver);
  AgentId d4 = sim.AddAgent(4, Role::kProver);
  EXPECT_DOUBLE_EQ(sim.DepartureTimeForArrival(o, d10, 10, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(sim.DepartureTimeForArrival(o, d3, 10, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(sim.DepartureTimeForArrival(o, d4, 10, 0.8), 5.0);
  double t = sim.DepartureTimeForArrival(o, d4, 10, 0.8);
  EXPECT_DOUBLE_EQ(sim.SendSignal(o, d4, t, 0.8, Payload::Classical({})).arrive_time, 10.0);
}

TEST(SimulatorTest, TimingCheckExamples) {
  EXPECT_TRUE(TimingCheck(20, 10, 10, 0));
  EXPECT_FALSE(TimingCheck(20.1, 10, 10, 0.05));
  EXPECT_TRUE(TimingCheck(20.1, 10, 10, 0.2));
}

TEST(SimulatorTest, EmptyQueueGivesEmptyTrace) {
  Simulator sim;
  EXPECT_TRUE(sim.RunUntilQuiescent().empty());
}

TEST(SimulatorTest, EchoRoundTrip) {
  Simulator sim;
  AgentId a = sim.AddAgent(0, Role::kVerifier1);
  AgentId b = sim.AddAgent(2.5, Role::kProver);
  EchoHandler echo;
  sim.SetHandler(b, &echo);
  sim.SendSignal(a, b, 0, 1.0, Payload::Classical({1, 2}));
  const auto& trace = sim.RunUntilQuiescent();
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_DOUBLE_EQ(trace[1].arrive_time - trace[0].depart_time, 5.0);
  EXPECT_EQ(trace[1].destination, a);
}

TEST(SimulatorTest, HandlerSchedulingInPastThrows) {
  Simulator sim;
  AgentId a = sim.AddAgent(0, Role::kVerifier1);
  AgentId b = sim.AddAgent(1, Role::kProver);
  ScheduleInPast handler;
  sim.SetHandler(b, &handler);
  sim.SendSignal(a, b, 0, 1.0, Payload::Classical({}));
  EXPECT_THROW(sim.RunUntilQuiescent(), CausalityError);
}

TEST(SimulatorTest, TiesBreakByAgentThenSequence) {
  Simulator sim;
  AgentId src = sim.AddAgent(0, Role::kVerifier1);
  AgentId low = sim.AddAgent(1, Role::kProver);
  AgentId high = sim.AddAgent(-1, Role::kProver);
  sim.SendSignal(src, high, 0, 1.0, Payload::Classical({1}));
  sim.SendSignal(src, low, 0, 1.0, Payload::Classical({2}));
  sim.SendSignal(src, low, 0, 1.0, Payload::Classical({3}));
  const auto& trace = sim.RunUntilQuiescent();
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0].data, std::vector<std::uint8_t>{2});
  EXPECT_EQ(trace[1].data, std::vector<std::uint8_t>{3});
  EXPECT_EQ(trace[2].data, std::vector<std::uint8_t>{1});
}

TEST(SimulatorTest, QpvTraceIsCausalAndDeterministic) {
  qpv::QpvConfig config;
  config.rounds = 50;
  config.eta = 0.7;
  auto run = [&] {
    qpv::QpvSession session(config, 77, true);
    session.RunSingle(qpv::ProverStrategy::Honest(config.eta));
    return TraceToJsonLines(session.simulator().trace());
  };
  std::string first = run();
  EXPECT_EQ(first, run());
  EXPECT_FALSE(first.empty());

  qpv::QpvSession session(config, 78, true);
  session.RunSingle(qpv::ProverStrategy::BasisGuess());
  const Simulator& sim = session.simulator();
  ASSERT_FALSE(sim.trace().empty());
  for (const auto& r : sim.trace()) {
    double d = sim.Distance(r.origin, r.destination);
    EXPECT_GE(r.arrive_time - r.depart_time, d - 1e-12);
    EXPECT_GE(r.arrive_time, r.depart_time);
  }
}

TEST(SimulatorTest, QuantumPayloadCarriesNoAmplitudes) {
  Simulator sim;
  AgentId a = sim.AddAgent(0, Role::kPreparer);
  AgentId b = sim.AddAgent(1, Role::kProver);
  sim.SendSignal(a, b, 0, 1.0, Payload::Quantum(Qubit(quantum::Bb84State(1, 0))));
  std::string json = TraceToJsonLines(sim.RunUntilQuiescent());
  EXPECT_NE(json.find("\"kind\":\"quantum\""), std::string::npos);
  EXPECT_EQ(json.find("amp"), std::string::npos);
}

}  // namespace
}  // namespace qpvkex::spacetime
