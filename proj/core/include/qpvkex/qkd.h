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

#ifndef QPVKEX_QKD_H_
#define QPVKEX_QKD_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qpvkex/bits.h"

namespace qpvkex::kex {

// Toy BB84 with sifting, sampled parameter estimation, Cascade error
// correction, hash verification and Toeplitz privacy amplification.
struct QkdConfig {
  int signal_count = 10000;
  double channel_qber = 0.0;
  double pe_sample_fraction = 0.1;  // of sifted positions
  double pe_threshold = 0.05;
  int ec_passes = 4;
  int pa_output_bits = 0;  // 0: derived from the asymptotic rate
  double eps_qkd_label = 1e-10;  // reported, never derived
  int verification_tag_bits = 32;
  // Probability that the quantum phase of a run is disrupted so badly that
  // parameter estimation fails. Models the honest abort rate.
  double fault_probability = 0.0;

  void Validate() const;
};

// Records what each side sent and what the other side received. Bob's
// outgoing bits can be flipped at positions of his cumulative stream.
class ClassicalChannel {
 public:
  ClassicalChannel() = default;
  explicit ClassicalChannel(std::vector<std::size_t> tamper_bob_positions);

  BitString SendA(const BitString& bits);  // returns what Bob receives
  BitString SendB(const BitString& bits);  // returns what Alice receives

  const BitString& m_a() const { return m_a_; }
  const BitString& m_a_received() const { return m_a_recv_; }
  const BitString& m_b() const { return m_b_; }
  const BitString& m_b_received() const { return m_b_recv_; }

 private:
  std::vector<std::size_t> tamper_b_;  // sorted
  BitString m_a_, m_a_recv_, m_b_, m_b_recv_;
};

struct QkdResult {
  BitString raw_a;  // S_A
  BitString raw_b;  // S_B
  BitString m_a, m_a_received, m_b, m_b_received;
  std::size_t sifted_a = 0, sifted_b = 0;
  std::size_t sample_size = 0;
  double qber_estimate_a = 0.0, qber_estimate_b = 0.0;
  bool pe_pass_a = false, pe_pass_b = false;
  bool verify_a = false, verify_b = false;
  bool i_pe_a = false, i_pe_b = false;  // estimation and verification both pass
  bool faulted = false;
  BitString corrected_a, corrected_b;
  std::size_t leak = 0;  // parity and verification bits disclosed
  int block_size = 0;    // first Cascade block length
  std::uint64_t pa_seed_a = 0, pa_seed_b = 0;
  std::size_t pa_length_a = 0, pa_length_b = 0;

  BitString KeyA() const;
  BitString KeyB() const;
};

QkdResult RunToyQkd(const QkdConfig& config, std::uint64_t seed,
                    ClassicalChannel& channel);
QkdResult RunToyQkd(const QkdConfig& config, std::uint64_t seed);

// Upper bounds on the bits each side sends during RunToyQkd.
struct QkdTranscriptBound {
  std::size_t alice_bits = 0;
  std::size_t bob_bits = 0;
};
QkdTranscriptBound MaxTranscriptBits(const QkdConfig& config);

// Binary Toeplitz matrix of shape out_bits x |input| whose diagonals are
// drawn from `seed`, applied to `input`.
BitString ToeplitzHash(const BitString& input, std::uint64_t seed,
                       std::size_t out_bits);

// floor(n_sift (1 - 2 h(pe_threshold))) - leak, at least 0.
std::size_t DefaultPaLength(std::size_t sifted, double pe_threshold,
                            std::size_t leak);

}  // namespace qpvkex::kex

#endif  // QPVKEX_QKD_H_
