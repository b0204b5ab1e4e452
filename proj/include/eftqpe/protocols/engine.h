// Copyright 2026 The eftqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EFTQPE_PROTOCOLS_ENGINE_H
#define EFTQPE_PROTOCOLS_ENGINE_H

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/circuit/compile.h"
#include "eftqpe/core/state.h"

namespace eftqpe {

/// Applies a dense 2^w x 2^w matrix to qubits `targets` (local qubit i -> targets[i]).
void apply_matrix(StateVector &psi, const Eigen::MatrixXcd &m, const std::vector<uint32_t> &targets);

/// Noise attached to synthesized rotations: each rotation costs `t_per_rotation` T gates
/// and every T gate depolarizes its acted qubits with probability `rate_per_t`.
struct SlotNoise {
    double rate_per_t = 0;
    int64_t t_per_rotation = 1;
    bool noiseless() const {
        return rate_per_t == 0;
    }
};

/// Repeated application of one controlled query, simulated in the compiled frame: the
/// query is a list of Pauli product rotations followed by a Clifford tail, and noise
/// events fire after individual rotations on the rotation's support plus the control.
class QueryEngine {
   public:
    QueryEngine(const Circuit &query, uint32_t control, SlotNoise noise);

    size_t width() const {
        return width_;
    }
    size_t slots() const {
        return segments_.size() - 1;
    }
    const SlotNoise &noise() const {
        return noise_;
    }
    /// Local qubits hit by a noise event after rotation s.
    const std::vector<uint32_t> &acted(size_t s) const {
        return acted_[s];
    }
    /// T gates in k queries.
    int64_t t_gates(int64_t k) const;
    /// Probability that k queries run without a noise event.
    double clean_probability(int64_t k) const;

    /// Exact W^k on the target qubits.
    void apply_power(StateVector &psi, int64_t k, const std::vector<uint32_t> &targets) const;
    /// W^k with sampled noise events; with `at_least_one` the events are drawn conditioned on
    /// there being one or more. Returns the number of events.
    int apply_noisy(StateVector &psi, int64_t k, const std::vector<uint32_t> &targets, Rng &rng,
                    bool at_least_one = false) const;

   private:
    const Eigen::MatrixXcd &pow2_matrix(int e) const;
    void apply_pauli_error(StateVector &psi, size_t slot, const std::vector<uint32_t> &targets, Rng &rng) const;

    size_t width_;
    uint32_t control_;
    SlotNoise noise_;
    // segments_[s] = rotation s for s < slots(); segments_.back() = Clifford tail.
    std::vector<Eigen::MatrixXcd> segments_;
    std::vector<std::vector<uint32_t>> acted_;
    std::vector<double> slot_prob_;
    double max_prob_ = 0;
    mutable std::vector<Eigen::MatrixXcd> powers_;
};

/// Positions of noise candidates among n T gates, each firing with probability q.
/// With `at_least_one` the first position is drawn from the truncated geometric law.
std::vector<int64_t> sample_event_positions(int64_t n, double q, Rng &rng, bool at_least_one);

/// Random non-identity Pauli on `k` qubits as letters over {I,X,Y,Z}.
std::string random_local_pauli(size_t k, Rng &rng);

/// Applies single-qubit Pauli letters to qubits `targets`.
void apply_local_pauli(StateVector &psi, const std::string &letters, const std::vector<uint32_t> &targets);

}  // namespace eftqpe

#endif
