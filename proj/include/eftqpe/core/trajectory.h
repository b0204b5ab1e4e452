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

#ifndef EFTQPE_CORE_TRAJECTORY_H
#define EFTQPE_CORE_TRAJECTORY_H

#include <cstdint>
#include <map>
#include <vector>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/core/state.h"

namespace eftqpe {

/// Depolarization attached to every non-Clifford op. The channel acts on the op's own
/// support plus `extra_qubits` (e.g. the Hadamard-test ancilla that a directionally
/// controlled rotation also touches after compilation).
struct PerGateNoise {
    double rate = 0;
    std::vector<uint32_t> extra_qubits;

    std::vector<uint32_t> acted_qubits(const GateOp &g) const;
};

/// Statevector Monte Carlo run from |0...0>. Depolarization is unravelled exactly:
/// with probability rate (1 - 4^-k) a uniformly random non-identity Pauli hits the k acted
/// qubits. Returns the classical register.
std::vector<uint8_t> run_trajectory(const Circuit &c, const PerGateNoise &noise, uint64_t seed);
std::vector<uint8_t> run_trajectory(const Circuit &c, const PerGateNoise &noise, StateVector &state, Rng &rng);

/// Exact channel evolution. Measurements are averaged over their outcomes (classical
/// conditions resolved branch by branch). Returns the probability of each register value
/// (bit k of the key = classical bit k) and the outcome-averaged final state.
struct ChannelResult {
    std::map<uint64_t, double> distribution;
    DensityMatrix state;
};
ChannelResult run_channel(const Circuit &c, const PerGateNoise &noise, const DensityMatrix &initial);

}  // namespace eftqpe

#endif
