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

#ifndef EFTQPE_CIRCUIT_CIRCUIT_H
#define EFTQPE_CIRCUIT_CIRCUIT_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "eftqpe/core/gate.h"

namespace eftqpe {

struct Circuit {
    size_t n_qubits = 0;
    size_t n_classical_bits = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    explicit Circuit(size_t n_qubits, size_t n_classical_bits = 0)
        : n_qubits(n_qubits), n_classical_bits(n_classical_bits) {
    }

    Circuit &append(const GateOp &g);
    Circuit &append(const Circuit &other);
    /// Throws on out-of-range qubits, bad angles, or conditions that read unwritten bits.
    void validate() const;

    /// Text form, one op per line: `GATE q0 [q1] [angle]`, see README.
    std::string str() const;
    static Circuit from_text(const std::string &text);

    bool operator==(const Circuit &other) const = default;
};

/// Dense unitary of a measurement-free circuit (columns indexed little-endian).
Eigen::MatrixXcd circuit_unitary(const Circuit &c);

/// Distance between unitaries minimized over a global phase (operator norm).
double phase_insensitive_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

size_t count_non_clifford(const Circuit &c);

}  // namespace eftqpe

#endif
