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

#ifndef EFTQPE_CIRCUIT_COMPILE_H
#define EFTQPE_CIRCUIT_COMPILE_H

#include <string>
#include <vector>

#include "eftqpe/circuit/circuit.h"

namespace eftqpe {

/// Pauli operator i^phase * prod_k X_k^{x_k} Z_k^{z_k}.
struct PauliString {
    size_t n = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    uint8_t phase = 0;

    static PauliString identity(size_t n);
    static PauliString single(size_t n, uint32_t q, char p);
    /// Parses "XZI" or a signed "-XZI" / "+XZI".
    static PauliString from_str(const std::string &s);
    /// Hermitian Paulis only; returns e.g. "-XZI".
    std::string str() const;
    /// +1 or -1 for Hermitian strings; throws otherwise.
    int sign() const;
    std::string letters() const;
    bool commutes(const PauliString &other) const;

    PauliString operator*(const PauliString &other) const;
    bool operator==(const PauliString &other) const = default;
};

/// G^dagger Q G for a Clifford op G.
PauliString conjugate_by_dagger(const GateOp &g, const PauliString &q);

/// exp(-i angle P); pi/8 for T-like rotations.
struct PauliProductRotation {
    std::string pauli;
    double angle = 0;
    bool operator==(const PauliProductRotation &other) const = default;
};

struct CompiledCircuit {
    size_t n_qubits = 0;
    std::vector<PauliProductRotation> rotations;
    /// Signed Pauli string measured for each classical bit.
    std::vector<std::string> final_measurements;
    /// Clifford gates moved past the rotations, in application order.
    std::vector<GateOp> clifford_tail;
};

double normalize_angle(double a);

CompiledCircuit commute_cliffords(const Circuit &c);

/// Rotation list as a circuit of PauliRot ops (recompiling it is the identity).
Circuit rotations_as_circuit(const CompiledCircuit &cc);

/// Unitary of the compiled form: tail Cliffords after the rotations.
Eigen::MatrixXcd compiled_unitary(const CompiledCircuit &cc);

/// Gate-teleported T-like rotation (angle +-pi/8) for an n-qubit Pauli. Qubit n is the
/// magic-state ancilla, expected to hold (|0> + e^{-i pi/4}|1>)/sqrt(2) on entry.
Circuit t_teleportation_expand(const PauliProductRotation &r);

}  // namespace eftqpe

#endif
