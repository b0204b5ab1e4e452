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

#ifndef EFTQPE_CORE_GATE_H
#define EFTQPE_CORE_GATE_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace eftqpe {

using cplx = std::complex<double>;

enum class GateKind : uint8_t {
    H,
    S,
    Sdag,
    X,
    Y,
    Z,
    T,
    Tdag,
    CNOT,
    RZ,
    PauliRot,
    Measure,
    Reset,
};

/// One circuit element.
///
/// RZ(angle) = exp(-i angle Z / 2); PauliRot(pauli, angle) = exp(-i angle P / 2), where
/// character k of `pauli` acts on qubit k. A nonzero `condition` mask makes a unitary op
/// fire only when every selected classical bit is 1 (the IPE feedback rotations).
struct GateOp {
    GateKind kind = GateKind::H;
    uint32_t q0 = 0;
    uint32_t q1 = 0;
    double angle = 0;
    std::string pauli;
    uint32_t bit = 0;
    uint64_t condition = 0;

    static GateOp single(GateKind kind, uint32_t q);
    static GateOp cnot(uint32_t control, uint32_t target);
    static GateOp rz(uint32_t q, double angle, uint64_t condition = 0);
    static GateOp pauli_rot(std::string pauli, double angle, uint64_t condition = 0);
    static GateOp measure(uint32_t q, uint32_t bit);
    static GateOp reset(uint32_t q);

    bool is_unitary() const;
    /// True for T, Tdag, and rotations whose angle is not a multiple of pi/2.
    bool is_non_clifford() const;
    /// Qubits the op touches (PauliRot: its non-identity support).
    std::vector<uint32_t> support() const;
    bool operator==(const GateOp &other) const = default;
};

const char *gate_name(GateKind kind);
bool is_clifford_angle(double angle);

/// Applies a unitary op to a little-endian amplitude array of 2^n_qubits entries.
/// Classical conditions are ignored here.
void apply_unitary_kernel(cplx *amp, size_t n_qubits, const GateOp &g);

/// Multiplies the amplitude array by a Pauli string (no phase rotation).
void apply_pauli_kernel(cplx *amp, size_t n_qubits, const std::string &pauli);

/// Validates qubit indices, Pauli width and angle finiteness against a register width.
void check_gate(const GateOp &g, size_t n_qubits);

}  // namespace eftqpe

#endif
