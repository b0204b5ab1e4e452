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

#ifndef EFTQPE_HAMILTONIAN_H2_H
#define EFTQPE_HAMILTONIAN_H2_H

#include <Eigen/Dense>
#include <string>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/core/state.h"

namespace eftqpe {

/// H = g1 Z1 + g2 Z2 + g3 X1X2 + g4 Y1Y2 on two system qubits (qubit 1 is the low bit).
/// The identity term is kept apart as a classical offset.
struct H2Hamiltonian {
    double g1 = 0, g2 = 0, g3 = 0, g4 = 0;
    double energy_offset = 0;
    double bond_length_angstrom = 0;
    std::string source;
    std::string note;

    static H2Hamiltonian from_file(const std::string &path);
    static H2Hamiltonian from_text(const std::string &text);
    void check() const;
    Eigen::Matrix4cd matrix() const;
};

struct TrotterConfig {
    double t = 0.5;
    int order = 1;
    void check() const;
};

struct Eigensystem {
    Eigen::Vector4d values;
    Eigen::Matrix4cd vectors;  // columns, ascending energy
};

Eigensystem exact_eigensystem(const H2Hamiltonian &h);

/// e^{-i g4 Y1Y2 t} e^{-i g3 X1X2 t} e^{-i g2 Z2 t} e^{-i g1 Z1 t} (Z1 applied first).
Eigen::Matrix4cd trotter_unitary(const H2Hamiltonian &h, const TrotterConfig &cfg);

/// Qubit roles inside a wider register.
struct QueryLayout {
    size_t width = 3;
    uint32_t control = 0;
    uint32_t s1 = 1;
    uint32_t s2 = 2;
};

/// `powers` repetitions of the directionally controlled Trotter step: each term is an
/// uncontrolled RZ on the parity qubit sandwiched by CNOTs from the control, so the
/// circuit is |0><0| (x) A^powers + |1><1| (x) B^powers with
/// A = prod e^{+i g P t/2}, B = prod e^{-i g P t/2}. Exactly 4 RZ per query.
Circuit build_controlled_trotter(const H2Hamiltonian &h, const TrotterConfig &cfg, int64_t powers,
                                 const QueryLayout &layout = QueryLayout{});

/// The two branch blocks of one query on the 2-qubit system.
void directional_blocks(const H2Hamiltonian &h, const TrotterConfig &cfg, Eigen::Matrix4cd &a, Eigen::Matrix4cd &b);

/// Phase per query imprinted on the ground branch by the directional blocks: with
/// A a0 = e^{i alpha} a0 and B b0 = e^{-i beta} b0, the Hadamard test sees e^{-i (alpha + beta) k}.
double query_phase(const H2Hamiltonian &h, const TrotterConfig &cfg);

struct TrotterError {
    double phase_error = 0;   // radians
    double energy_error = 0;  // Hartree
};

/// |arg lambda_trot - (-E0 t)| on the ground branch of the first-order step.
TrotterError trotter_phase_error(const H2Hamiltonian &h, const TrotterConfig &cfg);

struct PreparedState {
    StateVector state{2};
    double overlap = 1;
};

/// sqrt(gamma) |psi0> + sqrt(1-gamma) |psi1>, psi1 the first excited eigenstate.
PreparedState prepare_with_overlap(const H2Hamiltonian &h, double gamma);

}  // namespace eftqpe

#endif
