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

#ifndef EFTQPE_CORE_STATE_H
#define EFTQPE_CORE_STATE_H

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "eftqpe/core/gate.h"

namespace eftqpe {

using Rng = std::mt19937_64;

/// Width cap for statevectors. Little-endian: qubit k is bit k of the amplitude index.
size_t qubit_cap();
void set_qubit_cap(size_t cap);

constexpr size_t kDensityQubitCap = 6;

class StateVector {
   public:
    explicit StateVector(size_t n_qubits);
    static StateVector from_amplitudes(std::vector<cplx> amplitudes);

    size_t n_qubits() const {
        return n_;
    }
    size_t dim() const {
        return amp_.size();
    }
    std::vector<cplx> &amplitudes() {
        return amp_;
    }
    const std::vector<cplx> &amplitudes() const {
        return amp_;
    }
    cplx &operator[](size_t i) {
        return amp_[i];
    }
    cplx operator[](size_t i) const {
        return amp_[i];
    }

    double norm() const;
    double prob_one(uint32_t q) const;
    /// Projects qubit q onto `bit` and renormalizes.
    void collapse(uint32_t q, int bit);

   private:
    size_t n_;
    std::vector<cplx> amp_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(size_t n_qubits);
    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix from_matrix(Eigen::MatrixXcd m);

    size_t n_qubits() const {
        return n_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    Eigen::MatrixXcd &matrix() {
        return m_;
    }
    double trace() const;
    double purity() const;
    double prob_one(uint32_t q) const;
    void collapse(uint32_t q, int bit);

   private:
    size_t n_;
    Eigen::MatrixXcd m_;
};

/// Applies a unitary op (conditions ignored) to a pure or mixed state.
void apply_gate(StateVector &psi, const GateOp &g);
void apply_gate(DensityMatrix &rho, const GateOp &g);

/// Full op semantics: classical conditions, measurement (sampled collapse, bit recorded as
/// 0/1 with signed outcome (-1)^b) and reset.
void apply_gate(StateVector &psi, const GateOp &g, std::vector<uint8_t> &bits, Rng &rng);
void apply_gate(DensityMatrix &rho, const GateOp &g, std::vector<uint8_t> &bits, Rng &rng);

/// (1-rate) rho + rate (I/2^k (x) Tr_k rho) on the listed qubits.
DensityMatrix depolarize(const DensityMatrix &rho, double rate, const std::vector<uint32_t> &qubits);

/// Uniformly random non-identity Pauli supported on `qubits`, written over the full width.
std::string random_pauli(size_t width, const std::vector<uint32_t> &qubits, Rng &rng);

/// Every Pauli string (identity included) supported on `qubits`.
std::vector<std::string> all_paulis(size_t width, const std::vector<uint32_t> &qubits);

}  // namespace eftqpe

#endif
