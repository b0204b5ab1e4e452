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

#include "eftqpe/core/state.h"

#include <cmath>
#include <stdexcept>

namespace eftqpe {

namespace {

size_t g_qubit_cap = 14;

bool condition_met(const GateOp &g, const std::vector<uint8_t> &bits) {
    for (size_t k = 0; k < 64; k++) {
        if ((g.condition >> k) & 1) {
            if (k >= bits.size()) {
                throw std::out_of_range("condition reads an unwritten classical bit");
            }
            if (!bits[k]) {
                return false;
            }
        }
    }
    return true;
}

void record(std::vector<uint8_t> &bits, uint32_t index, int value) {
    if (index >= bits.size()) {
        bits.resize(index + 1, 0);
    }
    bits[index] = (uint8_t)value;
}

}  // namespace

size_t qubit_cap() {
    return g_qubit_cap;
}

void set_qubit_cap(size_t cap) {
    g_qubit_cap = cap;
}

StateVector::StateVector(size_t n_qubits) : n_(n_qubits) {
    if (n_qubits > g_qubit_cap) {
        throw std::invalid_argument("statevector width " + std::to_string(n_qubits) + " exceeds cap " +
                                    std::to_string(g_qubit_cap));
    }
    amp_.assign(size_t{1} << n_qubits, 0);
    amp_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
    size_t n = 0;
    while ((size_t{1} << n) < amplitudes.size()) {
        n++;
    }
    if ((size_t{1} << n) != amplitudes.size()) {
        throw std::invalid_argument("amplitude count is not a power of two");
    }
    StateVector out(n);
    out.amp_ = std::move(amplitudes);
    double nrm = out.norm();
    if (std::abs(nrm - 1) > 1e-12) {
        throw std::invalid_argument("state is not normalized");
    }
    return out;
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

double StateVector::prob_one(uint32_t q) const {
    size_t mask = size_t{1} << q;
    double p = 0;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & mask) {
            p += std::norm(amp_[i]);
        }
    }
    return p;
}

void StateVector::collapse(uint32_t q, int bit) {
    size_t mask = size_t{1} << q;
    double keep = 0;
    for (size_t i = 0; i < amp_.size(); i++) {
        bool one = (i & mask) != 0;
        if (one != (bit == 1)) {
            amp_[i] = 0;
        } else {
            keep += std::norm(amp_[i]);
        }
    }
    if (keep <= 0) {
        throw std::domain_error("collapse onto a zero-probability outcome");
    }
    double s = 1 / std::sqrt(keep);
    for (auto &a : amp_) {
        a *= s;
    }
}

DensityMatrix::DensityMatrix(size_t n_qubits) : n_(n_qubits) {
    if (n_qubits > kDensityQubitCap) {
        throw std::invalid_argument("density matrix width exceeds cap");
    }
    size_t dim = size_t{1} << n_qubits;
    m_ = Eigen::MatrixXcd::Zero((Eigen::Index)dim, (Eigen::Index)dim);
    m_(0, 0) = 1;
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    DensityMatrix out(psi.n_qubits());
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), (Eigen::Index)psi.dim());
    out.m_ = v * v.adjoint();
    return out;
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd m) {
    size_t n = 0;
    while ((Eigen::Index{1} << n) < m.rows()) {
        n++;
    }
    if (m.rows() != m.cols() || (Eigen::Index{1} << n) != m.rows()) {
        throw std::invalid_argument("density matrix must be square with power-of-two size");
    }
    DensityMatrix out(n);
    out.m_ = std::move(m);
    return out;
}

double DensityMatrix::trace() const {
    return m_.trace().real();
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

double DensityMatrix::prob_one(uint32_t q) const {
    double p = 0;
    for (Eigen::Index i = 0; i < m_.rows(); i++) {
        if ((i >> q) & 1) {
            p += m_(i, i).real();
        }
    }
    return p;
}

void DensityMatrix::collapse(uint32_t q, int bit) {
    for (Eigen::Index i = 0; i < m_.rows(); i++) {
        for (Eigen::Index j = 0; j < m_.cols(); j++) {
            if (((i >> q) & 1) != bit || ((j >> q) & 1) != bit) {
                m_(i, j) = 0;
            }
        }
    }
    double tr = trace();
    if (tr <= 0) {
        throw std::domain_error("collapse onto a zero-probability outcome");
    }
    m_ /= tr;
}

void apply_gate(StateVector &psi, const GateOp &g) {
    check_gate(g, psi.n_qubits());
    apply_unitary_kernel(psi.amplitudes().data(), psi.n_qubits(), g);
}

void apply_gate(DensityMatrix &rho, const GateOp &g) {
    check_gate(g, rho.n_qubits());
    auto &m = rho.matrix();
    size_t n = rho.n_qubits();
    // rho -> U rho, then U (U rho)^dagger = U rho U^dagger after another adjoint.
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        apply_unitary_kernel(m.col(c).data(), n, g);
    }
    Eigen::MatrixXcd h = m.adjoint();
    for (Eigen::Index c = 0; c < h.cols(); c++) {
        apply_unitary_kernel(h.col(c).data(), n, g);
    }
    m = h.adjoint();
}

template <typename State>
static void apply_full(State &s, const GateOp &g, std::vector<uint8_t> &bits, Rng &rng) {
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) {
        check_gate(g, s.n_qubits());
        double p1 = s.prob_one(g.q0);
        int b = std::uniform_real_distribution<double>(0, 1)(rng) < p1 ? 1 : 0;
        s.collapse(g.q0, b);
        if (g.kind == GateKind::Measure) {
            record(bits, g.bit, b);
        } else if (b) {
            apply_gate(s, GateOp::single(GateKind::X, g.q0));
        }
        return;
    }
    if (g.condition && !condition_met(g, bits)) {
        return;
    }
    apply_gate(s, g);
}

void apply_gate(StateVector &psi, const GateOp &g, std::vector<uint8_t> &bits, Rng &rng) {
    apply_full(psi, g, bits, rng);
}

void apply_gate(DensityMatrix &rho, const GateOp &g, std::vector<uint8_t> &bits, Rng &rng) {
    apply_full(rho, g, bits, rng);
}

std::vector<std::string> all_paulis(size_t width, const std::vector<uint32_t> &qubits) {
    std::vector<std::string> out;
    size_t k = qubits.size();
    size_t total = size_t{1} << (2 * k);
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    for (size_t code = 0; code < total; code++) {
        std::string p(width, 'I');
        for (size_t j = 0; j < k; j++) {
            p[qubits[j]] = kLetters[(code >> (2 * j)) & 3];
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string random_pauli(size_t width, const std::vector<uint32_t> &qubits, Rng &rng) {
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    size_t total = size_t{1} << (2 * qubits.size());
    size_t code = std::uniform_int_distribution<size_t>(1, total - 1)(rng);
    std::string p(width, 'I');
    for (size_t j = 0; j < qubits.size(); j++) {
        p[qubits[j]] = kLetters[(code >> (2 * j)) & 3];
    }
    return p;
}

DensityMatrix depolarize(const DensityMatrix &rho, double rate, const std::vector<uint32_t> &qubits) {
    if (!(rate >= 0 && rate <= 1)) {
        throw std::invalid_argument("depolarizing rate must lie in [0,1]");
    }
    for (auto q : qubits) {
        if (q >= rho.n_qubits()) {
            throw std::out_of_range("depolarized qubit out of range");
        }
    }
    if (rate == 0 || qubits.empty()) {
        return rho;
    }
    // The fully depolarized part is the Pauli twirl over the acted subset.
    size_t n = rho.n_qubits();
    auto paulis = all_paulis(n, qubits);
    Eigen::MatrixXcd twirl = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &p : paulis) {
        Eigen::MatrixXcd m = rho.matrix();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            apply_pauli_kernel(m.col(c).data(), n, p);
        }
        Eigen::MatrixXcd h = m.adjoint();
        for (Eigen::Index c = 0; c < h.cols(); c++) {
            apply_pauli_kernel(h.col(c).data(), n, p);
        }
        twirl += h.adjoint();
    }
    twirl /= (double)paulis.size();
    return DensityMatrix::from_matrix((1 - rate) * rho.matrix() + rate * twirl);
}

}  // namespace eftqpe
