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

#include "eftqpe/core/trajectory.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eftqpe {

std::vector<uint32_t> PerGateNoise::acted_qubits(const GateOp &g) const {
    std::vector<uint32_t> q = g.support();
    for (auto e : extra_qubits) {
        if (std::find(q.begin(), q.end(), e) == q.end()) {
            q.push_back(e);
        }
    }
    std::sort(q.begin(), q.end());
    return q;
}

namespace {

bool fires(const GateOp &g, uint64_t reg) {
    return (g.condition & reg) == g.condition;
}

void check_noise(const PerGateNoise &noise) {
    if (!(noise.rate >= 0 && noise.rate <= 1)) {
        throw std::invalid_argument("per-gate depolarization rate must lie in [0,1]");
    }
}

}  // namespace

std::vector<uint8_t> run_trajectory(const Circuit &c, const PerGateNoise &noise, StateVector &state, Rng &rng) {
    check_noise(noise);
    std::vector<uint8_t> bits(c.n_classical_bits, 0);
    std::uniform_real_distribution<double> uni(0, 1);
    for (const auto &g : c.ops) {
        bool applied = !g.condition || g.kind == GateKind::Measure || g.kind == GateKind::Reset;
        if (!applied) {
            uint64_t reg = 0;
            for (size_t k = 0; k < bits.size() && k < 64; k++) {
                reg |= uint64_t(bits[k]) << k;
            }
            applied = fires(g, reg);
        }
        apply_gate(state, g, bits, rng);
        if (applied && noise.rate > 0 && g.is_non_clifford()) {
            auto qs = noise.acted_qubits(g);
            double p_inject = noise.rate * (1 - std::pow(4.0, -(double)qs.size()));
            if (uni(rng) < p_inject) {
                std::string p = random_pauli(c.n_qubits, qs, rng);
                apply_pauli_kernel(state.amplitudes().data(), c.n_qubits, p);
            }
        }
    }
    return bits;
}

std::vector<uint8_t> run_trajectory(const Circuit &c, const PerGateNoise &noise, uint64_t seed) {
    c.validate();
    StateVector state(c.n_qubits);
    Rng rng(seed);
    return run_trajectory(c, noise, state, rng);
}

namespace {

struct Branch {
    Eigen::MatrixXcd rho;  // unnormalized, trace = branch probability
    uint64_t reg = 0;
};

void apply_unitary_dm(Eigen::MatrixXcd &m, size_t n, const GateOp &g) {
    for (Eigen::Index col = 0; col < m.cols(); col++) {
        apply_unitary_kernel(m.col(col).data(), n, g);
    }
    Eigen::MatrixXcd h = m.adjoint();
    for (Eigen::Index col = 0; col < h.cols(); col++) {
        apply_unitary_kernel(h.col(col).data(), n, g);
    }
    m = h.adjoint();
}

}  // namespace

ChannelResult run_channel(const Circuit &c, const PerGateNoise &noise, const DensityMatrix &initial) {
    check_noise(noise);
    c.validate();
    if (initial.n_qubits() != c.n_qubits) {
        throw std::invalid_argument("initial state width does not match the circuit");
    }
    size_t n = c.n_qubits;
    std::vector<Branch> branches{{initial.matrix(), 0}};
    for (const auto &g : c.ops) {
        std::vector<Branch> next;
        for (auto &b : branches) {
            if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) {
                for (int v = 0; v < 2; v++) {
                    Branch nb = b;
                    for (Eigen::Index i = 0; i < nb.rho.rows(); i++) {
                        for (Eigen::Index j = 0; j < nb.rho.cols(); j++) {
                            if (((i >> g.q0) & 1) != v || ((j >> g.q0) & 1) != v) {
                                nb.rho(i, j) = 0;
                            }
                        }
                    }
                    if (nb.rho.trace().real() < 1e-15) {
                        continue;
                    }
                    if (g.kind == GateKind::Measure) {
                        nb.reg = (nb.reg & ~(uint64_t{1} << g.bit)) | (uint64_t(v) << g.bit);
                    } else if (v) {
                        apply_unitary_dm(nb.rho, n, GateOp::single(GateKind::X, g.q0));
                    }
                    next.push_back(std::move(nb));
                }
                continue;
            }
            if (fires(g, b.reg)) {
                apply_unitary_dm(b.rho, n, g);
                if (noise.rate > 0 && g.is_non_clifford()) {
                    double tr = b.rho.trace().real();
                    auto d = DensityMatrix::from_matrix(b.rho / tr);
                    b.rho = depolarize(d, noise.rate, noise.acted_qubits(g)).matrix() * tr;
                }
            }
            next.push_back(std::move(b));
        }
        branches = std::move(next);
    }
    ChannelResult out{{}, DensityMatrix(n)};
    out.state.matrix().setZero();
    for (const auto &b : branches) {
        out.distribution[b.reg] += b.rho.trace().real();
        out.state.matrix() += b.rho;
    }
    return out;
}

}  // namespace eftqpe
