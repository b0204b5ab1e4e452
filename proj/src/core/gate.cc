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

#include "eftqpe/core/gate.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eftqpe {

namespace {

constexpr double kPi = std::numbers::pi;

void apply_1q(cplx *amp, size_t n, uint32_t q, cplx m00, cplx m01, cplx m10, cplx m11) {
    size_t dim = size_t{1} << n;
    size_t mask = size_t{1} << q;
    for (size_t i = 0; i < dim; i++) {
        if (i & mask) {
            continue;
        }
        cplx a = amp[i];
        cplx b = amp[i | mask];
        amp[i] = m00 * a + m01 * b;
        amp[i | mask] = m10 * a + m11 * b;
    }
}

void apply_diag(cplx *amp, size_t n, uint32_t q, cplx d0, cplx d1) {
    size_t dim = size_t{1} << n;
    size_t mask = size_t{1} << q;
    for (size_t i = 0; i < dim; i++) {
        amp[i] *= (i & mask) ? d1 : d0;
    }
}

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    int ny = 0;
};

PauliMasks masks_of(const std::string &pauli) {
    PauliMasks m;
    for (size_t k = 0; k < pauli.size(); k++) {
        switch (pauli[k]) {
            case 'I':
                break;
            case 'X':
                m.x |= uint64_t{1} << k;
                break;
            case 'Z':
                m.z |= uint64_t{1} << k;
                break;
            case 'Y':
                m.x |= uint64_t{1} << k;
                m.z |= uint64_t{1} << k;
                m.ny++;
                break;
            default:
                throw std::invalid_argument("bad Pauli character in '" + pauli + "'");
        }
    }
    return m;
}

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

GateOp GateOp::single(GateKind kind, uint32_t q) {
    GateOp g;
    g.kind = kind;
    g.q0 = q;
    return g;
}

GateOp GateOp::cnot(uint32_t control, uint32_t target) {
    GateOp g;
    g.kind = GateKind::CNOT;
    g.q0 = control;
    g.q1 = target;
    return g;
}

GateOp GateOp::rz(uint32_t q, double angle, uint64_t condition) {
    GateOp g;
    g.kind = GateKind::RZ;
    g.q0 = q;
    g.angle = angle;
    g.condition = condition;
    return g;
}

GateOp GateOp::pauli_rot(std::string pauli, double angle, uint64_t condition) {
    GateOp g;
    g.kind = GateKind::PauliRot;
    g.pauli = std::move(pauli);
    g.angle = angle;
    g.condition = condition;
    return g;
}

GateOp GateOp::measure(uint32_t q, uint32_t bit) {
    GateOp g;
    g.kind = GateKind::Measure;
    g.q0 = q;
    g.bit = bit;
    return g;
}

GateOp GateOp::reset(uint32_t q) {
    GateOp g;
    g.kind = GateKind::Reset;
    g.q0 = q;
    return g;
}

bool GateOp::is_unitary() const {
    return kind != GateKind::Measure && kind != GateKind::Reset;
}

bool is_clifford_angle(double angle) {
    double k = angle / (kPi / 2);
    return std::abs(k - std::round(k)) < 1e-12;
}

bool GateOp::is_non_clifford() const {
    switch (kind) {
        case GateKind::T:
        case GateKind::Tdag:
            return true;
        case GateKind::RZ:
        case GateKind::PauliRot:
            return !is_clifford_angle(angle);
        default:
            return false;
    }
}

std::vector<uint32_t> GateOp::support() const {
    switch (kind) {
        case GateKind::CNOT:
            return {q0, q1};
        case GateKind::PauliRot: {
            std::vector<uint32_t> out;
            for (size_t k = 0; k < pauli.size(); k++) {
                if (pauli[k] != 'I') {
                    out.push_back((uint32_t)k);
                }
            }
            return out;
        }
        default:
            return {q0};
    }
}

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::Sdag:
            return "SDAG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::T:
            return "T";
        case GateKind::Tdag:
            return "TDAG";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::RZ:
            return "RZ";
        case GateKind::PauliRot:
            return "PAULIROT";
        case GateKind::Measure:
            return "MEASURE";
        case GateKind::Reset:
            return "RESET";
    }
    return "?";
}

void check_gate(const GateOp &g, size_t n_qubits) {
    if (!std::isfinite(g.angle)) {
        throw std::invalid_argument(std::string("non-finite angle on ") + gate_name(g.kind));
    }
    if (g.kind == GateKind::PauliRot) {
        if (g.pauli.size() != n_qubits) {
            throw std::invalid_argument("Pauli string '" + g.pauli + "' does not match width " +
                                        std::to_string(n_qubits));
        }
        masks_of(g.pauli);
        return;
    }
    if (g.q0 >= n_qubits || (g.kind == GateKind::CNOT && (g.q1 >= n_qubits || g.q1 == g.q0))) {
        throw std::out_of_range(std::string("qubit index out of range on ") + gate_name(g.kind));
    }
}

void apply_pauli_kernel(cplx *amp, size_t n, const std::string &pauli) {
    PauliMasks m = masks_of(pauli);
    size_t dim = size_t{1} << n;
    cplx base = kIPow[m.ny & 3];
    for (size_t i = 0; i < dim; i++) {
        size_t j = i ^ m.x;
        if (j < i) {
            continue;
        }
        // P|i> = base (-1)^{|i&z|} |i^x>.
        cplx si = (std::popcount(i & m.z) & 1) ? -base : base;
        cplx sj = (std::popcount(j & m.z) & 1) ? -base : base;
        if (i == j) {
            amp[i] *= si;
        } else {
            cplx ai = amp[i];
            amp[i] = sj * amp[j];
            amp[j] = si * ai;
        }
    }
}

void apply_unitary_kernel(cplx *amp, size_t n, const GateOp &g) {
    const double r = std::sqrt(0.5);
    switch (g.kind) {
        case GateKind::H:
            apply_1q(amp, n, g.q0, r, r, r, -r);
            return;
        case GateKind::S:
            apply_diag(amp, n, g.q0, 1, cplx(0, 1));
            return;
        case GateKind::Sdag:
            apply_diag(amp, n, g.q0, 1, cplx(0, -1));
            return;
        case GateKind::X:
            apply_1q(amp, n, g.q0, 0, 1, 1, 0);
            return;
        case GateKind::Y:
            apply_1q(amp, n, g.q0, 0, cplx(0, -1), cplx(0, 1), 0);
            return;
        case GateKind::Z:
            apply_diag(amp, n, g.q0, 1, -1);
            return;
        case GateKind::T:
            apply_diag(amp, n, g.q0, 1, std::polar(1.0, kPi / 4));
            return;
        case GateKind::Tdag:
            apply_diag(amp, n, g.q0, 1, std::polar(1.0, -kPi / 4));
            return;
        case GateKind::RZ:
            apply_diag(amp, n, g.q0, std::polar(1.0, -g.angle / 2), std::polar(1.0, g.angle / 2));
            return;
        case GateKind::CNOT: {
            size_t dim = size_t{1} << n;
            size_t cm = size_t{1} << g.q0;
            size_t tm = size_t{1} << g.q1;
            for (size_t i = 0; i < dim; i++) {
                if ((i & cm) && !(i & tm)) {
                    std::swap(amp[i], amp[i | tm]);
                }
            }
            return;
        }
        case GateKind::PauliRot: {
            size_t dim = size_t{1} << n;
            std::vector<cplx> p(amp, amp + dim);
            apply_pauli_kernel(p.data(), n, g.pauli);
            double c = std::cos(g.angle / 2);
            cplx s(0, -std::sin(g.angle / 2));
            for (size_t i = 0; i < dim; i++) {
                amp[i] = c * amp[i] + s * p[i];
            }
            return;
        }
        case GateKind::Measure:
        case GateKind::Reset:
            throw std::invalid_argument("measurement is not a unitary op");
    }
}

}  // namespace eftqpe
