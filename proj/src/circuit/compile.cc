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

#include "eftqpe/circuit/compile.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eftqpe {

namespace {

constexpr double kPi = std::numbers::pi;

int quarter_turns(double angle) {
    long k = std::lround(angle / (kPi / 2));
    return (int)(((k % 4) + 4) % 4);
}

}  // namespace

PauliString PauliString::identity(size_t n) {
    if (n > 64) {
        throw std::invalid_argument("Pauli strings are limited to 64 qubits");
    }
    PauliString p;
    p.n = n;
    return p;
}

PauliString PauliString::single(size_t n, uint32_t q, char c) {
    std::string s(n, 'I');
    s.at(q) = c;
    return from_str(s);
}

PauliString PauliString::from_str(const std::string &s) {
    size_t start = 0;
    uint8_t phase = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        phase = s[0] == '-' ? 2 : 0;
        start = 1;
    }
    PauliString p = identity(s.size() - start);
    for (size_t k = start; k < s.size(); k++) {
        uint64_t bit = uint64_t{1} << (k - start);
        switch (s[k]) {
            case 'I':
                break;
            case 'X':
                p.x |= bit;
                break;
            case 'Z':
                p.z |= bit;
                break;
            case 'Y':
                p.x |= bit;
                p.z |= bit;
                phase++;
                break;
            default:
                throw std::invalid_argument("bad Pauli character in '" + s + "'");
        }
    }
    p.phase = phase & 3;
    return p;
}

std::string PauliString::letters() const {
    std::string s(n, 'I');
    for (size_t k = 0; k < n; k++) {
        bool bx = (x >> k) & 1;
        bool bz = (z >> k) & 1;
        s[k] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

int PauliString::sign() const {
    int r = ((int)phase - std::popcount(x & z)) & 3;
    if (r == 0) {
        return 1;
    }
    if (r == 2) {
        return -1;
    }
    throw std::logic_error("non-Hermitian Pauli string");
}

std::string PauliString::str() const {
    return (sign() > 0 ? "+" : "-") + letters();
}

bool PauliString::commutes(const PauliString &o) const {
    return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
}

PauliString PauliString::operator*(const PauliString &o) const {
    PauliString r;
    r.n = n;
    r.x = x ^ o.x;
    r.z = z ^ o.z;
    r.phase = (uint8_t)((phase + o.phase + 2 * std::popcount(z & o.x)) & 3);
    return r;
}

PauliString conjugate_by_dagger(const GateOp &g, const PauliString &q) {
    PauliString r = q;
    uint64_t a = uint64_t{1} << g.q0;
    bool xa = q.x & a;
    bool za = q.z & a;
    auto add = [&](int k) { r.phase = (uint8_t)((r.phase + k) & 3); };
    auto s_rule = [&](bool dagger) {
        // S^dag X S = -Y and S X S^dag = Y, Z fixed.
        if (xa) {
            r.z ^= a;
            add(dagger ? 1 : 3);
        }
    };
    switch (g.kind) {
        case GateKind::H:
            if (xa != za) {
                r.x ^= a;
                r.z ^= a;
            } else if (xa && za) {
                add(2);
            }
            return r;
        case GateKind::S:
            s_rule(false);
            return r;
        case GateKind::Sdag:
            s_rule(true);
            return r;
        case GateKind::X:
            if (za) {
                add(2);
            }
            return r;
        case GateKind::Z:
            if (xa) {
                add(2);
            }
            return r;
        case GateKind::Y:
            if (xa != za) {
                add(2);
            }
            return r;
        case GateKind::CNOT: {
            uint64_t c = uint64_t{1} << g.q0;
            uint64_t t = uint64_t{1} << g.q1;
            if (q.x & c) {
                r.x ^= t;
            }
            if (q.z & t) {
                r.z ^= c;
            }
            return r;
        }
        case GateKind::RZ:
            if (!is_clifford_angle(g.angle)) {
                break;
            }
            switch (quarter_turns(g.angle)) {
                case 1:
                    s_rule(false);
                    break;
                case 2:
                    if (xa) {
                        add(2);
                    }
                    break;
                case 3:
                    s_rule(true);
                    break;
                default:
                    break;
            }
            return r;
        case GateKind::PauliRot: {
            if (!is_clifford_angle(g.angle)) {
                break;
            }
            PauliString p = PauliString::from_str(g.pauli);
            if (p.commutes(q)) {
                return r;
            }
            int k = quarter_turns(g.angle);
            if (k == 0) {
                return r;
            }
            if (k == 2) {
                add(2);
                return r;
            }
            // exp(+-i pi/4 P) conjugation of an anticommuting Q gives -+i Q P.
            r = q * p;
            r.phase = (uint8_t)((r.phase + (k == 1 ? 3 : 1)) & 3);
            return r;
        }
        default:
            break;
    }
    throw std::invalid_argument(std::string("not a Clifford op: ") + gate_name(g.kind));
}

double normalize_angle(double a) {
    double r = std::remainder(a, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    return r;
}

CompiledCircuit commute_cliffords(const Circuit &c) {
    c.validate();
    size_t n = c.n_qubits;
    std::vector<PauliString> xi, zi;
    for (uint32_t q = 0; q < n; q++) {
        xi.push_back(PauliString::single(n, q, 'X'));
        zi.push_back(PauliString::single(n, q, 'Z'));
    }
    // Maps a Pauli P to C^dag P C for the Clifford prefix C seen so far.
    auto image = [&](const PauliString &p) {
        PauliString out = PauliString::identity(n);
        out.phase = p.phase;
        for (uint32_t q = 0; q < n; q++) {
            if ((p.x >> q) & 1) {
                out = out * xi[q];
            }
        }
        for (uint32_t q = 0; q < n; q++) {
            if ((p.z >> q) & 1) {
                out = out * zi[q];
            }
        }
        return out;
    };

    CompiledCircuit out;
    out.n_qubits = n;
    out.final_measurements.assign(c.n_classical_bits, "");
    bool measuring = false;
    for (const auto &g : c.ops) {
        if (g.condition) {
            throw std::invalid_argument("classically controlled ops must be compiled per branch");
        }
        if (g.kind == GateKind::Reset) {
            throw std::invalid_argument("reset is not supported by the Clifford pass");
        }
        if (g.kind == GateKind::Measure) {
            measuring = true;
            out.final_measurements[g.bit] = image(PauliString::single(n, g.q0, 'Z')).str();
            continue;
        }
        if (measuring) {
            throw std::invalid_argument("only terminal measurements are supported");
        }
        if (g.is_non_clifford()) {
            PauliString local;
            double angle;
            switch (g.kind) {
                case GateKind::T:
                    local = PauliString::single(n, g.q0, 'Z');
                    angle = kPi / 8;
                    break;
                case GateKind::Tdag:
                    local = PauliString::single(n, g.q0, 'Z');
                    angle = -kPi / 8;
                    break;
                case GateKind::RZ:
                    local = PauliString::single(n, g.q0, 'Z');
                    angle = g.angle / 2;
                    break;
                default:
                    local = PauliString::from_str(g.pauli);
                    angle = g.angle / 2;
            }
            PauliString moved = image(local);
            out.rotations.push_back({moved.letters(), normalize_angle(angle * moved.sign())});
            continue;
        }
        std::vector<PauliString> nx, nz;
        for (uint32_t q = 0; q < n; q++) {
            nx.push_back(image(conjugate_by_dagger(g, PauliString::single(n, q, 'X'))));
            nz.push_back(image(conjugate_by_dagger(g, PauliString::single(n, q, 'Z'))));
        }
        xi = std::move(nx);
        zi = std::move(nz);
        out.clifford_tail.push_back(g);
    }
    return out;
}

Circuit rotations_as_circuit(const CompiledCircuit &cc) {
    Circuit c(cc.n_qubits);
    for (const auto &r : cc.rotations) {
        c.append(GateOp::pauli_rot(r.pauli, 2 * r.angle));
    }
    return c;
}

Eigen::MatrixXcd compiled_unitary(const CompiledCircuit &cc) {
    Circuit c = rotations_as_circuit(cc);
    for (const auto &g : cc.clifford_tail) {
        c.append(g);
    }
    return circuit_unitary(c);
}

Circuit t_teleportation_expand(const PauliProductRotation &r) {
    double sgn;
    if (std::abs(r.angle - kPi / 8) < 1e-12) {
        sgn = 1;
    } else if (std::abs(r.angle + kPi / 8) < 1e-12) {
        sgn = -1;
    } else {
        throw std::invalid_argument("teleportation needs a +-pi/8 rotation");
    }
    size_t n = r.pauli.size();
    PauliString::from_str(r.pauli);
    uint32_t anc = (uint32_t)n;
    Circuit c(n + 1, 2);
    std::string p = r.pauli + "I";

    // Joint P (x) Z measurement: rotate the support to Z, collect parity on the ancilla.
    std::vector<uint32_t> support;
    for (uint32_t q = 0; q < n; q++) {
        char ch = r.pauli[q];
        if (ch == 'I') {
            continue;
        }
        support.push_back(q);
        if (ch == 'Y') {
            c.append(GateOp::single(GateKind::Sdag, q));
        }
        if (ch != 'Z') {
            c.append(GateOp::single(GateKind::H, q));
        }
    }
    for (auto q : support) {
        c.append(GateOp::cnot(q, anc));
    }
    c.append(GateOp::measure(anc, 0));
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        c.append(GateOp::cnot(*it, anc));
    }
    for (auto q : support) {
        char ch = r.pauli[q];
        if (ch != 'Z') {
            c.append(GateOp::single(GateKind::H, q));
        }
        if (ch == 'Y') {
            c.append(GateOp::single(GateKind::S, q));
        }
    }
    // X measurement of the consumed magic state.
    c.append(GateOp::single(GateKind::H, anc));
    c.append(GateOp::measure(anc, 1));

    // With this magic state the bare outcome (+1, +1) applies exp(+i pi/8 P).
    if (sgn > 0) {
        c.append(GateOp::pauli_rot(p, kPi / 2));
        c.append(GateOp::pauli_rot(p, -kPi / 2, 0b01));
        c.append(GateOp::pauli_rot(p, kPi, 0b10));
    } else {
        c.append(GateOp::pauli_rot(p, kPi / 2, 0b01));
        c.append(GateOp::pauli_rot(p, kPi, 0b01));
        c.append(GateOp::pauli_rot(p, kPi, 0b10));
    }
    return c;
}

}  // namespace eftqpe
