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

#include "eftqpe/circuit/circuit.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace eftqpe {

namespace {

std::string fmt_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

bool parse_kind(const std::string &name, GateKind &out) {
    static const GateKind kAll[] = {GateKind::H,    GateKind::S,    GateKind::Sdag,     GateKind::X,
                                    GateKind::Y,    GateKind::Z,    GateKind::T,        GateKind::Tdag,
                                    GateKind::CNOT, GateKind::RZ,   GateKind::PauliRot, GateKind::Measure,
                                    GateKind::Reset};
    for (auto k : kAll) {
        if (name == gate_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

}  // namespace

Circuit &Circuit::append(const GateOp &g) {
    ops.push_back(g);
    if (g.kind == GateKind::Measure && g.bit + 1 > n_classical_bits) {
        n_classical_bits = g.bit + 1;
    }
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_qubits != n_qubits) {
        throw std::invalid_argument("appending a circuit of different width");
    }
    for (const auto &g : other.ops) {
        append(g);
    }
    return *this;
}

void Circuit::validate() const {
    uint64_t written = 0;
    for (const auto &g : ops) {
        check_gate(g, n_qubits);
        if (g.condition & ~written) {
            throw std::invalid_argument("classically controlled op reads a bit before it is written");
        }
        if (g.kind == GateKind::Measure) {
            if (g.bit >= n_classical_bits || g.bit >= 64) {
                throw std::out_of_range("classical bit index out of range");
            }
            written |= uint64_t{1} << g.bit;
        }
    }
}

std::string Circuit::str() const {
    std::ostringstream out;
    out << "QUBITS " << n_qubits << "\n";
    out << "BITS " << n_classical_bits << "\n";
    for (const auto &g : ops) {
        out << gate_name(g.kind);
        switch (g.kind) {
            case GateKind::CNOT:
                out << " " << g.q0 << " " << g.q1;
                break;
            case GateKind::RZ:
                out << " " << g.q0 << " " << fmt_angle(g.angle);
                break;
            case GateKind::PauliRot:
                out << " " << g.pauli << " " << fmt_angle(g.angle);
                break;
            case GateKind::Measure:
                out << " " << g.q0 << " " << g.bit;
                break;
            default:
                out << " " << g.q0;
        }
        if (g.condition) {
            out << " if " << g.condition;
        }
        out << "\n";
    }
    return out.str();
}

Circuit Circuit::from_text(const std::string &text) {
    Circuit c;
    bool have_width = false;
    bool have_bits = false;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
        };
        try {
            if (tok[0] == "QUBITS") {
                c.n_qubits = std::stoul(tok.at(1));
                have_width = true;
                continue;
            }
            if (tok[0] == "BITS") {
                c.n_classical_bits = std::stoul(tok.at(1));
                have_bits = true;
                continue;
            }
            GateKind kind;
            if (!parse_kind(tok[0], kind)) {
                fail("unknown gate '" + tok[0] + "'");
            }
            GateOp g;
            g.kind = kind;
            size_t next = 2;
            switch (kind) {
                case GateKind::CNOT:
                    g.q0 = (uint32_t)std::stoul(tok.at(1));
                    g.q1 = (uint32_t)std::stoul(tok.at(2));
                    next = 3;
                    break;
                case GateKind::RZ:
                    g.q0 = (uint32_t)std::stoul(tok.at(1));
                    g.angle = std::stod(tok.at(2));
                    next = 3;
                    break;
                case GateKind::PauliRot:
                    g.pauli = tok.at(1);
                    g.angle = std::stod(tok.at(2));
                    next = 3;
                    break;
                case GateKind::Measure:
                    g.q0 = (uint32_t)std::stoul(tok.at(1));
                    g.bit = (uint32_t)std::stoul(tok.at(2));
                    next = 3;
                    break;
                default:
                    g.q0 = (uint32_t)std::stoul(tok.at(1));
            }
            if (tok.size() > next) {
                if (tok[next] != "if" || tok.size() != next + 2) {
                    fail("trailing tokens");
                }
                g.condition = std::stoull(tok[next + 1]);
            }
            if (!have_width) {
                fail("QUBITS must precede gates");
            }
            GateOp copy = g;
            if (have_bits) {
                c.ops.push_back(copy);
            } else {
                c.append(copy);
            }
        } catch (const std::out_of_range &) {
            fail("missing operand");
        } catch (const std::invalid_argument &e) {
            std::string what = e.what();
            if (what.rfind("circuit line", 0) == 0) {
                throw;
            }
            fail("bad operand");
        }
    }
    c.validate();
    return c;
}

Eigen::MatrixXcd circuit_unitary(const Circuit &c) {
    size_t dim = size_t{1} << c.n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity((Eigen::Index)dim, (Eigen::Index)dim);
    for (const auto &g : c.ops) {
        if (!g.is_unitary() || g.condition) {
            throw std::invalid_argument("circuit_unitary needs a measurement-free, unconditioned circuit");
        }
        check_gate(g, c.n_qubits);
        for (Eigen::Index col = 0; col < u.cols(); col++) {
            apply_unitary_kernel(u.col(col).data(), c.n_qubits, g);
        }
    }
    return u;
}

double phase_insensitive_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1, 0);
    Eigen::MatrixXcd diff = a - phase * b;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
    return svd.singularValues()(0);
}

size_t count_non_clifford(const Circuit &c) {
    size_t n = 0;
    for (const auto &g : c.ops) {
        n += g.is_non_clifford() ? 1 : 0;
    }
    return n;
}

}  // namespace eftqpe
