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

#include "eftqpe/hamiltonian/h2.h"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eftqpe/util/kv.h"

namespace eftqpe {

namespace {

Eigen::Matrix4cd term(int which) {
    Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << 1, 0, 0, -1;
    // kroneckerProduct(high, low): qubit 2 is the high bit.
    auto kron = [](const Eigen::Matrix2cd &hi, const Eigen::Matrix2cd &lo) {
        Eigen::Matrix4cd m;
        for (int a = 0; a < 2; a++)
            for (int b = 0; b < 2; b++)
                for (int c = 0; c < 2; c++)
                    for (int d = 0; d < 2; d++) m(2 * a + c, 2 * b + d) = hi(a, b) * lo(c, d);
        return m;
    };
    switch (which) {
        case 0:
            return kron(i2, z);
        case 1:
            return kron(z, i2);
        case 2:
            return kron(x, x);
        default:
            return kron(y, y);
    }
}

}  // namespace

H2Hamiltonian H2Hamiltonian::from_text(const std::string &text) {
    KeyValues kv = KeyValues::parse(text);
    H2Hamiltonian h;
    h.g1 = kv.get_double("g1");
    h.g2 = kv.get_double("g2");
    h.g3 = kv.get_double("g3");
    h.g4 = kv.get_double("g4");
    h.energy_offset = kv.get_double_or("energy_offset", 0);
    h.bond_length_angstrom = kv.get_double_or("bond_length_angstrom", 0);
    h.source = kv.get_or("source", "");
    h.note = kv.get_or("note", "");
    h.check();
    return h;
}

H2Hamiltonian H2Hamiltonian::from_file(const std::string &path) {
    return from_text(read_text_file(path));
}

void H2Hamiltonian::check() const {
    for (double g : {g1, g2, g3, g4, energy_offset}) {
        if (!std::isfinite(g)) {
            throw std::invalid_argument("Hamiltonian coefficients must be finite");
        }
    }
}

Eigen::Matrix4cd H2Hamiltonian::matrix() const {
    return g1 * term(0) + g2 * term(1) + g3 * term(2) + g4 * term(3);
}

void TrotterConfig::check() const {
    if (!(t > 0) || !std::isfinite(t)) {
        throw std::invalid_argument("Trotter time step must be positive");
    }
    if (order != 1) {
        throw std::invalid_argument("only first-order Trotter products are supported");
    }
}

Eigensystem exact_eigensystem(const H2Hamiltonian &h) {
    h.check();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h.matrix());
    Eigensystem out{es.eigenvalues(), es.eigenvectors()};
    // Deterministic phase: largest component real and positive.
    for (int c = 0; c < 4; c++) {
        Eigen::Index k;
        out.vectors.col(c).cwiseAbs().maxCoeff(&k);
        cplx ph = out.vectors(k, c) / std::abs(out.vectors(k, c));
        out.vectors.col(c) /= ph;
    }
    return out;
}

Eigen::Matrix4cd trotter_unitary(const H2Hamiltonian &h, const TrotterConfig &cfg) {
    cfg.check();
    const double g[4] = {h.g1, h.g2, h.g3, h.g4};
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (int k = 0; k < 4; k++) {
        Eigen::Matrix4cd gen = cplx(0, -g[k] * cfg.t) * term(k);
        u = gen.exp() * u;
    }
    return u;
}

void directional_blocks(const H2Hamiltonian &h, const TrotterConfig &cfg, Eigen::Matrix4cd &a, Eigen::Matrix4cd &b) {
    cfg.check();
    const double g[4] = {h.g1, h.g2, h.g3, h.g4};
    a = Eigen::Matrix4cd::Identity();
    b = Eigen::Matrix4cd::Identity();
    for (int k = 0; k < 4; k++) {
        Eigen::Matrix4cd gen = cplx(0, g[k] * cfg.t / 2) * term(k);
        a = gen.exp() * a;
        b = (-gen).exp() * b;
    }
}

Circuit build_controlled_trotter(const H2Hamiltonian &h, const TrotterConfig &cfg, int64_t powers,
                                 const QueryLayout &lay) {
    cfg.check();
    if (powers < 1) {
        throw std::invalid_argument("controlled Trotter needs powers >= 1");
    }
    Circuit c(lay.width);
    const uint32_t a = lay.control, q1 = lay.s1, q2 = lay.s2;
    auto H = [&](uint32_t q) { c.append(GateOp::single(GateKind::H, q)); };
    auto S = [&](uint32_t q) { c.append(GateOp::single(GateKind::S, q)); };
    auto Sd = [&](uint32_t q) { c.append(GateOp::single(GateKind::Sdag, q)); };
    auto CX = [&](uint32_t x, uint32_t y) { c.append(GateOp::cnot(x, y)); };
    // exp(+i theta/2 Z_a Z_parity) = RZ(-theta) on the parity qubit between control CNOTs.
    auto rot = [&](uint32_t q, double theta) {
        CX(a, q);
        c.append(GateOp::rz(q, -theta));
        CX(a, q);
    };
    for (int64_t r = 0; r < powers; r++) {
        rot(q1, h.g1 * cfg.t);
        rot(q2, h.g2 * cfg.t);
        // Parity collected on s1 by a CNOT from s2, matching the XX / YY figure layout.
        H(q1);
        H(q2);
        CX(q2, q1);
        rot(q1, h.g3 * cfg.t);
        CX(q2, q1);
        H(q1);
        H(q2);
        Sd(q1);
        H(q1);
        Sd(q2);
        H(q2);
        CX(q2, q1);
        rot(q1, h.g4 * cfg.t);
        CX(q2, q1);
        H(q1);
        S(q1);
        H(q2);
        S(q2);
    }
    return c;
}

namespace {

// Eigenphase of u on the eigenvector closest to `target`.
double branch_phase(const Eigen::Matrix4cd &u, const Eigen::Vector4cd &target) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> ces(u);
    int best = 0;
    double best_overlap = -1;
    for (int k = 0; k < 4; k++) {
        double ov = std::abs(target.dot(ces.eigenvectors().col(k).normalized()));
        if (ov > best_overlap) {
            best_overlap = ov;
            best = k;
        }
    }
    return std::arg(ces.eigenvalues()(best));
}

}  // namespace

double query_phase(const H2Hamiltonian &h, const TrotterConfig &cfg) {
    Eigensystem es = exact_eigensystem(h);
    Eigen::Matrix4cd a, b;
    directional_blocks(h, cfg, a, b);
    Eigen::Vector4cd g0 = es.vectors.col(0);
    return branch_phase(a, g0) - branch_phase(b, g0);
}

TrotterError trotter_phase_error(const H2Hamiltonian &h, const TrotterConfig &cfg) {
    Eigensystem es = exact_eigensystem(h);
    double e0 = es.values(0);
    if (std::abs(e0 * cfg.t) >= std::numbers::pi) {
        throw std::domain_error("eigenphase branch is ambiguous: |E0 t| >= pi");
    }
    double arg = branch_phase(trotter_unitary(h, cfg), es.vectors.col(0));
    double diff = std::remainder(arg - (-e0 * cfg.t), 2 * std::numbers::pi);
    TrotterError out;
    out.phase_error = std::abs(diff);
    out.energy_error = out.phase_error / cfg.t;
    return out;
}

PreparedState prepare_with_overlap(const H2Hamiltonian &h, double gamma) {
    if (!(gamma > 0 && gamma <= 1)) {
        throw std::invalid_argument("overlap gamma must lie in (0,1]");
    }
    Eigensystem es = exact_eigensystem(h);
    std::vector<cplx> amp(4);
    for (int i = 0; i < 4; i++) {
        amp[i] = std::sqrt(gamma) * es.vectors(i, 0) + std::sqrt(1 - gamma) * es.vectors(i, 1);
    }
    PreparedState out;
    out.state = StateVector::from_amplitudes(amp);
    out.overlap = std::norm(es.vectors.col(0).dot(Eigen::Map<Eigen::Vector4cd>(amp.data())));
    return out;
}

}  // namespace eftqpe
