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

#include <cmath>

#include <gtest/gtest.h>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/hamiltonian/h2.h"

using namespace eftqpe;

namespace {

H2Hamiltonian make(double g1, double g2, double g3, double g4) {
    H2Hamiltonian h;
    h.g1 = g1;
    h.g2 = g2;
    h.g3 = g3;
    h.g4 = g4;
    return h;
}

H2Hamiltonian physical() {
    return H2Hamiltonian::from_file(std::string(EFTQPE_DATA_DIR) + "/h2_sto3g.conf");
}

Eigen::Matrix2cd single(char p) {
    Eigen::Matrix2cd m;
    if (p == 'X') {
        m << 0, 1, 1, 0;
    } else if (p == 'Y') {
        m << 0, cplx(0, -1), cplx(0, 1), 0;
    } else if (p == 'Z') {
        m << 1, 0, 0, -1;
    } else {
        m.setIdentity();
    }
    return m;
}

// Letter a on system qubit 1 (low bit), letter b on system qubit 2.
Eigen::Matrix4cd two(char a, char b) {
    Eigen::Matrix2cd lo = single(a), hi = single(b);
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            m(i, j) = hi(i >> 1, j >> 1) * lo(i & 1, j & 1);
        }
    }
    return m;
}

Eigen::Matrix4cd expi(const Eigen::Matrix4cd &p, double theta) {
    return std::cos(theta) * Eigen::Matrix4cd::Identity() + cplx(0, 1) * std::sin(theta) * p;
}

}  // namespace

TEST(Spectrum, SingleZTerm) {
    auto es = exact_eigensystem(make(1, 0, 0, 0));
    EXPECT_NEAR(es.values(0), -1, 1e-12);
    EXPECT_NEAR(es.values(1), -1, 1e-12);
    EXPECT_NEAR(es.values(2), 1, 1e-12);
    EXPECT_NEAR(es.values(3), 1, 1e-12);
}

TEST(Spectrum, XXTermHasBellEigenvectors) {
    auto es = exact_eigensystem(make(0, 0, 1, 0));
    EXPECT_NEAR(es.values(0), -1, 1e-12);
    EXPECT_NEAR(es.values(3), 1, 1e-12);
    Eigen::Matrix4cd xx = two('X', 'X');
    for (int k = 0; k < 4; k++) {
        Eigen::Vector4cd v = es.vectors.col(k);
        EXPECT_NEAR((xx * v - es.values(k) * v).norm(), 0, 1e-12);
        // Bell-type: weight split evenly between a basis state and its complement.
        for (int i = 0; i < 4; i++) {
            EXPECT_NEAR(std::norm(v(i)), std::norm(v(3 - i)), 1e-12);
        }
    }
}

TEST(Spectrum, PhysicalGroundEnergyMatchesDenseOracle) {
    H2Hamiltonian h = physical();
    Eigen::Matrix4cd m = h.g1 * two('Z', 'I') + h.g2 * two('I', 'Z') + h.g3 * two('X', 'X') + h.g4 * two('Y', 'Y');
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    auto es = exact_eigensystem(h);
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(es.values(k), solver.eigenvalues()(k), 1e-12);
    }
    EXPECT_NEAR(es.values(0), -0.79919912, 1e-8);
}

TEST(Coefficients, FileCarriesSource) {
    H2Hamiltonian h = physical();
    EXPECT_FALSE(h.source.empty());
    EXPECT_THROW(H2Hamiltonian::from_text("g1 = 1\ng2 = 0\n"), std::exception);
    EXPECT_THROW(H2Hamiltonian::from_text("g1 = nan\ng2 = 0\ng3 = 0\ng4 = 0\n"), std::exception);
}

TEST(ControlledTrotter, FourRotationsPerQuery) {
    Circuit c = build_controlled_trotter(physical(), TrotterConfig{}, 1);
    int rz = 0;
    for (const auto &g : c.ops) {
        rz += g.kind == GateKind::RZ;
    }
    EXPECT_EQ(rz, 4);
    Circuit c3 = build_controlled_trotter(physical(), TrotterConfig{}, 3);
    rz = 0;
    for (const auto &g : c3.ops) {
        rz += g.kind == GateKind::RZ;
    }
    EXPECT_EQ(rz, 12);
    EXPECT_THROW(build_controlled_trotter(physical(), TrotterConfig{}, 0), std::invalid_argument);
}

TEST(ControlledTrotter, PowersCompose) {
    auto h = physical();
    Eigen::MatrixXcd u1 = circuit_unitary(build_controlled_trotter(h, TrotterConfig{}, 1));
    Eigen::MatrixXcd u2 = circuit_unitary(build_controlled_trotter(h, TrotterConfig{}, 2));
    EXPECT_LT((u2 - u1 * u1).norm(), 1e-12);
}

TEST(ControlledTrotter, DirectionalBlocksFromTermExponentials) {
    // Oracle: A = prod e^{+i g P t/2}, B = prod e^{-i g P t/2} in the order Z1, Z2, XX, YY.
    auto h = physical();
    TrotterConfig cfg;
    const char *terms[4][2] = {{"Z", "I"}, {"I", "Z"}, {"X", "X"}, {"Y", "Y"}};
    const double g[4] = {h.g1, h.g2, h.g3, h.g4};
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Identity(), b = a;
    for (int k = 0; k < 4; k++) {
        Eigen::Matrix4cd p = two(terms[k][0][0], terms[k][1][0]);
        a = expi(p, g[k] * cfg.t / 2) * a;
        b = expi(p, -g[k] * cfg.t / 2) * b;
    }
    Eigen::MatrixXcd u = circuit_unitary(build_controlled_trotter(h, cfg, 1));
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            expect(2 * i, 2 * j) = a(i, j);
            expect(2 * i + 1, 2 * j + 1) = b(i, j);
        }
    }
    EXPECT_LT((u - expect).norm(), 1e-10);
}

TEST(ControlledTrotter, SingleTermIsCnotSandwich) {
    // g = (g1, 0, 0, 0): CNOT(c -> s1) e^{i g t Z_s1 / 2} CNOT(c -> s1).
    auto h = make(0.7, 0, 0, 0);
    TrotterConfig cfg;
    Circuit ref(3);
    ref.append(GateOp::cnot(0, 1));
    ref.append(GateOp::rz(1, -h.g1 * cfg.t));
    ref.append(GateOp::cnot(0, 1));
    Eigen::MatrixXcd u = circuit_unitary(build_controlled_trotter(h, cfg, 1));
    EXPECT_LT(phase_insensitive_distance(u, circuit_unitary(ref)), 1e-10);
}

TEST(TrotterError, VanishesForShortSteps) {
    TrotterConfig cfg;
    cfg.t = 1e-4;
    EXPECT_LT(trotter_phase_error(physical(), cfg).phase_error, 1e-8);
}

TEST(TrotterError, CommutingTermsAreExact) {
    EXPECT_LT(trotter_phase_error(make(0.3, -0.5, 0, 0), TrotterConfig{}).phase_error, 1e-12);
}

TEST(TrotterError, PhysicalCoefficientsAgainstDenseOracle) {
    auto h = physical();
    TrotterConfig cfg;
    Eigen::Matrix4cd step = Eigen::Matrix4cd::Identity();
    const char *terms[4][2] = {{"Z", "I"}, {"I", "Z"}, {"X", "X"}, {"Y", "Y"}};
    const double g[4] = {h.g1, h.g2, h.g3, h.g4};
    for (int k = 0; k < 4; k++) {
        step = expi(two(terms[k][0][0], terms[k][1][0]), -g[k] * cfg.t) * step;
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(step);
    double e0 = exact_eigensystem(h).values(0);
    double best = 10;
    for (int k = 0; k < 4; k++) {
        best = std::min(best, std::abs(std::arg(solver.eigenvalues()(k)) + e0 * cfg.t));
    }
    TrotterError te = trotter_phase_error(h, cfg);
    EXPECT_NEAR(te.phase_error, best, 1e-10);
    EXPECT_NEAR(te.energy_error, te.phase_error / cfg.t, 1e-15);
    EXPECT_NEAR(te.phase_error, 5.289e-4, 1e-6);
}

TEST(Overlap, PreparedStateHasRequestedOverlap) {
    auto h = physical();
    auto es = exact_eigensystem(h);
    for (double g : {1.0, 0.9, 0.75, 0.6, 0.536}) {
        PreparedState s = prepare_with_overlap(h, g);
        Eigen::Vector4cd v;
        for (int i = 0; i < 4; i++) {
            v(i) = s.state[(size_t)i];
        }
        EXPECT_NEAR(std::norm(es.vectors.col(0).dot(v)), g, 1e-10);
        EXPECT_NEAR(std::norm(es.vectors.col(0).dot(v)) + std::norm(es.vectors.col(1).dot(v)), 1, 1e-10);
    }
    EXPECT_THROW(prepare_with_overlap(h, 0), std::invalid_argument);
    EXPECT_THROW(prepare_with_overlap(h, 1.2), std::invalid_argument);
}

TEST(QueryPhase, GroundBranchPhaseOfBlocks) {
    auto h = physical();
    TrotterConfig cfg;
    double q = query_phase(h, cfg);
    // E0 t up to the product-order error of the two blocks.
    EXPECT_NEAR(q, exact_eigensystem(h).values(0) * cfg.t, 2e-4);
    EXPECT_NEAR(q, -0.39946846, 1e-7);
}
