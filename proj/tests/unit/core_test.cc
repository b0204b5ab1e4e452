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
#include <map>

#include <gtest/gtest.h>

#include "eftqpe/core/gate.h"
#include "eftqpe/core/state.h"
#include "eftqpe/core/trajectory.h"

using namespace eftqpe;

namespace {

StateVector random_state(size_t n, uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> a(size_t{1} << n);
    double s = 0;
    for (auto &x : a) {
        x = {nd(rng), nd(rng)};
        s += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(s);
    }
    return StateVector::from_amplitudes(a);
}

std::vector<GateOp> one_of_each(size_t n) {
    return {GateOp::single(GateKind::H, 0),      GateOp::single(GateKind::S, 1),
            GateOp::single(GateKind::Sdag, 2),   GateOp::single(GateKind::X, 0),
            GateOp::single(GateKind::Y, 1),      GateOp::single(GateKind::Z, 2),
            GateOp::single(GateKind::T, 0),      GateOp::single(GateKind::Tdag, 1),
            GateOp::cnot(2, 0),                  GateOp::rz(1, 0.731),
            GateOp::pauli_rot(std::string(n, 'Y').replace(0, 1, "X"), -1.2)};
}

}  // namespace

TEST(StateVector, HadamardOnZero) {
    StateVector psi(1);
    apply_gate(psi, GateOp::single(GateKind::H, 0));
    EXPECT_NEAR(psi[0].real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(psi[1].real(), std::sqrt(0.5), 1e-15);
}

TEST(StateVector, CnotFlipsTargetWhenControlSet) {
    StateVector psi(2);
    apply_gate(psi, GateOp::single(GateKind::X, 0));
    apply_gate(psi, GateOp::cnot(0, 1));
    EXPECT_NEAR(std::abs(psi[3]), 1, 1e-15);
}

TEST(StateVector, LittleEndianIndexing) {
    StateVector psi(3);
    apply_gate(psi, GateOp::single(GateKind::X, 2));
    EXPECT_NEAR(std::abs(psi[4]), 1, 1e-15);
}

TEST(StateVector, RzInversePairIsIdentity) {
    StateVector psi = random_state(3, 7);
    StateVector ref = psi;
    apply_gate(psi, GateOp::rz(1, M_PI / 4));
    apply_gate(psi, GateOp::rz(1, -M_PI / 4));
    for (size_t i = 0; i < psi.dim(); i++) {
        EXPECT_NEAR(std::abs(psi[i] - ref[i]), 0, 1e-12);
    }
}

TEST(StateVector, UnitaryOpsPreserveNorm) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        StateVector psi = random_state(3, seed);
        for (const auto &g : one_of_each(3)) {
            apply_gate(psi, g);
            EXPECT_NEAR(psi.norm(), 1, 1e-12);
        }
    }
}

TEST(StateVector, RejectsBadOperands) {
    StateVector psi(2);
    EXPECT_THROW(apply_gate(psi, GateOp::single(GateKind::H, 2)), std::out_of_range);
    EXPECT_THROW(apply_gate(psi, GateOp::rz(0, NAN)), std::invalid_argument);
    EXPECT_THROW(StateVector(qubit_cap() + 1), std::invalid_argument);
}

TEST(DensityMatrix, DepolarizeIdentityAtZeroRate) {
    DensityMatrix rho = DensityMatrix::from_pure(random_state(2, 3));
    DensityMatrix out = depolarize(rho, 0, {0, 1});
    EXPECT_NEAR((out.matrix() - rho.matrix()).norm(), 0, 1e-15);
}

TEST(DensityMatrix, FullDepolarizationIsMaximallyMixed) {
    DensityMatrix rho = DensityMatrix::from_pure(random_state(3, 4));
    DensityMatrix out = depolarize(rho, 1, {0, 1, 2});
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(8, 8) / 8.0;
    EXPECT_NEAR((out.matrix() - mixed).norm(), 0, 1e-12);
}

TEST(DensityMatrix, HalfDepolarizedZero) {
    DensityMatrix rho(1);
    DensityMatrix out = depolarize(rho, 0.5, {0});
    EXPECT_NEAR(out.matrix()(0, 0).real(), 0.75, 1e-15);
    EXPECT_NEAR(out.matrix()(1, 1).real(), 0.25, 1e-15);
    EXPECT_NEAR(std::abs(out.matrix()(0, 1)), 0, 1e-15);
}

TEST(DensityMatrix, DepolarizeMatchesPartialTraceFormula) {
    // Oracle: (1 - r) rho + r I/2 (x) Tr_0 rho, built by hand on qubit 0 of two.
    DensityMatrix rho = DensityMatrix::from_pure(random_state(2, 11));
    const double r = 0.37;
    const auto &m = rho.matrix();
    Eigen::MatrixXcd expect = (1 - r) * m;
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            cplx red = m(2 * a, 2 * b) + m(2 * a + 1, 2 * b + 1);
            for (int s = 0; s < 2; s++) {
                expect(2 * a + s, 2 * b + s) += r * red / 2.0;
            }
        }
    }
    DensityMatrix out = depolarize(rho, r, {0});
    EXPECT_NEAR((out.matrix() - expect).norm(), 0, 1e-12);
    EXPECT_NEAR(out.trace(), 1, 1e-12);
}

TEST(DensityMatrix, DepolarizeNeverRaisesPurity) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        DensityMatrix rho = DensityMatrix::from_pure(random_state(3, seed));
        double before = rho.purity();
        for (double r : {0.01, 0.2, 0.7}) {
            DensityMatrix out = depolarize(rho, r, {(uint32_t)(seed % 3)});
            EXPECT_LE(out.purity(), before + 1e-12);
        }
    }
}

TEST(DensityMatrix, DepolarizeRejectsBadRate) {
    DensityMatrix rho(1);
    EXPECT_THROW(depolarize(rho, -0.1, {0}), std::invalid_argument);
    EXPECT_THROW(depolarize(rho, 1.5, {0}), std::invalid_argument);
}

TEST(DensityMatrix, UnitaryOpsPreserveTrace) {
    DensityMatrix rho = DensityMatrix::from_pure(random_state(3, 5));
    rho = depolarize(rho, 0.3, {1});
    for (const auto &g : one_of_each(3)) {
        apply_gate(rho, g);
        EXPECT_NEAR(rho.trace(), 1, 1e-12);
        EXPECT_NEAR((rho.matrix() - rho.matrix().adjoint()).norm(), 0, 1e-12);
    }
}

TEST(Trajectory, NoiselessInterferometerAlwaysReadsZero) {
    Circuit c(1, 1);
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::measure(0, 0));
    int ones = 0;
    for (uint64_t s = 0; s < 10000; s++) {
        ones += run_trajectory(c, {}, s)[0];
    }
    EXPECT_EQ(ones, 0);
}

TEST(Trajectory, FullRateRandomizesAncilla) {
    Circuit c(1, 1);
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::single(GateKind::T, 0));
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::measure(0, 0));
    PerGateNoise noise;
    noise.rate = 1;
    int ones = 0;
    const int n = 10000;
    for (uint64_t s = 0; s < n; s++) {
        ones += run_trajectory(c, noise, s)[0];
    }
    EXPECT_NEAR((double)ones / n, 0.5, 0.02);
}

TEST(Trajectory, SameSeedSameBits) {
    Circuit c(2, 2);
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::single(GateKind::T, 0));
    c.append(GateOp::cnot(0, 1));
    c.append(GateOp::measure(0, 0));
    c.append(GateOp::measure(1, 1));
    PerGateNoise noise;
    noise.rate = 0.3;
    for (uint64_t s = 0; s < 50; s++) {
        EXPECT_EQ(run_trajectory(c, noise, s), run_trajectory(c, noise, s));
    }
}

TEST(Trajectory, AverageMatchesDensityMatrixChannel) {
    Circuit c(3, 3);
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::single(GateKind::T, 0));
    c.append(GateOp::cnot(0, 1));
    c.append(GateOp::single(GateKind::H, 2));
    c.append(GateOp::rz(2, 0.9));
    c.append(GateOp::cnot(2, 1));
    c.append(GateOp::pauli_rot("XZY", 0.4));
    c.append(GateOp::single(GateKind::Tdag, 1));
    c.append(GateOp::single(GateKind::H, 1));
    for (uint32_t q = 0; q < 3; q++) {
        c.append(GateOp::measure(q, q));
    }
    PerGateNoise noise;
    noise.rate = 0.15;
    ChannelResult exact = run_channel(c, noise, DensityMatrix(3));
    std::map<uint64_t, double> freq;
    const int n = 100000;
    Rng rng(99);
    for (int s = 0; s < n; s++) {
        StateVector psi(3);
        auto bits = run_trajectory(c, noise, psi, rng);
        uint64_t key = 0;
        for (size_t b = 0; b < bits.size(); b++) {
            key |= (uint64_t)bits[b] << b;
        }
        freq[key] += 1.0 / n;
    }
    double tv = 0;
    for (uint64_t k = 0; k < 8; k++) {
        double p = exact.distribution.count(k) ? exact.distribution.at(k) : 0;
        double q = freq.count(k) ? freq.at(k) : 0;
        tv += 0.5 * std::abs(p - q);
    }
    EXPECT_LT(tv, 0.01);
}

TEST(Trajectory, ClassicalConditionGatesFeedback) {
    // X on qubit 0, measure into bit 0, then a conditioned X on qubit 1 must fire.
    Circuit c(2, 2);
    c.append(GateOp::single(GateKind::X, 0));
    c.append(GateOp::measure(0, 0));
    GateOp fb = GateOp::single(GateKind::X, 1);
    fb.condition = 1;
    c.append(fb);
    c.append(GateOp::measure(1, 1));
    auto bits = run_trajectory(c, {}, 1);
    EXPECT_EQ(bits[1], 1);
}
