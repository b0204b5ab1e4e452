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

#include "eftqpe/protocols/engine.h"
#include "eftqpe/protocols/runs.h"

using namespace eftqpe;

namespace {

const std::vector<uint32_t> kTargets = {0, 1, 2};

PhaseProblem h2(double gamma = 1) {
    return h2_problem(H2Hamiltonian::from_file(std::string(EFTQPE_DATA_DIR) + "/h2_sto3g.conf"), TrotterConfig{},
                      gamma);
}

StateVector plus_input(const PhaseProblem &p) {
    StateVector psi(3);
    std::vector<cplx> a(8, 0);
    for (size_t s = 0; s < 4; s++) {
        a[2 * s] = p.system[s] / std::sqrt(2.0);
        a[2 * s + 1] = p.system[s] / std::sqrt(2.0);
    }
    return StateVector::from_amplitudes(a);
}

}  // namespace

TEST(QueryEngine, PowerMatchesRepeatedCircuit) {
    PhaseProblem p = h2();
    QueryEngine engine(p.query, 0, {});
    for (int64_t k : {1, 3, 8}) {
        StateVector a = plus_input(p), b = plus_input(p);
        engine.apply_power(a, k, kTargets);
        for (int64_t i = 0; i < k; i++) {
            for (const auto &g : p.query.ops) {
                apply_gate(b, g);
            }
        }
        for (size_t i = 0; i < 8; i++) {
            EXPECT_NEAR(std::abs(a[i] - b[i]), 0, 1e-10);
        }
    }
}

TEST(QueryEngine, NoiselessNoisyPathIsExact) {
    PhaseProblem p = h2();
    QueryEngine engine(p.query, 0, {});
    Rng rng(3);
    StateVector a = plus_input(p), b = plus_input(p);
    engine.apply_power(a, 13, kTargets);
    EXPECT_EQ(engine.apply_noisy(b, 13, kTargets, rng), 0);
    for (size_t i = 0; i < 8; i++) {
        EXPECT_NEAR(std::abs(a[i] - b[i]), 0, 1e-10);
    }
}

TEST(QueryEngine, CleanProbabilityAndTCount) {
    PhaseProblem p = h2();
    SlotNoise noise{1e-4, 30};
    QueryEngine engine(p.query, 0, noise);
    EXPECT_EQ(engine.slots(), 4u);
    EXPECT_EQ(engine.t_gates(5), 5 * 4 * 30);
    double expect = 1;
    for (size_t s = 0; s < engine.slots(); s++) {
        double q = 1e-4 * (1 - std::pow(4.0, -(double)engine.acted(s).size()));
        expect *= std::pow(1 - q, 30 * 5);
    }
    EXPECT_NEAR(engine.clean_probability(5), expect, 1e-12);
}

TEST(QueryEngine, AtLeastOneDrawsAnEvent) {
    PhaseProblem p = h2();
    QueryEngine engine(p.query, 0, {1e-6, 10});
    Rng rng(5);
    for (int i = 0; i < 200; i++) {
        StateVector psi = plus_input(p);
        EXPECT_GE(engine.apply_noisy(psi, 4, kTargets, rng, true), 1);
    }
}

TEST(QueryEngine, EventPositionsAreSortedAndInRange) {
    Rng rng(9);
    for (int i = 0; i < 100; i++) {
        auto pos = sample_event_positions(1000, 0.01, rng, i % 2 == 0);
        if (i % 2 == 0) {
            EXPECT_FALSE(pos.empty());
        }
        for (size_t j = 0; j < pos.size(); j++) {
            EXPECT_GE(pos[j], 0);
            EXPECT_LT(pos[j], 1000);
            if (j) {
                EXPECT_LT(pos[j - 1], pos[j]);
            }
        }
    }
}

TEST(QueryEngine, ContrastDecaysWithCleanProbability) {
    // Oracle query acts only on the control, so each event depolarizes it fully on average.
    PhaseProblem p = oracle_problem(0.7);
    const int64_t k = 16, tpr = 50, shots = 100000;
    const double a = 0.5;
    const double r = a / (double)(k * tpr);
    QueryEngine engine(p.query, 0, {r, tpr});
    Rng rng(17);
    HadamardPoint pt = sample_hadamard(engine, p, k, shots, rng);
    double contrast = std::abs(pt.zbar());
    double expect = std::pow(1 - r, (double)(k * tpr));
    double sigma = std::sqrt(2.0 / (double)shots);
    EXPECT_NEAR(contrast, expect, 4 * sigma);
    EXPECT_NEAR(expect, std::exp(-a), 1e-3);
}
