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

#include "eftqpe/noise/error_model.h"

using namespace eftqpe;

TEST(LogicalRate, FormulaValues) {
    EXPECT_NEAR(logical_error_rate(1e-3, 3, 1), 1e-3, 1e-18);
    EXPECT_NEAR(logical_error_rate(1e-3, 17, 19), 1.9e-9, 1e-22);
    EXPECT_DOUBLE_EQ(logical_error_rate(1e-3, 11, 38), 2 * logical_error_rate(1e-3, 11, 19));
}

TEST(LogicalRate, RejectsThresholdAndBadDistance) {
    EXPECT_THROW(logical_error_rate(1e-2, 5, 1), std::invalid_argument);
    EXPECT_THROW(logical_error_rate(1e-3, 4, 1), std::invalid_argument);
    EXPECT_THROW(logical_error_rate(1e-3, 1, 1), std::invalid_argument);
}

TEST(AggregateRate, ZeroGates) {
    NoiseParams np;
    np.d = 17;
    np.n_l = 19;
    EXPECT_EQ(aggregate_rate(0, np).a_j, 0);
}

TEST(AggregateRate, WorkedValue) {
    NoiseParams np;
    np.p = 1e-3;
    np.d = 17;
    np.n_l = 19;
    np.b = 35 * std::pow(1e-3, 3);
    np.t_rate = 11;
    EXPECT_NEAR(np.b, 3.5e-8, 1e-20);
    // 1e6 (3.5e-8 + 11 * 19 * 17 * 0.1 * 1e-9)
    double expect = 1e6 * (3.5e-8 + 11.0 * 19 * 17 * 0.1 * 1e-9);
    EXPECT_NEAR(aggregate_rate(1e6, np).a_j, expect, 1e-12);
    EXPECT_NEAR(expect, 0.3903, 1e-4);
}

TEST(AggregateRate, DistanceOnlySuppressesLogicalPart) {
    NoiseParams np;
    np.n_l = 19;
    np.b = 3.5e-8;
    np.t_rate = 11;
    double prev = 1e9;
    for (int d = 3; d <= 41; d += 2) {
        np.d = d;
        double r = rate_per_t(np);
        EXPECT_LT(r, prev);
        EXPECT_GT(r, np.b);
        prev = r;
    }
    EXPECT_NEAR(prev, np.b, 1e-12);
}

TEST(PerGateRate, RoundTrip) {
    EXPECT_EQ(per_t_gate_rate(0, 100), 0);
    EXPECT_NEAR(per_t_gate_rate(0.25, 1000) * 1000, 0.25, 1e-15);
    EXPECT_THROW(per_t_gate_rate(0.1, 0), std::invalid_argument);
}
