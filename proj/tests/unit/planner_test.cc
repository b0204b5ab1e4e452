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

#include "eftqpe/protocols/bounds.h"
#include "eftqpe/protocols/plan.h"
#include "eftqpe/protocols/runs.h"

using namespace eftqpe;

TEST(Planner, RpeMeetsTargetAtChosenDepth) {
    PlannerConfig cfg;
    for (double gamma : {1.0, 0.75}) {
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            ProtocolPlan plan = rpe_plan(eps, gamma, 0.99, 0, cfg);
            EXPECT_LE(plan.bound_error(), plan.eps_protocol * (1 + 1e-12));
            EXPECT_LE(plan.eps_protocol, eps);
            EXPECT_EQ((int)plan.ns_per_generation.size(), plan.J);
            for (int j = 1; j <= plan.J; j++) {
                EXPECT_EQ(plan.queries_per_generation[(size_t)j - 1], int64_t{1} << (j - 1));
            }
        }
    }
}

TEST(Planner, NoiselessRpeSamplesMatchHoeffding) {
    PlannerConfig cfg;
    ProtocolPlan plan = rpe_plan(1e-3, 1, 0.99, 0, cfg);
    for (int64_t ns : plan.ns_per_generation) {
        EXPECT_EQ(ns, hoeffding_samples(1, 0, 0.99, plan.J));
    }
}

TEST(Planner, DepthAndCostGrowAsTargetTightens) {
    PlannerConfig cfg;
    for (ProtocolKind kind : {ProtocolKind::RPE, ProtocolKind::IPE, ProtocolKind::QCELS, ProtocolKind::TextbookQPE}) {
        ProtocolPlan prev;
        bool first = true;
        for (double eps : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4}) {
            ProtocolPlan plan = plan_protocol(kind, eps, 0.75, 0.99, 0, cfg);
            if (!first) {
                EXPECT_GE(plan.t_max, prev.t_max) << protocol_name(kind) << " eps " << eps;
                EXPECT_GE(plan.t_tot, prev.t_tot) << protocol_name(kind) << " eps " << eps;
            }
            prev = plan;
            first = false;
        }
    }
}

TEST(Planner, HadamardFamilyTCounts) {
    PlannerConfig cfg;
    for (double gamma : {1.0, 0.75}) {
        ProtocolPlan rpe = plan_protocol(ProtocolKind::RPE, 1e-3, gamma, 0.99, 0, cfg);
        ProtocolPlan qcels = plan_protocol(ProtocolKind::QCELS, 1e-3, gamma, 0.99, 0, cfg);
        ProtocolPlan mm = plan_protocol(ProtocolKind::MMQCELS, 1e-3, gamma, 0.99, 0, cfg);
        EXPECT_EQ(rpe.t_tot, qcels.t_tot);
        EXPECT_EQ(rpe.t_max, qcels.t_max);
        EXPECT_EQ(mm.t_tot, 2 * rpe.t_tot);
        ProtocolPlan ipe = plan_protocol(ProtocolKind::IPE, 1e-3, gamma, 0.99, 0, cfg);
        EXPECT_GE(ipe.t_max, rpe.t_max);
    }
}

TEST(Planner, TTotIsSumOverGenerations) {
    PlannerConfig cfg;
    ProtocolPlan plan = plan_protocol(ProtocolKind::RPE, 1e-2, 1, 0.99, 0, cfg);
    int64_t tot = 0, mx = 0;
    for (size_t j = 0; j < plan.t_per_generation.size(); j++) {
        tot += plan.t_per_generation[j] * plan.circuits_per_generation[j];
        mx = std::max(mx, plan.t_per_generation[j]);
    }
    EXPECT_EQ(plan.t_tot, tot);
    EXPECT_EQ(plan.t_max, mx);
    EXPECT_EQ(plan.t_max, plan.queries_per_generation.back() * 4 * plan.t_per_rotation);
}

TEST(Planner, ReducedDepthTradesShotsForDepth) {
    PlannerConfig cfg;
    ProtocolPlan full = rpe_plan(1e-3, 1, 0.99, 0, cfg);
    ProtocolPlan reduced = rpe_plan(1e-3, 1, 0.99, 0, cfg, true);
    EXPECT_LT(reduced.J, full.J);
    EXPECT_LT(reduced.t_max, full.t_max);
    EXPECT_GT(reduced.t_tot, full.t_tot);
}

TEST(Planner, OverlapBelowThresholdIsRejected) {
    PlannerConfig cfg;
    EXPECT_THROW(rpe_plan(1e-3, 0.5, 0.99, 0, cfg), std::exception);
    EXPECT_THROW(plan_protocol(ProtocolKind::IPE, 1e-3, 0.4, 0.99, 0, cfg), std::exception);
    EXPECT_THROW(plan_protocol(ProtocolKind::RPE, -1, 1, 0.99, 0, cfg), std::exception);
}

TEST(Planner, NoiseRaisesCost) {
    PlannerConfig cfg;
    ProtocolPlan clean = rpe_plan(1e-2, 1, 0.99, 0, cfg);
    ProtocolPlan noisy = rpe_plan(1e-2, 1, 0.99, 1e-7, cfg);
    EXPECT_GE(noisy.t_tot, clean.t_tot);
    EXPECT_GT(noisy.a_max(), 0);
}

TEST(Planner, NoiselessRunsSelectTheRightBranch) {
    // The sample count guarantees every generation lands on the correct branch with
    // probability ps; within-branch scatter can still exceed eps in a small fraction of runs.
    PlannerConfig cfg;
    PhaseProblem problem = oracle_problem(-1.234, 0.5);
    ProtocolPlan plan = rpe_plan(1e-2, 1, 0.99, 0, cfg);
    const double branch = M_PI / (problem.t * std::pow(2.0, plan.J));
    int on_branch = 0, within = 0;
    for (uint64_t seed = 0; seed < 100; seed++) {
        double e = run_protocol(plan, problem, seed).error;
        on_branch += e < branch;
        within += e <= 1e-2;
    }
    EXPECT_GE(on_branch, 99);
    EXPECT_GE(within, 95);
}
