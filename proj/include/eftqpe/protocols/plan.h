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

#ifndef EFTQPE_PROTOCOLS_PLAN_H
#define EFTQPE_PROTOCOLS_PLAN_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eftqpe/synthesis/synthesis.h"

namespace eftqpe {

enum class ProtocolKind { TextbookQPE, IPE, RPE, QCELS, MMQCELS };

const char *protocol_name(ProtocolKind kind);
/// Accepts qpe, ipe, rpe, qcels, mmqcels (case-insensitive).
ProtocolKind parse_protocol(const std::string &name);
bool is_hadamard_family(ProtocolKind kind);

/// Raised when no plan meets the target (e.g. IPE single-shot success <= 1/2).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlannerConfig {
    double t = 0.5;
    SynthesisModel synth;
    /// Fraction of eps^2 given to synthesis; the rest goes to the protocol (quadrature split).
    double synthesis_share = 0.5;
    int qpe_extra_bits = 3;
    /// Caps the textbook-QPE register (0 = no cap); extra bits are dropped first.
    int qpe_max_register_bits = 0;
    double mmqcels_shot_factor = 2;
    double mmqcels_sigma_fraction = 0.5;
    int max_generations = 40;

    void check() const;
};

struct ProtocolPlan {
    ProtocolKind kind = ProtocolKind::RPE;
    bool reduced_j = false;
    int J = 1;
    std::vector<int64_t> ns_per_generation;
    double t = 0.5;
    double gamma_assumed = 1;
    double target_eps = 1e-3;
    double target_ps = 0.99;
    /// Evolution time of each generation's deepest circuit (all protocols), and for
    /// MMQCELS the standard deviation of the drawn times in `time_sigma`.
    std::vector<std::vector<double>> times_per_generation;
    std::vector<double> time_sigma;
    /// Queries U per circuit for generation j (IPE: iterate j uses U^{2^{j-1}}).
    std::vector<int64_t> queries_per_generation;

    double eps_protocol = 0;
    double eps_synthesis = 0;
    double eps_rotation = 0;
    int64_t rotations_per_deepest_circuit = 0;
    int64_t t_per_rotation = 0;
    /// T gates in one circuit of generation j and the number of such circuits.
    std::vector<int64_t> t_per_generation;
    std::vector<int64_t> circuits_per_generation;

    double rate_per_t = 0;
    std::vector<double> a_per_generation;
    double p_single = 1;

    int phase_bits = 0;
    int extra_bits = 0;
    int register_bits = 0;

    int64_t t_max = 0;
    int64_t t_tot = 0;

    /// Logical data qubits the circuit touches: ancilla(s) plus two system qubits.
    int64_t n_computational() const;
    /// Largest aggregate depolarization of any single circuit.
    double a_max() const;
    double bound_error() const;
};

/// Plans a protocol with depolarization `rate_per_t` attached to every T gate. RPE's
/// reduced-J variant trades depth for shots and is only valid at gamma = 1.
ProtocolPlan plan_protocol(ProtocolKind kind, double eps, double gamma, double ps, double rate_per_t,
                           const PlannerConfig &cfg, bool reduced_j = false);

ProtocolPlan rpe_plan(double eps, double gamma, double ps, double rate_per_t, const PlannerConfig &cfg,
                      bool reduced_j = false);

/// Shared Hadamard-test plan relabelled as another kind, same (J, N_s).
ProtocolPlan with_kind(const ProtocolPlan &plan, ProtocolKind kind, const PlannerConfig &cfg);

/// Recomputes T counts from the generation structure.
void fill_t_counts(ProtocolPlan &plan);

}  // namespace eftqpe

#endif
