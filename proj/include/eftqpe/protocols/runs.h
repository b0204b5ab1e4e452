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

#ifndef EFTQPE_PROTOCOLS_RUNS_H
#define EFTQPE_PROTOCOLS_RUNS_H

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/core/state.h"
#include "eftqpe/hamiltonian/h2.h"
#include "eftqpe/protocols/engine.h"
#include "eftqpe/protocols/plan.h"

namespace eftqpe {

/// One query circuit (control on qubit 0, system on qubits 1 and 2) together with the
/// prepared system state. On the target eigenstate the Hadamard-test signal is
/// e^{-i reference_phase k} for k queries.
struct PhaseProblem {
    Circuit query{3};
    StateVector system{2};
    double t = 0.5;
    double reference_phase = 0;
    /// E0 t of the untrotterized Hamiltonian (equals reference_phase for oracles).
    double exact_phase = 0;
    std::string label;
};

PhaseProblem h2_problem(const H2Hamiltonian &h, const TrotterConfig &cfg, double gamma);
/// Query RZ(control, -phi): signal e^{-i phi k}, no system dependence.
PhaseProblem oracle_problem(double phi, double t = 1);

/// Seeded stream for (seed, stream); streams are independent of call order.
Rng make_rng(uint64_t seed, uint64_t stream);

/// Bare Hadamard test with `power` sequential queries and measurement into bit 0. The system
/// register (qubits 1, 2) is expected to hold the prepared state on entry.
Circuit hadamard_test_circuit(const Circuit &query, int64_t power, bool sdag_basis);

struct HadamardPoint {
    int64_t k = 0;
    int64_t shots_x = 0, plus_x = 0;
    int64_t shots_y = 0, plus_y = 0;
    std::complex<double> zbar() const;
};

struct GenerationSamples {
    int j = 1;
    std::vector<HadamardPoint> points;
    int64_t noise_events = 0;
    /// Shot-weighted mean of x + i y over every point.
    std::complex<double> zbar() const;
};

struct PhaseEstimate {
    ProtocolKind kind = ProtocolKind::RPE;
    double phi_hat = 0;     // radians, (-pi, pi]
    double lambda_hat = 0;  // phi_hat / t
    std::vector<double> per_generation_theta;
    double bias_bound = 0;
};

/// Exact Hadamard-test signal <A^-k B^k> of the problem (noiseless, infinite shots).
std::complex<double> exact_signal(const PhaseProblem &problem, int64_t k);

/// Hadamard-test shots for `shots` circuits per basis at query count k.
HadamardPoint sample_hadamard(const QueryEngine &engine, const PhaseProblem &problem, int64_t k, int64_t shots,
                              Rng &rng, int64_t *events = nullptr);

/// theta_1 = -arg z_1; each later theta_j is the branch of -arg z_j closest to
/// (k_j / k_{j-1}) theta_{j-1}; phi = theta_J / k_J.
PhaseEstimate rpe_estimate(const std::vector<GenerationSamples> &gens, double t);
/// Same recursion on bare signals z_j at k_j = 2^{j-1}.
PhaseEstimate rpe_estimate_signals(const std::vector<std::complex<double>> &z, double t);

struct FitPoint {
    double time = 0;
    std::complex<double> z;
    double weight = 1;
};
/// Least-squares fit of z_n ~ r e^{-i lambda t_n} with lambda in [center - half, center + half]:
/// a 21-point grid followed by golden-section refinement. Returns lambda.
double qcels_fit(const std::vector<FitPoint> &data, double center, double half_width);
/// Generation-by-generation QCELS / MMQCELS estimate; the inferred (0, 1) point is included.
PhaseEstimate qcels_estimate(const std::vector<GenerationSamples> &gens, double t, ProtocolKind kind);

struct RunResult {
    PhaseEstimate estimate;
    double error = 0;        // |lambda_hat - reference_phase / t|
    double exact_error = 0;  // against E0
    std::vector<GenerationSamples> samples;
    /// IPE and textbook QPE: register value -> shot count.
    std::map<uint64_t, int64_t> outcomes;
    int64_t noise_events = 0;
    uint64_t seed = 0;
};

/// Hadamard-test protocols (RPE, QCELS, MMQCELS) at the plan's (J, N_s) and noise rate.
RunResult run_hadamard_protocol(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed);

/// IPE bits of one shot as y = sum_k b_k 2^{J-k}, where b_k is measured by the iterate with
/// 2^{k-1} queries, so x ~ y / 2^J.
uint64_t ipe_shot(const QueryEngine &engine, const PhaseProblem &problem, int J, Rng &rng, int64_t *events);
/// Majority vote over N_s shots; estimate x = value / 2^J, phi = -2 pi x wrapped.
RunResult ipe_run(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed);

struct QpeOptions {
    /// Pauli letters (width m) applied to the ancilla register right before the inverse QFT.
    std::string forced_register_pauli;
};
/// Inverse QFT without swaps on ancillas 0..m-1: ancilla i ends up holding bit i+1 of x.
/// Every controlled phase is 3 RZ and 2 CNOT.
Circuit inverse_qft_circuit(size_t width, int m);
/// One textbook-QPE shot on m ancillas plus the two system qubits. Returns y with x ~ y / 2^m.
uint64_t textbook_qpe_shot(const QueryEngine &engine, const PhaseProblem &problem, int m, Rng &rng,
                           int64_t *events, const QpeOptions &opt = {});
RunResult textbook_qpe_run(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed,
                           const QpeOptions &opt = {});

RunResult run_protocol(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed);

/// MMQCELS shots for the given plan and seed.
PhaseEstimate mmqcels_plan_and_estimate(double eps, double gamma, double ps, uint64_t seed, const PhaseProblem &problem,
                                        const PlannerConfig &cfg, double rate_per_t = 0);

struct BiasResult {
    std::vector<int64_t> ns_schedule;
    /// Mean over seeds of |theta_J - k_J phi_ref| at each N_s (radians of generation J).
    std::vector<double> mean_error;
    double plateau = 0;
    bool plateau_found = false;
    double sampling_floor = 0;  // 3 / sqrt(last N_s)
};

/// Runs the protocol at fixed depth J with growing N_s and reports the plateau of the final
/// generation's phase error. Plateau: the last three points within 10% of each other.
BiasResult empirical_bias(ProtocolKind kind, const PhaseProblem &problem, int J, const std::vector<int64_t> &ns_schedule,
                          const std::vector<uint64_t> &seeds, double rate_per_t = 0, int64_t t_per_rotation = 1);

/// Generation-J error of the estimators on exact expectations (infinite shots).
double exact_expectation_bias(ProtocolKind kind, const PhaseProblem &problem, int J);

double wrap_phase(double a);

}  // namespace eftqpe

#endif
