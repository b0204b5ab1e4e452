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

#include "eftqpe/protocols/plan.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "eftqpe/protocols/bounds.h"

namespace eftqpe {

namespace {

constexpr double kPi = std::numbers::pi;

int64_t pow2(int e) {
    return int64_t{1} << e;
}

int64_t majority_samples_or_throw(double p, double ps) {
    try {
        return majority_samples(p, ps);
    } catch (const std::overflow_error &e) {
        throw InfeasibleError(e.what());
    }
}

void split_budget(ProtocolPlan &plan, double eps, const PlannerConfig &cfg) {
    plan.target_eps = eps;
    plan.eps_protocol = eps * std::sqrt(1 - cfg.synthesis_share);
    plan.eps_synthesis = eps * std::sqrt(cfg.synthesis_share);
}

void set_rotation_cost(ProtocolPlan &plan, int64_t rotations, const PlannerConfig &cfg) {
    plan.rotations_per_deepest_circuit = rotations;
    plan.eps_rotation = allocate_budget(plan.eps_synthesis, rotations);
    plan.t_per_rotation = cfg.synth.tcount(std::min(plan.eps_rotation, 0.5));
}

void check_inputs(double eps, double gamma, double ps, double rate) {
    if (!(eps > 0 && eps < 1)) {
        throw std::invalid_argument("target eps must lie in (0, 1)");
    }
    if (!(gamma > 0 && gamma <= 1)) {
        throw std::invalid_argument("gamma must lie in (0, 1]");
    }
    if (!(ps > 0.5 && ps < 1)) {
        throw std::invalid_argument("target success probability must lie in (0.5, 1)");
    }
    if (!(rate >= 0 && rate < 1)) {
        throw std::invalid_argument("per-T depolarization must lie in [0, 1)");
    }
}

// Generation structure of the Hadamard-test protocols for a chosen J and per-query T cost.
void fill_hadamard_generations(ProtocolPlan &plan, int J, int64_t ns) {
    plan.J = J;
    plan.queries_per_generation.clear();
    plan.times_per_generation.clear();
    plan.t_per_generation.clear();
    plan.circuits_per_generation.clear();
    plan.a_per_generation.clear();
    plan.ns_per_generation.assign(J, ns);
    for (int j = 1; j <= J; j++) {
        int64_t k = pow2(j - 1);
        plan.queries_per_generation.push_back(k);
        plan.times_per_generation.push_back({(double)k * plan.t});
        int64_t tj = 4 * k * plan.t_per_rotation;
        plan.t_per_generation.push_back(tj);
        plan.circuits_per_generation.push_back(2 * ns);
        plan.a_per_generation.push_back(plan.rate_per_t * (double)tj);
    }
}

ProtocolPlan new_plan(ProtocolKind kind, double eps, double gamma, double ps, double rate, const PlannerConfig &cfg) {
    ProtocolPlan plan;
    plan.kind = kind;
    plan.t = cfg.t;
    plan.gamma_assumed = gamma;
    plan.target_ps = ps;
    plan.rate_per_t = rate;
    split_budget(plan, eps, cfg);
    return plan;
}

int64_t hoeffding_or_throw(double gamma, double a, double ps, int J) {
    try {
        return hoeffding_samples(gamma, a, ps, J);
    } catch (const std::overflow_error &) {
        throw InfeasibleError("Hoeffding sample count overflows; depolarization too strong");
    }
}

ProtocolPlan plan_full_rpe(double eps, double gamma, double ps, double rate, const PlannerConfig &cfg) {
    ProtocolPlan plan = new_plan(ProtocolKind::RPE, eps, gamma, ps, rate, cfg);
    for (int J = 1; J <= cfg.max_generations; J++) {
        set_rotation_cost(plan, 4 * pow2(J - 1), cfg);
        fill_hadamard_generations(plan, J, 1);
        double a_ns = plan.a_per_generation[std::max(J - 2, 0)];
        double a_J = plan.a_per_generation[J - 1];
        int64_t ns = hoeffding_or_throw(gamma, a_ns, ps, J);
        if (rpe_error(cfg.t, J, a_J, ns, gamma) <= plan.eps_protocol) {
            fill_hadamard_generations(plan, J, ns);
            fill_t_counts(plan);
            return plan;
        }
    }
    throw InfeasibleError("no generation count up to " + std::to_string(cfg.max_generations) + " meets eps");
}

// Depth traded for shots: J drops by ceil(sqrt(N_s)) of the noiseless plan, and the
// shorter circuits are then re-planned under the actual noise.
ProtocolPlan plan_reduced_rpe(double eps, double gamma, double ps, double rate, const PlannerConfig &cfg) {
    if (gamma < 1) {
        throw std::invalid_argument("the reduced-J trade is only valid at gamma = 1");
    }
    ProtocolPlan base = plan_full_rpe(eps, gamma, ps, 0, cfg);
    int J = std::max<int>(1, base.J - (int)std::ceil(std::sqrt((double)base.ns_per_generation.back())));
    ProtocolPlan plan = new_plan(ProtocolKind::RPE, eps, gamma, ps, rate, cfg);
    set_rotation_cost(plan, 4 * pow2(J - 1), cfg);
    fill_hadamard_generations(plan, J, 1);
    double a_ns = plan.a_per_generation[std::max(J - 2, 0)];
    double a_J = plan.a_per_generation[J - 1];
    double scale = cfg.t * std::ldexp(1.0, J - 1) * plan.eps_protocol;
    double need = std::ceil(std::exp(2 * a_J) / (scale * scale) - 1e-9);
    if (need > 1e15) {
        throw InfeasibleError("reduced-J trade needs an absurd shot count");
    }
    int64_t ns = std::max(hoeffding_or_throw(gamma, a_ns, ps, J), (int64_t)need);
    fill_hadamard_generations(plan, J, ns);
    plan.reduced_j = true;
    fill_t_counts(plan);
    return plan;
}

ProtocolPlan plan_hadamard(ProtocolKind kind, double eps, double gamma, double ps, double rate,
                           const PlannerConfig &cfg, bool reduced) {
    if (!(gamma > rpe_gamma_threshold())) {
        throw std::invalid_argument("Hadamard-test protocols need gamma > 0.536");
    }
    ProtocolPlan plan = reduced ? plan_reduced_rpe(eps, gamma, ps, rate, cfg) : plan_full_rpe(eps, gamma, ps, rate, cfg);
    return kind == ProtocolKind::RPE ? plan : with_kind(plan, kind, cfg);
}

ProtocolPlan plan_ipe(double eps, double gamma, double ps, double rate, const PlannerConfig &cfg) {
    ProtocolPlan plan = new_plan(ProtocolKind::IPE, eps, gamma, ps, rate, cfg);
    // One bit is discarded, so J - 1 bits must resolve pi / (t 2^{J-1}).
    int J = 2;
    while (kPi / (cfg.t * std::ldexp(1.0, J - 1)) > plan.eps_protocol) {
        if (++J > cfg.max_generations) {
            throw InfeasibleError("IPE needs more than max_generations bits");
        }
    }
    plan.J = J;
    set_rotation_cost(plan, 4 * (pow2(J) - 1) + (J - 1), cfg);
    for (int j = 1; j <= J; j++) {
        int64_t k = pow2(j - 1);
        // The first executed iterate (j = J) needs no feedback rotation.
        int64_t tj = (4 * k + (j < J ? 1 : 0)) * plan.t_per_rotation;
        plan.queries_per_generation.push_back(k);
        plan.times_per_generation.push_back({(double)k * cfg.t});
        plan.t_per_generation.push_back(tj);
        plan.a_per_generation.push_back(rate * (double)tj);
    }
    // Bound evaluated as written: a_j of the iterate applying U^{2^{j-1}} sits beside cos(pi / 2^j).
    plan.p_single = ipe_success_bound(gamma, plan.a_per_generation, J);
    if (!(plan.p_single > 0.5)) {
        throw InfeasibleError("IPE single-shot success " + std::to_string(plan.p_single) + " does not exceed 1/2");
    }
    int64_t ns = majority_samples_or_throw(plan.p_single, ps);
    plan.ns_per_generation.assign(J, ns);
    plan.circuits_per_generation.assign(J, ns);
    fill_t_counts(plan);
    return plan;
}

ProtocolPlan plan_qpe(double eps, double gamma, double ps, double rate, const PlannerConfig &cfg) {
    ProtocolPlan plan = new_plan(ProtocolKind::TextbookQPE, eps, gamma, ps, rate, cfg);
    int n = (int)std::ceil(std::log2(2 * kPi / (cfg.t * plan.eps_protocol)) - 1e-12);
    n = std::max(n, 1);
    int p = cfg.qpe_extra_bits;
    if (cfg.qpe_max_register_bits > 0) {
        if (n > cfg.qpe_max_register_bits) {
            throw InfeasibleError("textbook QPE register exceeds the width cap");
        }
        p = std::min(p, cfg.qpe_max_register_bits - n);
    }
    int m = n + p;
    if (m > 60) {
        throw InfeasibleError("textbook QPE register too wide");
    }
    plan.phase_bits = n;
    plan.extra_bits = p;
    plan.register_bits = m;
    plan.J = m;
    // Controlled powers 2^0..2^{m-1} plus the inverse QFT (three RZ per controlled phase).
    int64_t rotations = 4 * (pow2(m) - 1) + 3 * (int64_t)m * (m - 1) / 2;
    set_rotation_cost(plan, rotations, cfg);
    int64_t t_shot = rotations * plan.t_per_rotation;
    for (int j = 1; j <= m; j++) {
        plan.queries_per_generation.push_back(pow2(j - 1));
        plan.times_per_generation.push_back({std::ldexp(cfg.t, j - 1)});
    }
    plan.t_per_generation = {t_shot};
    double a_shot = rate * (double)t_shot;
    plan.a_per_generation = {a_shot};
    plan.p_single = qpe_single_shot_success(gamma, p) * std::exp(-a_shot);
    if (!(plan.p_single > 0.5)) {
        throw InfeasibleError("textbook QPE single-shot success does not exceed 1/2");
    }
    int64_t ns = majority_samples_or_throw(plan.p_single, ps);
    plan.ns_per_generation = {ns};
    plan.circuits_per_generation = {ns};
    fill_t_counts(plan);
    return plan;
}

}  // namespace

const char *protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::TextbookQPE:
            return "qpe";
        case ProtocolKind::IPE:
            return "ipe";
        case ProtocolKind::RPE:
            return "rpe";
        case ProtocolKind::QCELS:
            return "qcels";
        case ProtocolKind::MMQCELS:
            return "mmqcels";
    }
    return "?";
}

ProtocolKind parse_protocol(const std::string &name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return (char)std::tolower(c); });
    for (auto k : {ProtocolKind::TextbookQPE, ProtocolKind::IPE, ProtocolKind::RPE, ProtocolKind::QCELS,
                   ProtocolKind::MMQCELS}) {
        if (s == protocol_name(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

bool is_hadamard_family(ProtocolKind kind) {
    return kind == ProtocolKind::RPE || kind == ProtocolKind::QCELS || kind == ProtocolKind::MMQCELS;
}

void PlannerConfig::check() const {
    if (!(t > 0)) {
        throw std::invalid_argument("time step t must be positive");
    }
    if (!(synthesis_share > 0 && synthesis_share < 1)) {
        throw std::invalid_argument("synthesis_share must lie in (0, 1)");
    }
    if (qpe_extra_bits < 0 || qpe_max_register_bits < 0) {
        throw std::invalid_argument("QPE bit counts must be nonnegative");
    }
    if (!(mmqcels_shot_factor >= 1) || !(mmqcels_sigma_fraction > 0)) {
        throw std::invalid_argument("MMQCELS shot factor must be >= 1 and sigma fraction > 0");
    }
    synth.check();
}

int64_t ProtocolPlan::n_computational() const {
    return kind == ProtocolKind::TextbookQPE ? register_bits + 2 : 3;
}

double ProtocolPlan::a_max() const {
    double m = 0;
    for (double a : a_per_generation) {
        m = std::max(m, a);
    }
    return m;
}

double ProtocolPlan::bound_error() const {
    switch (kind) {
        case ProtocolKind::IPE:
            return kPi / (t * std::ldexp(1.0, J - 1));
        case ProtocolKind::TextbookQPE:
            return 2 * kPi / (t * std::ldexp(1.0, phase_bits));
        default:
            return rpe_error(t, J, a_per_generation.back(), ns_per_generation.back(), gamma_assumed);
    }
}

void fill_t_counts(ProtocolPlan &plan) {
    plan.t_max = 0;
    plan.t_tot = 0;
    if (plan.kind == ProtocolKind::IPE) {
        // A whole IPE shot is one circuit with mid-circuit measurements.
        int64_t shot = 0;
        for (auto tj : plan.t_per_generation) {
            shot += tj;
        }
        plan.t_max = shot;
        plan.t_tot = shot * plan.ns_per_generation.front();
        return;
    }
    for (size_t j = 0; j < plan.t_per_generation.size(); j++) {
        plan.t_max = std::max(plan.t_max, plan.t_per_generation[j]);
        plan.t_tot += plan.t_per_generation[j] * plan.circuits_per_generation[j];
    }
}

ProtocolPlan with_kind(const ProtocolPlan &plan, ProtocolKind kind, const PlannerConfig &cfg) {
    if (!is_hadamard_family(kind) || !is_hadamard_family(plan.kind)) {
        throw std::invalid_argument("only Hadamard-test plans can be relabelled");
    }
    ProtocolPlan out = plan;
    out.kind = kind;
    out.time_sigma.clear();
    if (kind == ProtocolKind::MMQCELS) {
        for (int j = 0; j < out.J; j++) {
            int64_t ns = (int64_t)std::ceil((double)plan.ns_per_generation[j] * cfg.mmqcels_shot_factor - 1e-9);
            out.ns_per_generation[j] = ns;
            out.circuits_per_generation[j] = 2 * ns;
            out.time_sigma.push_back(cfg.mmqcels_sigma_fraction * out.times_per_generation[j].front());
        }
    }
    fill_t_counts(out);
    return out;
}

ProtocolPlan rpe_plan(double eps, double gamma, double ps, double rate_per_t, const PlannerConfig &cfg,
                      bool reduced_j) {
    check_inputs(eps, gamma, ps, rate_per_t);
    cfg.check();
    return plan_hadamard(ProtocolKind::RPE, eps, gamma, ps, rate_per_t, cfg, reduced_j);
}

ProtocolPlan plan_protocol(ProtocolKind kind, double eps, double gamma, double ps, double rate_per_t,
                           const PlannerConfig &cfg, bool reduced_j) {
    check_inputs(eps, gamma, ps, rate_per_t);
    cfg.check();
    if (reduced_j && kind != ProtocolKind::RPE) {
        throw std::invalid_argument("the reduced-J trade applies to RPE only");
    }
    switch (kind) {
        case ProtocolKind::IPE:
            return plan_ipe(eps, gamma, ps, rate_per_t, cfg);
        case ProtocolKind::TextbookQPE:
            return plan_qpe(eps, gamma, ps, rate_per_t, cfg);
        case ProtocolKind::MMQCELS:
            if (!(gamma >= 0.5)) {
                throw std::invalid_argument("MMQCELS needs gamma >= 0.5");
            }
            [[fallthrough]];
        default:
            return plan_hadamard(kind, eps, gamma, ps, rate_per_t, cfg, reduced_j);
    }
}

}  // namespace eftqpe
