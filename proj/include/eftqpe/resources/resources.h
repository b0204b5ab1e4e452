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

#ifndef EFTQPE_RESOURCES_RESOURCES_H
#define EFTQPE_RESOURCES_RESOURCES_H

#include <cstdint>
#include <string>
#include <vector>

#include "eftqpe/noise/error_model.h"
#include "eftqpe/protocols/plan.h"

namespace eftqpe {

/// Distillation factory: infidelity = coeff * p^power, one output every cycles_per_output_d * d cycles.
struct FactorySpec {
    std::string name;
    int64_t logical_qubits = 0;
    double cycles_per_output_d = 0;
    double infidelity_coeff = 0;
    double infidelity_power = 0;
    std::string provenance;

    double infidelity(double p) const;
    void check() const;
};

/// CSV with header `name,logical_qubits,cycles_per_output_in_d,infidelity_coeff,infidelity_power[,provenance]`.
std::vector<FactorySpec> load_factory_catalog(const std::string &path);
std::vector<FactorySpec> parse_factory_catalog(const std::string &csv);
/// 15:1 and 116:12, as shipped in data/factories.csv.
std::vector<FactorySpec> default_factory_catalog();

/// Compact block: ceil(1.5 n + 3) logical qubits, one T consumed every 9d cycles.
struct LayoutSpec {
    std::string name = "compact";
    double consume_cycles_d = 9;
    int64_t logical_qubits(int64_t n) const;
};

int64_t compact_qubits(int64_t n);
int64_t physical_qubits(int64_t n_logical, int d);

struct ResourceConfig {
    PlannerConfig planner;
    LayoutSpec layout;
    double ps = 0.99;
    /// Hadamard-test protocols: largest tolerated variance inflation e^{2 a_max}.
    double max_variance_inflation = 2;
    /// Textbook QPE: required probability that no logical or distillation fault occurs.
    double qpe_no_fault_probability = 0.99;
    int max_distance = 51;
};

/// Logical qubits of the whole layout: data block plus one factory.
int64_t total_logical_qubits(const ProtocolPlan &plan, const FactorySpec &f, const LayoutSpec &layout);

/// Noise parameters seen by the plan at distance d with factory f.
NoiseParams noise_for(double p, int d, int64_t n_logical, const FactorySpec &f, const LayoutSpec &layout);

struct DistanceResult {
    int d = 0;
    ProtocolPlan plan;
    NoiseParams noise;
};

/// Smallest odd d <= max_distance at which the protocol meets (eps, ps). Throws
/// InfeasibleError when none does.
DistanceResult min_code_distance(ProtocolKind kind, double gamma, double eps, double p, const FactorySpec &f,
                                 const ResourceConfig &cfg, bool reduced_j = false);

struct ResourceEstimate {
    std::string protocol;
    bool reduced_j = false;
    double gamma = 1;
    double eps = 0;
    double p = 0;
    int64_t n_computational = 0;
    int64_t n_logical = 0;
    int d = 0;
    int64_t physical_qubits = 0;
    int64_t t_tot = 0;
    int64_t t_max = 0;
    double code_cycles = 0;
    std::string factory;
    ProtocolPlan plan;
};

/// max(consume, produce) cycles per T times T_tot.
double code_cycles(const FactorySpec &f, const LayoutSpec &layout, int d, int64_t t_tot);

/// Cheapest factory (fewest logical qubits, then fewest cycles) for which a distance exists.
FactorySpec select_factory(ProtocolKind kind, double gamma, double eps, double p, const std::vector<FactorySpec> &catalog,
                           const ResourceConfig &cfg, bool reduced_j = false);

ResourceEstimate full_report(ProtocolKind kind, double gamma, double eps, double p,
                             const std::vector<FactorySpec> &catalog, const ResourceConfig &cfg, bool reduced_j = false);

/// Row label used in tables, e.g. "rpe" or "rpe-reduced".
std::string report_label(const ResourceEstimate &r);

}  // namespace eftqpe

#endif
