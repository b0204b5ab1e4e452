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

#include "eftqpe/resources/resources.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eftqpe/util/kv.h"

namespace eftqpe {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// RFC-4180 style: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                i++;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

double FactorySpec::infidelity(double p) const {
    return infidelity_coeff * std::pow(p, infidelity_power);
}

void FactorySpec::check() const {
    if (name.empty() || logical_qubits < 1 || !(cycles_per_output_d > 0) || !(infidelity_coeff > 0) ||
        !(infidelity_power > 1)) {
        throw std::invalid_argument("factory '" + name + "' has nonpositive parameters");
    }
}

std::vector<FactorySpec> parse_factory_catalog(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<FactorySpec> out;
    bool header = true;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#') {
            continue;
        }
        auto f = split_csv(line);
        if (header) {
            header = false;
            if (f.size() < 5 || f[0] != "name") {
                throw std::invalid_argument("factory catalog header must start with name,logical_qubits,...");
            }
            continue;
        }
        if (f.size() < 5) {
            throw std::invalid_argument("factory catalog row has fewer than 5 fields: " + line);
        }
        FactorySpec s;
        s.name = f[0];
        try {
            s.logical_qubits = std::stoll(f[1]);
            s.cycles_per_output_d = std::stod(f[2]);
            s.infidelity_coeff = std::stod(f[3]);
            s.infidelity_power = std::stod(f[4]);
        } catch (const std::exception &) {
            throw std::invalid_argument("factory catalog row is not numeric: " + line);
        }
        if (f.size() > 5) {
            s.provenance = f[5];
        }
        s.check();
        out.push_back(s);
    }
    if (out.empty()) {
        throw std::invalid_argument("factory catalog is empty");
    }
    return out;
}

std::vector<FactorySpec> load_factory_catalog(const std::string &path) {
    return parse_factory_catalog(read_text_file(path));
}

std::vector<FactorySpec> default_factory_catalog() {
    return {
        {"15:1", 11, 11, 35, 3, "11 logical qubits, 35p^3, one output per 11d cycles"},
        {"116:12", 57, 8.25, 41.25, 4, "57 logical qubits; rate and infidelity from the distillation literature, uncertain"},
    };
}

int64_t compact_qubits(int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("compact block needs n >= 1");
    }
    // ceil(1.5 n + 3) in integers.
    return (3 * n + 1) / 2 + 3;
}

int64_t LayoutSpec::logical_qubits(int64_t n) const {
    return compact_qubits(n);
}

int64_t physical_qubits(int64_t n_logical, int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be odd and >= 3");
    }
    return 2 * (int64_t)d * d * n_logical;
}

int64_t total_logical_qubits(const ProtocolPlan &plan, const FactorySpec &f, const LayoutSpec &layout) {
    return layout.logical_qubits(plan.n_computational()) + f.logical_qubits;
}

NoiseParams noise_for(double p, int d, int64_t n_logical, const FactorySpec &f, const LayoutSpec &layout) {
    NoiseParams n;
    n.p = p;
    n.d = d;
    n.n_l = n_logical;
    n.b = f.infidelity(p);
    n.t_rate = std::max(layout.consume_cycles_d, f.cycles_per_output_d);
    n.check();
    return n;
}

double code_cycles(const FactorySpec &f, const LayoutSpec &layout, int d, int64_t t_tot) {
    return std::max(layout.consume_cycles_d, f.cycles_per_output_d) * d * (double)t_tot;
}

DistanceResult min_code_distance(ProtocolKind kind, double gamma, double eps, double p, const FactorySpec &f,
                                 const ResourceConfig &cfg, bool reduced_j) {
    f.check();
    // The layout width does not depend on d, so the noiseless plan fixes n_L.
    ProtocolPlan probe = plan_protocol(kind, eps, gamma, cfg.ps, 0, cfg.planner, reduced_j);
    int64_t n_l = total_logical_qubits(probe, f, cfg.layout);
    for (int d = 3; d <= cfg.max_distance; d += 2) {
        NoiseParams noise = noise_for(p, d, n_l, f, cfg.layout);
        double rate = rate_per_t(noise);
        if (!(rate < 1)) {
            continue;
        }
        ProtocolPlan plan;
        try {
            plan = plan_protocol(kind, eps, gamma, cfg.ps, rate, cfg.planner, reduced_j);
        } catch (const InfeasibleError &) {
            continue;
        }
        bool ok;
        if (kind == ProtocolKind::TextbookQPE) {
            ok = std::exp(-plan.a_max()) >= cfg.qpe_no_fault_probability;
        } else {
            // IPE: the planner already demands p_single > 1/2; like the Hadamard-test
            // protocols its deepest iterate must also keep e^{2a} within the cap.
            ok = std::exp(2 * plan.a_max()) <= cfg.max_variance_inflation;
        }
        if (ok) {
            return {d, plan, noise};
        }
    }
    throw InfeasibleError(std::string("no code distance up to ") + std::to_string(cfg.max_distance) + " suffices for " +
                          protocol_name(kind) + " with factory " + f.name);
}

FactorySpec select_factory(ProtocolKind kind, double gamma, double eps, double p, const std::vector<FactorySpec> &catalog,
                           const ResourceConfig &cfg, bool reduced_j) {
    if (catalog.empty()) {
        throw std::invalid_argument("factory catalog is empty");
    }
    std::vector<FactorySpec> order = catalog;
    std::stable_sort(order.begin(), order.end(), [](const FactorySpec &a, const FactorySpec &b) {
        if (a.logical_qubits != b.logical_qubits) {
            return a.logical_qubits < b.logical_qubits;
        }
        return a.cycles_per_output_d < b.cycles_per_output_d;
    });
    for (const auto &f : order) {
        try {
            min_code_distance(kind, gamma, eps, p, f, cfg, reduced_j);
            return f;
        } catch (const InfeasibleError &) {
        }
    }
    throw InfeasibleError(std::string("no factory in the catalog suffices for ") + protocol_name(kind));
}

ResourceEstimate full_report(ProtocolKind kind, double gamma, double eps, double p,
                             const std::vector<FactorySpec> &catalog, const ResourceConfig &cfg, bool reduced_j) {
    FactorySpec f = select_factory(kind, gamma, eps, p, catalog, cfg, reduced_j);
    DistanceResult dr = min_code_distance(kind, gamma, eps, p, f, cfg, reduced_j);
    ResourceEstimate r;
    r.protocol = protocol_name(kind);
    r.reduced_j = reduced_j;
    r.gamma = gamma;
    r.eps = eps;
    r.p = p;
    r.n_computational = dr.plan.n_computational();
    r.n_logical = dr.noise.n_l;
    r.d = dr.d;
    r.physical_qubits = physical_qubits(r.n_logical, r.d);
    r.t_tot = dr.plan.t_tot;
    r.t_max = dr.plan.t_max;
    r.code_cycles = code_cycles(f, cfg.layout, r.d, r.t_tot);
    r.factory = f.name;
    r.plan = dr.plan;
    return r;
}

std::string report_label(const ResourceEstimate &r) {
    return r.reduced_j ? r.protocol + "-reduced" : r.protocol;
}

}  // namespace eftqpe
