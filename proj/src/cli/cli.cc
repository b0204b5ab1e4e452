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

#include "eftqpe/cli/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eftqpe/circuit/compile.h"
#include "eftqpe/circuit/t_count.h"
#include "eftqpe/protocols/bounds.h"
#include "eftqpe/protocols/runs.h"

#ifndef EFTQPE_DATA_DIR
#define EFTQPE_DATA_DIR "data"
#endif

namespace eftqpe {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

const char *kDefaults = R"(
mode = simulate
protocol = rpe
gamma = 1
eps = 1e-2
p = 1e-3
ps = 0.99
seed = 1
runs = 10
noise = searched
t = 0.5
synthesis_a = 3
synthesis_b = 10
synthesis_share = 0.5
qpe_extra_bits = 3
qpe_max_register_bits = 0
mmqcels_shot_factor = 2
mmqcels_sigma_fraction = 0.5
max_variance_inflation = 2
qpe_no_fault_probability = 0.99
max_distance = 51
bias_j = 0
bias_ns = 1000, 4000, 16000, 64000, 256000
bias_seeds = 10
)";

const std::vector<std::string> kPathKeys = {"hamiltonian", "factories", "circuit", "sequences", "out"};

std::vector<std::string> split_list(const std::string &s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) {
        out.push_back(tok);
    }
    return out;
}

template <typename F>
auto field(const std::string &key, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError("config field '" + key + "': " + e.what());
    }
}

void require(bool ok, const std::string &key, const std::string &what) {
    if (!ok) {
        throw ConfigError("config field '" + key + "' " + what);
    }
}

std::string hex64(uint64_t v) {
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << v;
    return o.str();
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

json provenance(const RunConfig &cfg, const H2Hamiltonian *h) {
    json p;
    p["config_hash"] = hex64(fnv1a64(cfg.canonical));
    p["seed"] = cfg.seed;
    p["coefficient_source"] = h ? h->source : std::string();
    p["generated_at"] = utc_now();
    return p;
}

json header(const RunConfig &cfg, const H2Hamiltonian *h) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = cfg.mode;
    j["provenance"] = provenance(cfg, h);
    return j;
}

json plan_json(const ProtocolPlan &p) {
    json j;
    j["kind"] = protocol_name(p.kind);
    j["reduced_j"] = p.reduced_j;
    j["J"] = p.J;
    j["ns_per_generation"] = p.ns_per_generation;
    j["t"] = p.t;
    j["gamma_assumed"] = p.gamma_assumed;
    j["target_eps"] = p.target_eps;
    j["target_ps"] = p.target_ps;
    j["queries_per_generation"] = p.queries_per_generation;
    j["times_per_generation"] = p.times_per_generation;
    if (!p.time_sigma.empty()) {
        j["time_sigma"] = p.time_sigma;
    }
    j["eps_protocol"] = p.eps_protocol;
    j["eps_synthesis"] = p.eps_synthesis;
    j["eps_rotation"] = p.eps_rotation;
    j["t_per_rotation"] = p.t_per_rotation;
    j["t_per_generation"] = p.t_per_generation;
    j["circuits_per_generation"] = p.circuits_per_generation;
    j["rate_per_t"] = p.rate_per_t;
    j["a_per_generation"] = p.a_per_generation;
    j["p_single"] = p.p_single;
    if (p.kind == ProtocolKind::TextbookQPE) {
        j["phase_bits"] = p.phase_bits;
        j["extra_bits"] = p.extra_bits;
        j["register_bits"] = p.register_bits;
    }
    j["t_max"] = p.t_max;
    j["t_tot"] = p.t_tot;
    return j;
}

void write_output(const RunConfig &cfg, const std::string &name, const std::string &text, std::ostream &log) {
    if (cfg.out_dir.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    fs::create_directories(cfg.out_dir);
    fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!text.empty() && text.back() != '\n') {
        out << '\n';
    }
    log << "wrote " << path.string() << "\n";
}

struct Job {
    ProtocolChoice choice;
    double gamma = 1;
    double eps = 0;
};

std::vector<Job> expand_jobs(const RunConfig &cfg) {
    std::vector<Job> jobs;
    for (const auto &c : cfg.protocols) {
        for (double g : cfg.gammas) {
            if (c.reduced_j && g != 1) {
                continue;
            }
            for (double e : cfg.eps) {
                jobs.push_back({c, g, e});
            }
        }
    }
    return jobs;
}

struct PlannedJob {
    ProtocolPlan plan;
    std::optional<DistanceResult> distance;
    std::string factory;
};

PlannedJob plan_job(const RunConfig &cfg, const Job &job, const std::vector<FactorySpec> &catalog) {
    PlannedJob pj;
    if (cfg.noise == "none") {
        pj.plan = plan_protocol(job.choice.kind, job.eps, job.gamma, cfg.resources.ps, 0, cfg.resources.planner,
                                job.choice.reduced_j);
        return pj;
    }
    FactorySpec f = select_factory(job.choice.kind, job.gamma, job.eps, cfg.p, catalog, cfg.resources,
                                   job.choice.reduced_j);
    pj.distance = min_code_distance(job.choice.kind, job.gamma, job.eps, cfg.p, f, cfg.resources, job.choice.reduced_j);
    pj.plan = pj.distance->plan;
    pj.factory = f.name;
    return pj;
}

json job_head(const Job &job, const PlannedJob *pj) {
    json j;
    j["protocol"] = job.choice.label;
    j["gamma"] = job.gamma;
    j["eps"] = job.eps;
    if (pj && pj->distance) {
        j["d"] = pj->distance->d;
        j["factory"] = pj->factory;
        j["n_logical"] = pj->distance->noise.n_l;
        j["rate_per_t"] = pj->plan.rate_per_t;
    }
    return j;
}

json run_json(const RunResult &r) {
    json j;
    j["seed"] = r.seed;
    j["phi_hat"] = r.estimate.phi_hat;
    j["lambda_hat"] = r.estimate.lambda_hat;
    j["error"] = r.error;
    j["exact_error"] = r.exact_error;
    j["noise_events"] = r.noise_events;
    if (!r.estimate.per_generation_theta.empty()) {
        j["per_generation_theta"] = r.estimate.per_generation_theta;
    }
    if (!r.samples.empty()) {
        json gens = json::array();
        for (const auto &g : r.samples) {
            json pts = json::array();
            for (const auto &p : g.points) {
                pts.push_back({{"k", p.k}, {"shots_x", p.shots_x}, {"plus_x", p.plus_x}, {"shots_y", p.shots_y},
                               {"plus_y", p.plus_y}});
            }
            gens.push_back({{"j", g.j}, {"noise_events", g.noise_events}, {"points", pts}});
        }
        j["generations"] = gens;
    }
    if (!r.outcomes.empty()) {
        json o = json::object();
        for (const auto &[v, n] : r.outcomes) {
            o[std::to_string(v)] = n;
        }
        j["outcomes"] = o;
    }
    return j;
}

bool above_threshold(double p) {
    return !(p < 0.01);
}

}  // namespace

uint64_t fnv1a64(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

size_t worker_count() {
    if (const char *env = std::getenv("EFTQPE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) {
                return (size_t)v;
            }
        } catch (const std::exception &) {
        }
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(size_t n, const std::function<void(size_t)> &job) {
    size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; i++) {
            job(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&]() {
            for (size_t i; (i = next++) < n;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next = n;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

ProtocolChoice parse_protocol_choice(const std::string &name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    ProtocolChoice c;
    if (n == "rpe-reduced") {
        c.kind = ProtocolKind::RPE;
        c.reduced_j = true;
        c.label = n;
        return c;
    }
    c.kind = parse_protocol(n);
    c.label = protocol_name(c.kind);
    return c;
}

RunConfig load_run_config(const std::string &path, const std::vector<std::pair<std::string, std::string>> &overrides) {
    KeyValues kv = KeyValues::parse(kDefaults);
    kv.set("hamiltonian", std::string(EFTQPE_DATA_DIR) + "/h2_sto3g.conf");
    kv.set("factories", std::string(EFTQPE_DATA_DIR) + "/factories.csv");
    if (!path.empty()) {
        if (!fs::exists(path)) {
            throw ConfigError("config file not found: " + path);
        }
        KeyValues file = field("config", [&] { return KeyValues::load(path); });
        fs::path base = fs::path(path).parent_path();
        for (const auto &[k, v] : file.entries()) {
            bool is_path = std::find(kPathKeys.begin(), kPathKeys.end(), k) != kPathKeys.end();
            kv.set(k, is_path && fs::path(v).is_relative() ? (base / v).lexically_normal().string() : v);
        }
    }
    for (const auto &[k, v] : overrides) {
        kv.set(k, v);
    }

    RunConfig cfg;
    cfg.mode = kv.get("mode");
    const std::vector<std::string> modes = {"simulate", "plan", "resources", "sweep", "bias", "validate"};
    require(std::find(modes.begin(), modes.end(), cfg.mode) != modes.end(), "mode",
            "must be one of simulate, plan, resources, sweep, bias, validate");
    cfg.hamiltonian_path = kv.get("hamiltonian");
    require(fs::exists(cfg.hamiltonian_path), "hamiltonian", "names a missing file: " + cfg.hamiltonian_path);
    cfg.factories_path = kv.get("factories");
    require(fs::exists(cfg.factories_path), "factories", "names a missing file: " + cfg.factories_path);

    for (const auto &name : split_list(kv.get("protocol"))) {
        if (name == "all") {
            for (const char *n : {"qpe", "ipe", "rpe", "qcels", "mmqcels"}) {
                cfg.protocols.push_back(parse_protocol_choice(n));
            }
        } else if (name == "table") {
            for (const char *n : {"qpe", "ipe", "rpe", "rpe-reduced"}) {
                cfg.protocols.push_back(parse_protocol_choice(n));
            }
        } else {
            cfg.protocols.push_back(field("protocol", [&] { return parse_protocol_choice(name); }));
        }
    }
    require(!cfg.protocols.empty(), "protocol", "is empty");

    cfg.gammas = field("gamma", [&] { return kv.get_doubles("gamma"); });
    require(!cfg.gammas.empty(), "gamma", "is empty");
    for (double g : cfg.gammas) {
        require(g > 0 && g <= 1, "gamma", "must lie in (0, 1], got " + kv.get("gamma"));
    }
    cfg.eps = field("eps", [&] { return kv.get_doubles("eps"); });
    require(!cfg.eps.empty(), "eps", "is empty");
    for (double e : cfg.eps) {
        require(e > 0 && e <= 0.1, "eps", "values must lie in (0, 0.1], got " + kv.get("eps"));
    }
    cfg.p = field("p", [&] { return kv.get_double("p"); });
    require(cfg.p > 0 && cfg.p < 1, "p", "must lie in (0, 1)");
    cfg.seed = field("seed", [&] { return (uint64_t)std::stoull(kv.get("seed")); });
    cfg.runs = (int)field("runs", [&] { return kv.get_int_or("runs", 10); });
    require(cfg.runs >= 1, "runs", "must be at least 1");
    cfg.noise = kv.get("noise");
    require(cfg.noise == "searched" || cfg.noise == "none", "noise", "must be searched or none");
    cfg.out_dir = kv.get_or("out", "");

    auto &rc = cfg.resources;
    auto &pc = rc.planner;
    rc.ps = field("ps", [&] { return kv.get_double("ps"); });
    require(rc.ps > 0.5 && rc.ps < 1, "ps", "must lie in (0.5, 1)");
    pc.t = field("t", [&] { return kv.get_double("t"); });
    pc.synth.coeff_a = field("synthesis_a", [&] { return kv.get_double("synthesis_a"); });
    pc.synth.offset_b = field("synthesis_b", [&] { return kv.get_double("synthesis_b"); });
    pc.synthesis_share = field("synthesis_share", [&] { return kv.get_double("synthesis_share"); });
    pc.qpe_extra_bits = (int)field("qpe_extra_bits", [&] { return kv.get_int_or("qpe_extra_bits", 3); });
    pc.qpe_max_register_bits =
        (int)field("qpe_max_register_bits", [&] { return kv.get_int_or("qpe_max_register_bits", 0); });
    pc.mmqcels_shot_factor = field("mmqcels_shot_factor", [&] { return kv.get_double("mmqcels_shot_factor"); });
    pc.mmqcels_sigma_fraction =
        field("mmqcels_sigma_fraction", [&] { return kv.get_double("mmqcels_sigma_fraction"); });
    field("planner", [&] {
        pc.check();
        return 0;
    });
    rc.max_variance_inflation = field("max_variance_inflation", [&] { return kv.get_double("max_variance_inflation"); });
    require(rc.max_variance_inflation >= 1, "max_variance_inflation", "must be at least 1");
    rc.qpe_no_fault_probability =
        field("qpe_no_fault_probability", [&] { return kv.get_double("qpe_no_fault_probability"); });
    require(rc.qpe_no_fault_probability > 0 && rc.qpe_no_fault_probability < 1, "qpe_no_fault_probability",
            "must lie in (0, 1)");
    rc.max_distance = (int)field("max_distance", [&] { return kv.get_int_or("max_distance", 51); });
    require(rc.max_distance >= 3, "max_distance", "must be at least 3");
    cfg.trotter.t = pc.t;

    cfg.bias_j = (int)field("bias_j", [&] { return kv.get_int_or("bias_j", 0); });
    require(cfg.bias_j >= 0 && cfg.bias_j <= 40, "bias_j", "must lie in [0, 40]");
    cfg.bias_ns.clear();
    for (double v : field("bias_ns", [&] { return kv.get_doubles("bias_ns"); })) {
        require(v >= 1 && v == std::floor(v), "bias_ns", "must hold positive integers");
        cfg.bias_ns.push_back((int64_t)v);
    }
    cfg.bias_seeds = (int)field("bias_seeds", [&] { return kv.get_int_or("bias_seeds", 10); });
    require(cfg.bias_seeds >= 1, "bias_seeds", "must be at least 1");
    cfg.circuit_path = kv.get_or("circuit", "");
    cfg.sequences_path = kv.get_or("sequences", "");

    std::ostringstream canon;
    for (const auto &[k, v] : kv.entries()) {
        if (k != "out") {
            canon << k << " = " << v << "\n";
        }
    }
    cfg.canonical = canon.str();
    return cfg;
}

int cmd_simulate(const RunConfig &cfg, std::ostream &log) {
    H2Hamiltonian h = H2Hamiltonian::from_file(cfg.hamiltonian_path);
    auto catalog = load_factory_catalog(cfg.factories_path);
    if (cfg.noise == "searched" && above_threshold(cfg.p)) {
        log << "error: p = " << cfg.p << " is not below threshold\n";
        return kExitInfeasible;
    }
    auto jobs = expand_jobs(cfg);
    std::vector<std::optional<PlannedJob>> planned(jobs.size());
    std::vector<std::string> skipped(jobs.size());
    bool infeasible = false;
    // Simulated textbook QPE keeps its register inside the state-vector cap; a run that needs
    // more phase bits than fit is planned uncapped and reported as an estimate only.
    RunConfig capped = cfg;
    int width_cap = (int)qubit_cap() - 2;
    int &reg_cap = capped.resources.planner.qpe_max_register_bits;
    reg_cap = reg_cap > 0 ? std::min(reg_cap, width_cap) : width_cap;
    for (size_t i = 0; i < jobs.size(); i++) {
        try {
            planned[i] = plan_job(capped, jobs[i], catalog);
        } catch (const InfeasibleError &e) {
            if (jobs[i].choice.kind == ProtocolKind::TextbookQPE) {
                try {
                    planned[i] = plan_job(cfg, jobs[i], catalog);
                    skipped[i] = "estimate only: register exceeds the simulator width cap";
                    continue;
                } catch (const InfeasibleError &) {
                }
            }
            skipped[i] = std::string("infeasible: ") + e.what();
            infeasible = true;
        }
    }

    std::vector<std::pair<size_t, int>> work;
    for (size_t i = 0; i < jobs.size(); i++) {
        if (planned[i] && skipped[i].empty()) {
            for (int r = 0; r < cfg.runs; r++) {
                work.push_back({i, r});
            }
        }
    }
    std::vector<RunResult> results(work.size());
    parallel_for(work.size(), [&](size_t w) {
        const auto &[i, r] = work[w];
        PhaseProblem problem = h2_problem(h, cfg.trotter, jobs[i].gamma);
        results[w] = run_protocol(planned[i]->plan, problem, cfg.seed + (uint64_t)r);
    });

    json out = header(cfg, &h);
    out["reference"] = {{"query_phase", wrap_phase(query_phase(h, cfg.trotter))},
                        {"exact_phase", exact_eigensystem(h).values(0) * cfg.trotter.t},
                        {"t", cfg.trotter.t}};
    json rows = json::array();
    bool all_met = true;
    size_t w = 0;
    for (size_t i = 0; i < jobs.size(); i++) {
        json row = job_head(jobs[i], planned[i] ? &*planned[i] : nullptr);
        if (planned[i]) {
            row["plan"] = plan_json(planned[i]->plan);
        }
        if (!skipped[i].empty()) {
            row["status"] = skipped[i];
            rows.push_back(row);
            log << jobs[i].choice.label << " gamma=" << jobs[i].gamma << " eps=" << jobs[i].eps << ": " << skipped[i]
                << "\n";
            continue;
        }
        double mean = 0, mean_exact = 0;
        int ok = 0;
        json runs = json::array();
        for (; w < work.size() && work[w].first == i; w++) {
            const auto &r = results[w];
            mean += r.error / cfg.runs;
            mean_exact += r.exact_error / cfg.runs;
            ok += r.error <= jobs[i].eps;
            runs.push_back(run_json(r));
        }
        bool met = mean <= jobs[i].eps;
        all_met &= met;
        row["status"] = "simulated";
        row["runs"] = runs;
        row["mean_error"] = mean;
        row["mean_exact_error"] = mean_exact;
        row["success_fraction"] = (double)ok / cfg.runs;
        row["target_met"] = met;
        rows.push_back(row);
        log << jobs[i].choice.label << " gamma=" << jobs[i].gamma << " eps=" << jobs[i].eps << ": mean error " << mean
            << (met ? " <= " : " > ") << "target\n";
    }
    out["results"] = rows;
    write_output(cfg, "simulate.json", out.dump(2), log);
    if (infeasible) {
        return kExitInfeasible;
    }
    return all_met ? kExitOk : kExitTargetMissed;
}

int cmd_plan(const RunConfig &cfg, std::ostream &log) {
    auto catalog = load_factory_catalog(cfg.factories_path);
    if (cfg.noise == "searched" && above_threshold(cfg.p)) {
        log << "error: p = " << cfg.p << " is not below threshold\n";
        return kExitInfeasible;
    }
    json out = header(cfg, nullptr);
    json rows = json::array();
    for (const auto &job : expand_jobs(cfg)) {
        try {
            PlannedJob pj = plan_job(cfg, job, catalog);
            json row = job_head(job, &pj);
            row["plan"] = plan_json(pj.plan);
            rows.push_back(row);
        } catch (const InfeasibleError &e) {
            log << job.choice.label << " gamma=" << job.gamma << " eps=" << job.eps << ": infeasible: " << e.what()
                << "\n";
            return kExitInfeasible;
        }
    }
    out["plans"] = rows;
    write_output(cfg, "plan.json", out.dump(2), log);
    return kExitOk;
}

int cmd_resources(const RunConfig &cfg, std::ostream &log) {
    if (above_threshold(cfg.p)) {
        log << "error: p = " << cfg.p << " is not below threshold; the logical error model does not apply\n";
        return kExitInfeasible;
    }
    auto catalog = load_factory_catalog(cfg.factories_path);
    std::vector<Job> jobs;
    for (double e : cfg.eps) {
        for (const auto &c : cfg.protocols) {
            for (double g : cfg.gammas) {
                if (!c.reduced_j || g == 1) {
                    jobs.push_back({c, g, e});
                }
            }
        }
    }
    std::vector<std::optional<ResourceEstimate>> est(jobs.size());
    std::vector<std::string> errors(jobs.size());
    parallel_for(jobs.size(), [&](size_t i) {
        try {
            est[i] = full_report(jobs[i].choice.kind, jobs[i].gamma, jobs[i].eps, cfg.p, catalog, cfg.resources,
                                 jobs[i].choice.reduced_j);
        } catch (const InfeasibleError &e) {
            errors[i] = e.what();
        }
    });
    std::ostringstream csv;
    csv << "physical_qubits,protocol,gamma,code_cycles,d,n_logical,t_tot,t_max,factory\n";
    json out = header(cfg, nullptr);
    out["p"] = cfg.p;
    json rows = json::array();
    bool infeasible = false;
    for (size_t i = 0; i < jobs.size(); i++) {
        if (!est[i]) {
            log << jobs[i].choice.label << " gamma=" << jobs[i].gamma << " eps=" << jobs[i].eps
                << ": infeasible: " << errors[i] << "\n";
            infeasible = true;
            continue;
        }
        const auto &r = *est[i];
        std::ostringstream cyc;
        cyc << std::fixed << std::setprecision(0) << r.code_cycles;
        csv << r.physical_qubits << "," << csv_field(report_label(r)) << "," << r.gamma << "," << cyc.str() << ","
            << r.d << "," << r.n_logical << "," << r.t_tot << "," << r.t_max << "," << csv_field(r.factory) << "\n";
        rows.push_back({{"physical_qubits", r.physical_qubits},
                        {"protocol", report_label(r)},
                        {"gamma", r.gamma},
                        {"eps", r.eps},
                        {"code_cycles", r.code_cycles},
                        {"d", r.d},
                        {"n_computational", r.n_computational},
                        {"n_logical", r.n_logical},
                        {"t_tot", r.t_tot},
                        {"t_max", r.t_max},
                        {"factory", r.factory},
                        {"plan", plan_json(r.plan)}});
    }
    out["rows"] = rows;
    write_output(cfg, "resources.csv", csv.str(), log);
    if (!cfg.out_dir.empty()) {
        write_output(cfg, "resources.json", out.dump(2), log);
    }
    return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_sweep(const RunConfig &cfg, std::ostream &log) {
    if (cfg.eps.size() < 2) {
        log << "error: config field 'eps' needs at least two values for a sweep\n";
        return kExitConfig;
    }
    if (cfg.noise == "searched" && above_threshold(cfg.p)) {
        log << "error: p = " << cfg.p << " is not below threshold\n";
        return kExitInfeasible;
    }
    auto catalog = load_factory_catalog(cfg.factories_path);
    auto jobs = expand_jobs(cfg);
    std::vector<std::optional<PlannedJob>> planned(jobs.size());
    std::vector<std::string> errors(jobs.size());
    parallel_for(jobs.size(), [&](size_t i) {
        try {
            planned[i] = plan_job(cfg, jobs[i], catalog);
        } catch (const InfeasibleError &e) {
            errors[i] = e.what();
        }
    });
    std::ostringstream csv;
    csv << "protocol,gamma,eps,J,ns,t_per_rotation,t_max,t_tot,d\n";
    bool infeasible = false;
    for (size_t i = 0; i < jobs.size(); i++) {
        if (!planned[i]) {
            log << jobs[i].choice.label << " gamma=" << jobs[i].gamma << " eps=" << jobs[i].eps
                << ": infeasible: " << errors[i] << "\n";
            infeasible = true;
            continue;
        }
        const auto &p = planned[i]->plan;
        csv << csv_field(jobs[i].choice.label) << "," << jobs[i].gamma << "," << jobs[i].eps << "," << p.J << ","
            << p.ns_per_generation.back() << "," << p.t_per_rotation << "," << p.t_max << "," << p.t_tot << ","
            << (planned[i]->distance ? planned[i]->distance->d : 0) << "\n";
    }
    write_output(cfg, "sweep.csv", csv.str(), log);
    return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_bias(const RunConfig &cfg, std::ostream &log) {
    for (double g : cfg.gammas) {
        if (!(g > rpe_gamma_threshold())) {
            log << "error: config field 'gamma' values must exceed " << rpe_gamma_threshold() << " for bias runs\n";
            return kExitConfig;
        }
    }
    for (size_t i = 1; i < cfg.bias_ns.size(); i++) {
        if (cfg.bias_ns[i] <= cfg.bias_ns[i - 1]) {
            log << "error: config field 'bias_ns' must be increasing\n";
            return kExitConfig;
        }
    }
    H2Hamiltonian h = H2Hamiltonian::from_file(cfg.hamiltonian_path);
    std::vector<std::pair<ProtocolKind, double>> jobs;
    for (const auto &c : cfg.protocols) {
        if (!is_hadamard_family(c.kind) || c.reduced_j) {
            continue;
        }
        for (double g : cfg.gammas) {
            jobs.push_back({c.kind, g});
        }
    }
    if (jobs.empty()) {
        log << "error: config field 'protocol' needs rpe, qcels or mmqcels for bias runs\n";
        return kExitConfig;
    }
    std::vector<uint64_t> seeds;
    for (int s = 0; s < cfg.bias_seeds; s++) {
        seeds.push_back(cfg.seed + (uint64_t)s);
    }
    std::vector<BiasResult> res(jobs.size());
    std::vector<int> depth(jobs.size());
    parallel_for(jobs.size(), [&](size_t i) {
        auto [kind, g] = jobs[i];
        int J = cfg.bias_j;
        if (J == 0) {
            J = plan_protocol(ProtocolKind::RPE, cfg.eps.front(), g, cfg.resources.ps, 0, cfg.resources.planner).J;
        }
        depth[i] = J;
        res[i] = empirical_bias(kind, h2_problem(h, cfg.trotter, g), J, cfg.bias_ns, seeds);
    });
    std::ostringstream csv;
    csv << "gamma,protocol,J,empirical_bias,analytic_bound,sampling_floor,status,within_bound\n";
    bool inconclusive = false, violated = false;
    for (size_t i = 0; i < jobs.size(); i++) {
        auto [kind, g] = jobs[i];
        const auto &b = res[i];
        double bound = bias_bound(g);
        double last = b.mean_error.back();
        std::string status;
        double value = b.plateau;
        bool within;
        if (b.plateau_found) {
            status = "plateau";
            within = value <= bound;
        } else if (last <= b.sampling_floor) {
            status = g == 1 ? "consistent_with_zero" : "below_floor";
            value = last;
            within = true;
        } else {
            status = "inconclusive";
            value = last;
            within = last <= bound;
            inconclusive = true;
        }
        violated |= !within;
        csv << g << "," << protocol_name(kind) << "," << depth[i] << "," << value << "," << bound << ","
            << b.sampling_floor << "," << status << "," << (within ? "true" : "false") << "\n";
        log << protocol_name(kind) << " gamma=" << g << " J=" << depth[i] << ": " << status << " " << value
            << " bound " << bound << "\n";
    }
    write_output(cfg, "bias.csv", csv.str(), log);
    if (inconclusive) {
        return kExitInconclusive;
    }
    return violated ? kExitTargetMissed : kExitOk;
}

int cmd_validate(const RunConfig &cfg, std::ostream &log) {
    json out = header(cfg, nullptr);
    H2Hamiltonian h = H2Hamiltonian::from_file(cfg.hamiltonian_path);
    out["provenance"]["coefficient_source"] = h.source;
    Eigensystem es = exact_eigensystem(h);
    TrotterError te = trotter_phase_error(h, cfg.trotter);
    out["hamiltonian"] = {{"path", cfg.hamiltonian_path},
                          {"g", {h.g1, h.g2, h.g3, h.g4}},
                          {"eigenvalues", {es.values(0), es.values(1), es.values(2), es.values(3)}},
                          {"trotter_phase_error", te.phase_error},
                          {"trotter_energy_error", te.energy_error}};
    auto catalog = load_factory_catalog(cfg.factories_path);
    json facs = json::array();
    for (const auto &f : catalog) {
        facs.push_back({{"name", f.name},
                        {"logical_qubits", f.logical_qubits},
                        {"cycles_per_output_d", f.cycles_per_output_d},
                        {"infidelity_at_p", f.infidelity(cfg.p)}});
    }
    out["factories"] = facs;
    if (!cfg.circuit_path.empty()) {
        Circuit c = Circuit::from_text(read_text_file(cfg.circuit_path));
        c.validate();
        TCount tc = count_t_gates(c, cfg.resources.planner.synth, 1e-6);
        json cj = {{"path", cfg.circuit_path},
                   {"n_qubits", c.n_qubits},
                   {"n_classical_bits", c.n_classical_bits},
                   {"ops", c.ops.size()},
                   {"non_clifford", count_non_clifford(c)},
                   {"t_count_at_1e-6", tc.t_total}};
        try {
            cj["compiled_rotations"] = commute_cliffords(c).rotations.size();
        } catch (const std::invalid_argument &e) {
            cj["compiled_rotations"] = nullptr;
            cj["compile_note"] = e.what();
        }
        out["circuit"] = cj;
    }
    if (!cfg.sequences_path.empty()) {
        auto seqs = read_sequence_file(cfg.sequences_path);
        json sj = {{"path", cfg.sequences_path}, {"accepted", seqs.size()}};
        if (seqs.size() >= 2) {
            SynthesisModel m = calibrate_model(seqs);
            sj["calibrated_a"] = m.coeff_a;
            sj["calibrated_b"] = m.offset_b;
        }
        out["sequences"] = sj;
    }
    write_output(cfg, "validate.json", out.dump(2), log);
    return kExitOk;
}

int run_mode(const RunConfig &cfg, std::ostream &log) {
    try {
        if (cfg.mode == "simulate") {
            return cmd_simulate(cfg, log);
        }
        if (cfg.mode == "plan") {
            return cmd_plan(cfg, log);
        }
        if (cfg.mode == "resources") {
            return cmd_resources(cfg, log);
        }
        if (cfg.mode == "sweep") {
            return cmd_sweep(cfg, log);
        }
        if (cfg.mode == "bias") {
            return cmd_bias(cfg, log);
        }
        return cmd_validate(cfg, log);
    } catch (const InfeasibleError &e) {
        log << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConfigError &e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace eftqpe
