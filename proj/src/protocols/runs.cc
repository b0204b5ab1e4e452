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

#include "eftqpe/protocols/runs.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eftqpe/protocols/bounds.h"

namespace eftqpe {

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int64_t binomial(int64_t n, double p, Rng &rng) {
    if (n <= 0 || p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return n;
    }
    return std::binomial_distribution<int64_t>(n, p)(rng);
}

double clamp01(double p) {
    return std::min(1.0, std::max(0.0, p));
}

// |+> on the control (qubit 0) times the prepared system on qubits 1, 2.
StateVector hadamard_input(const PhaseProblem &problem) {
    StateVector psi(3);
    const double r = std::sqrt(0.5);
    for (size_t s = 0; s < 4; s++) {
        psi[s << 1] = r * problem.system[s];
        psi[(s << 1) | 1] = r * problem.system[s];
    }
    return psi;
}

// 2 sum_s conj(psi[0,s]) psi[1,s] = <X> + i <Y> of the control.
std::complex<double> control_signal(const StateVector &psi) {
    std::complex<double> c = 0;
    for (size_t s = 0; s < 4; s++) {
        c += std::conj(psi[s << 1]) * psi[(s << 1) | 1];
    }
    return 2.0 * c;
}

const std::vector<uint32_t> kLocal = {0, 1, 2};

struct QftOp {
    GateOp op;
    std::vector<uint32_t> acted;
};

// Swap-free inverse QFT: ancilla m-1 is resolved first; every controlled phase e^{i theta}
// on |11> is RZ_c(theta/2) RZ_t(theta/2) CNOT RZ_t(-theta/2) CNOT up to a global phase.
std::vector<QftOp> inverse_qft_ops(int m) {
    std::vector<QftOp> out;
    for (int i = m - 1; i >= 0; i--) {
        for (int l = m - 1; l > i; l--) {
            double theta = -2 * kPi / std::ldexp(1.0, l - i + 1);
            uint32_t c = (uint32_t)l, t = (uint32_t)i;
            std::vector<uint32_t> pair = {c, t};
            out.push_back({GateOp::rz(c, theta / 2), pair});
            out.push_back({GateOp::rz(t, theta / 2), pair});
            out.push_back({GateOp::cnot(c, t), {}});
            out.push_back({GateOp::rz(t, -theta / 2), pair});
            out.push_back({GateOp::cnot(c, t), {}});
        }
        out.push_back({GateOp::single(GateKind::H, (uint32_t)i), {}});
    }
    return out;
}

// Noise after one synthesized rotation acting on `acted`.
int rotation_noise(StateVector &psi, const std::vector<uint32_t> &acted, const SlotNoise &noise, Rng &rng) {
    if (noise.noiseless() || acted.empty()) {
        return 0;
    }
    double q = noise.rate_per_t * (1 - std::pow(4.0, -(double)acted.size()));
    auto events = sample_event_positions(noise.t_per_rotation, q, rng, false);
    for (size_t e = 0; e < events.size(); e++) {
        apply_local_pauli(psi, random_local_pauli(acted.size(), rng), acted);
    }
    return (int)events.size();
}

int measure_qubit(StateVector &psi, uint32_t q, Rng &rng) {
    double p1 = psi.prob_one(q);
    int b = std::uniform_real_distribution<double>(0, 1)(rng) < p1 ? 1 : 0;
    psi.collapse(q, b);
    return b;
}

uint64_t mode_of(const std::map<uint64_t, int64_t> &counts) {
    uint64_t best = 0;
    int64_t best_n = -1;
    for (const auto &[v, n] : counts) {
        if (n > best_n) {
            best = v;
            best_n = n;
        }
    }
    return best;
}

void score(RunResult &r, const PhaseProblem &problem) {
    r.error = std::abs(wrap_phase(r.estimate.phi_hat - problem.reference_phase)) / problem.t;
    r.exact_error = std::abs(wrap_phase(r.estimate.phi_hat - problem.exact_phase)) / problem.t;
}

std::vector<GenerationSamples> sample_generations(ProtocolKind kind, const QueryEngine &engine,
                                                  const PhaseProblem &problem, int J,
                                                  const std::vector<int64_t> &ns,
                                                  const std::vector<double> &sigma, uint64_t seed) {
    std::vector<GenerationSamples> gens;
    for (int j = 1; j <= J; j++) {
        Rng rng = make_rng(seed, (uint64_t)j);
        GenerationSamples g;
        g.j = j;
        int64_t kmax = int64_t{1} << (j - 1);
        int64_t n = ns[j - 1];
        if (kind == ProtocolKind::MMQCELS) {
            // |tau| ~ Normal(0, sigma_j) truncated at the generation's depth, in whole queries.
            std::normal_distribution<double> nd(0, sigma[j - 1]);
            std::map<int64_t, int64_t> by_k;
            for (int64_t s = 0; s < n; s++) {
                double tau;
                do {
                    tau = std::abs(nd(rng));
                } while (tau > (double)kmax * problem.t);
                by_k[std::llround(tau / problem.t)]++;
            }
            for (const auto &[k, count] : by_k) {
                g.points.push_back(sample_hadamard(engine, problem, k, count, rng, &g.noise_events));
            }
        } else {
            g.points.push_back(sample_hadamard(engine, problem, kmax, n, rng, &g.noise_events));
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

PhaseEstimate estimate_for(ProtocolKind kind, const std::vector<GenerationSamples> &gens, double t) {
    if (kind == ProtocolKind::RPE) {
        return rpe_estimate(gens, t);
    }
    return qcels_estimate(gens, t, kind);
}

}  // namespace

double wrap_phase(double a) {
    double r = std::remainder(a, 2 * kPi);
    return r <= -kPi ? r + 2 * kPi : r;
}

Rng make_rng(uint64_t seed, uint64_t stream) {
    uint64_t a = splitmix64(seed);
    uint64_t b = splitmix64(a ^ splitmix64(stream + 0x5851f42d4c957f2dULL));
    std::seed_seq seq{(uint32_t)a, (uint32_t)(a >> 32), (uint32_t)b, (uint32_t)(b >> 32)};
    return Rng(seq);
}

PhaseProblem h2_problem(const H2Hamiltonian &h, const TrotterConfig &cfg, double gamma) {
    PhaseProblem p;
    p.query = build_controlled_trotter(h, cfg, 1);
    p.system = prepare_with_overlap(h, gamma).state;
    p.t = cfg.t;
    p.reference_phase = wrap_phase(query_phase(h, cfg));
    p.exact_phase = exact_eigensystem(h).values(0) * cfg.t;
    p.label = "h2";
    return p;
}

PhaseProblem oracle_problem(double phi, double t) {
    if (!std::isfinite(phi) || !(t > 0)) {
        throw std::invalid_argument("oracle needs a finite phase and t > 0");
    }
    PhaseProblem p;
    p.query = Circuit(3);
    p.query.append(GateOp::rz(0, -phi));
    p.system = StateVector(2);
    p.t = t;
    p.reference_phase = wrap_phase(phi);
    p.exact_phase = p.reference_phase;
    p.label = "oracle";
    return p;
}

Circuit hadamard_test_circuit(const Circuit &query, int64_t power, bool sdag_basis) {
    if (power < 1) {
        throw std::invalid_argument("Hadamard test power must be a positive integer");
    }
    if (query.n_qubits != 3) {
        throw std::invalid_argument("query must act on control 0 and system qubits 1, 2");
    }
    Circuit c(3, 1);
    c.append(GateOp::single(GateKind::H, 0));
    for (int64_t r = 0; r < power; r++) {
        c.append(query);
    }
    if (sdag_basis) {
        c.append(GateOp::single(GateKind::Sdag, 0));
    }
    c.append(GateOp::single(GateKind::H, 0));
    c.append(GateOp::measure(0, 0));
    return c;
}

std::complex<double> HadamardPoint::zbar() const {
    double x = shots_x ? (2.0 * (double)plus_x - (double)shots_x) / (double)shots_x : 0;
    double y = shots_y ? (2.0 * (double)plus_y - (double)shots_y) / (double)shots_y : 0;
    return {x, y};
}

std::complex<double> GenerationSamples::zbar() const {
    double sx = 0, sy = 0;
    int64_t nx = 0, ny = 0;
    for (const auto &p : points) {
        sx += 2.0 * (double)p.plus_x - (double)p.shots_x;
        sy += 2.0 * (double)p.plus_y - (double)p.shots_y;
        nx += p.shots_x;
        ny += p.shots_y;
    }
    if (!nx || !ny) {
        throw std::invalid_argument("empty generation");
    }
    return {sx / (double)nx, sy / (double)ny};
}

std::complex<double> exact_signal(const PhaseProblem &problem, int64_t k) {
    QueryEngine engine(problem.query, 0, SlotNoise{});
    StateVector psi = hadamard_input(problem);
    engine.apply_power(psi, k, kLocal);
    return control_signal(psi);
}

HadamardPoint sample_hadamard(const QueryEngine &engine, const PhaseProblem &problem, int64_t k, int64_t shots,
                              Rng &rng, int64_t *events) {
    HadamardPoint pt;
    pt.k = k;
    pt.shots_x = pt.shots_y = shots;
    StateVector clean = hadamard_input(problem);
    engine.apply_power(clean, k, kLocal);
    std::complex<double> c = control_signal(clean);
    double p_clean = engine.noise().noiseless() ? 1.0 : engine.clean_probability(k);
    std::uniform_real_distribution<double> u(0, 1);
    for (int basis = 0; basis < 2; basis++) {
        auto plus_of = [&](std::complex<double> s) { return clamp01(0.5 * (1 + (basis ? s.imag() : s.real()))); };
        int64_t n_clean = binomial(shots, p_clean, rng);
        int64_t plus = binomial(n_clean, plus_of(c), rng);
        for (int64_t s = n_clean; s < shots; s++) {
            StateVector psi = hadamard_input(problem);
            int ev = engine.apply_noisy(psi, k, kLocal, rng, true);
            if (events) {
                *events += ev;
            }
            plus += u(rng) < plus_of(control_signal(psi));
        }
        (basis ? pt.plus_y : pt.plus_x) = plus;
    }
    return pt;
}

PhaseEstimate rpe_estimate_signals(const std::vector<std::complex<double>> &z, double t) {
    if (z.empty()) {
        throw std::invalid_argument("RPE needs at least one generation");
    }
    PhaseEstimate e;
    e.kind = ProtocolKind::RPE;
    double theta = -std::arg(z[0]);
    e.per_generation_theta.push_back(theta);
    for (size_t j = 1; j < z.size(); j++) {
        double target = 2 * theta;
        double cand = -std::arg(z[j]);
        theta = cand + 2 * kPi * std::round((target - cand) / (2 * kPi));
        e.per_generation_theta.push_back(theta);
    }
    e.phi_hat = wrap_phase(theta / std::ldexp(1.0, (int)z.size() - 1));
    e.lambda_hat = e.phi_hat / t;
    return e;
}

PhaseEstimate rpe_estimate(const std::vector<GenerationSamples> &gens, double t) {
    if (gens.empty()) {
        throw std::invalid_argument("RPE needs at least one generation");
    }
    PhaseEstimate e;
    e.kind = ProtocolKind::RPE;
    double theta = 0;
    int64_t k_prev = 0;
    for (const auto &g : gens) {
        if (g.points.size() != 1 || g.points[0].k < 1) {
            throw std::invalid_argument("RPE generations hold a single query count >= 1");
        }
        int64_t k = g.points[0].k;
        double cand = -std::arg(g.zbar());
        if (k_prev == 0) {
            theta = cand;
        } else {
            double target = theta * (double)k / (double)k_prev;
            theta = cand + 2 * kPi * std::round((target - cand) / (2 * kPi));
        }
        e.per_generation_theta.push_back(theta);
        k_prev = k;
    }
    e.phi_hat = wrap_phase(theta / (double)k_prev);
    e.lambda_hat = e.phi_hat / t;
    return e;
}

double qcels_fit(const std::vector<FitPoint> &data, double center, double half_width) {
    if (data.size() < 2) {
        throw std::invalid_argument("QCELS needs at least two data points");
    }
    bool distinct = false;
    for (const auto &p : data) {
        distinct |= p.time != data[0].time;
    }
    if (!distinct) {
        throw std::invalid_argument("QCELS data are degenerate: all times are equal");
    }
    if (!(half_width > 0)) {
        throw std::invalid_argument("QCELS bracket must have positive width");
    }
    // Minimizing sum w |z - r e^{-i lambda t}|^2 over r leaves max |sum w z e^{i lambda t}|^2.
    auto f = [&](double lam) {
        std::complex<double> s = 0;
        for (const auto &p : data) {
            s += p.weight * p.z * std::polar(1.0, lam * p.time);
        }
        return std::norm(s);
    };
    const int n = 21;
    double step = 2 * half_width / (n - 1);
    int best = 0;
    double best_f = -1;
    for (int i = 0; i < n; i++) {
        double v = f(center - half_width + i * step);
        if (v > best_f) {
            best_f = v;
            best = i;
        }
    }
    double lo = center - half_width + std::max(best - 1, 0) * step;
    double hi = center - half_width + std::min(best + 1, n - 1) * step;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(center)); it++) {
        if (fa > fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    return 0.5 * (lo + hi);
}

PhaseEstimate qcels_estimate(const std::vector<GenerationSamples> &gens, double t, ProtocolKind kind) {
    if (gens.empty()) {
        throw std::invalid_argument("QCELS needs at least one generation");
    }
    PhaseEstimate e;
    e.kind = kind;
    std::vector<FitPoint> data = {{0, 1, 1}};
    double center = 0;
    for (size_t j = 0; j < gens.size(); j++) {
        int64_t total = 0;
        for (const auto &p : gens[j].points) {
            total += p.shots_x;
        }
        if (total == 0) {
            throw std::invalid_argument("empty generation");
        }
        for (const auto &p : gens[j].points) {
            data.push_back({(double)p.k * t, p.zbar(), (double)p.shots_x / (double)total});
        }
        double half = kPi / (t * std::ldexp(1.0, (int)j));
        center = qcels_fit(data, center, half);
        e.per_generation_theta.push_back(center * t * std::ldexp(1.0, (int)j));
    }
    e.phi_hat = wrap_phase(center * t);
    e.lambda_hat = e.phi_hat / t;
    return e;
}

RunResult run_hadamard_protocol(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed) {
    if (!is_hadamard_family(plan.kind)) {
        throw std::invalid_argument("not a Hadamard-test plan");
    }
    if (std::abs(plan.t - problem.t) > 1e-12) {
        throw std::invalid_argument("plan and problem disagree on the time step");
    }
    QueryEngine engine(problem.query, 0, SlotNoise{plan.rate_per_t, std::max<int64_t>(plan.t_per_rotation, 1)});
    RunResult r;
    r.seed = seed;
    r.samples = sample_generations(plan.kind, engine, problem, plan.J, plan.ns_per_generation, plan.time_sigma, seed);
    for (const auto &g : r.samples) {
        r.noise_events += g.noise_events;
    }
    r.estimate = estimate_for(plan.kind, r.samples, problem.t);
    r.estimate.bias_bound = plan.gamma_assumed > rpe_gamma_threshold() ? bias_bound(plan.gamma_assumed) : 0;
    score(r, problem);
    return r;
}

uint64_t ipe_shot(const QueryEngine &engine, const PhaseProblem &problem, int J, Rng &rng, int64_t *events) {
    StateVector psi(3);
    for (size_t s = 0; s < 4; s++) {
        psi[s << 1] = problem.system[s];
    }
    std::vector<int> b(J + 2, 0);
    const std::vector<uint32_t> anc = {0};
    for (int k = J; k >= 1; k--) {
        apply_gate(psi, GateOp::single(GateKind::H, 0));
        int ev = engine.apply_noisy(psi, int64_t{1} << (k - 1), kLocal, rng);
        if (k < J) {
            double omega = 0;
            for (int l = k + 1; l <= J; l++) {
                omega -= 2 * kPi * b[l] / std::ldexp(1.0, l - k + 1);
            }
            apply_gate(psi, GateOp::rz(0, omega));
            ev += rotation_noise(psi, anc, engine.noise(), rng);
        }
        if (events) {
            *events += ev;
        }
        apply_gate(psi, GateOp::single(GateKind::H, 0));
        b[k] = measure_qubit(psi, 0, rng);
        if (b[k]) {
            apply_gate(psi, GateOp::single(GateKind::X, 0));
        }
    }
    uint64_t y = 0;
    for (int k = 1; k <= J; k++) {
        y |= (uint64_t)b[k] << (J - k);
    }
    return y;
}

RunResult ipe_run(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed) {
    if (plan.kind != ProtocolKind::IPE) {
        throw std::invalid_argument("ipe_run needs an IPE plan");
    }
    if (plan.J > 62) {
        throw std::invalid_argument("IPE register too wide");
    }
    QueryEngine engine(problem.query, 0, SlotNoise{plan.rate_per_t, std::max<int64_t>(plan.t_per_rotation, 1)});
    RunResult r;
    r.seed = seed;
    int64_t ns = plan.ns_per_generation.front();
    for (int64_t s = 0; s < ns; s++) {
        Rng rng = make_rng(seed, (uint64_t)s);
        r.outcomes[ipe_shot(engine, problem, plan.J, rng, &r.noise_events)]++;
    }
    double x = std::ldexp((double)mode_of(r.outcomes), -plan.J);
    r.estimate.kind = ProtocolKind::IPE;
    r.estimate.phi_hat = wrap_phase(-2 * kPi * x);
    r.estimate.lambda_hat = r.estimate.phi_hat / problem.t;
    score(r, problem);
    return r;
}

Circuit inverse_qft_circuit(size_t width, int m) {
    if (m < 1 || (size_t)m > width) {
        throw std::invalid_argument("inverse QFT register does not fit");
    }
    Circuit c(width);
    for (const auto &q : inverse_qft_ops(m)) {
        c.append(q.op);
    }
    return c;
}

uint64_t textbook_qpe_shot(const QueryEngine &engine, const PhaseProblem &problem, int m, Rng &rng, int64_t *events,
                           const QpeOptions &opt) {
    size_t width = (size_t)m + 2;
    if (m < 1 || width > qubit_cap()) {
        throw std::invalid_argument("textbook QPE register of " + std::to_string(m) + " ancillas exceeds the width cap");
    }
    StateVector psi(width);
    for (size_t s = 0; s < 4; s++) {
        psi[s << m] = problem.system[s];
    }
    for (int i = 0; i < m; i++) {
        apply_gate(psi, GateOp::single(GateKind::H, (uint32_t)i));
    }
    int64_t ev = 0;
    for (int i = 0; i < m; i++) {
        ev += engine.apply_noisy(psi, int64_t{1} << i, {(uint32_t)i, (uint32_t)m, (uint32_t)m + 1}, rng);
    }
    if (!opt.forced_register_pauli.empty()) {
        if ((int)opt.forced_register_pauli.size() != m) {
            throw std::invalid_argument("forced register Pauli must have one letter per ancilla");
        }
        std::vector<uint32_t> reg(m);
        for (int i = 0; i < m; i++) {
            reg[i] = (uint32_t)i;
        }
        apply_local_pauli(psi, opt.forced_register_pauli, reg);
    }
    for (const auto &q : inverse_qft_ops(m)) {
        apply_gate(psi, q.op);
        if (q.op.kind == GateKind::RZ) {
            ev += rotation_noise(psi, q.acted, engine.noise(), rng);
        }
    }
    if (events) {
        *events += ev;
    }
    uint64_t y = 0;
    for (int i = 0; i < m; i++) {
        y |= (uint64_t)measure_qubit(psi, (uint32_t)i, rng) << (m - 1 - i);
    }
    return y;
}

RunResult textbook_qpe_run(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed,
                           const QpeOptions &opt) {
    if (plan.kind != ProtocolKind::TextbookQPE) {
        throw std::invalid_argument("textbook_qpe_run needs a textbook QPE plan");
    }
    QueryEngine engine(problem.query, 0, SlotNoise{plan.rate_per_t, std::max<int64_t>(plan.t_per_rotation, 1)});
    RunResult r;
    r.seed = seed;
    int m = plan.register_bits;
    int64_t ns = plan.ns_per_generation.front();
    for (int64_t s = 0; s < ns; s++) {
        Rng rng = make_rng(seed, (uint64_t)s);
        r.outcomes[textbook_qpe_shot(engine, problem, m, rng, &r.noise_events, opt)]++;
    }
    double x = std::ldexp((double)mode_of(r.outcomes), -m);
    r.estimate.kind = ProtocolKind::TextbookQPE;
    r.estimate.phi_hat = wrap_phase(-2 * kPi * x);
    r.estimate.lambda_hat = r.estimate.phi_hat / problem.t;
    score(r, problem);
    return r;
}

RunResult run_protocol(const ProtocolPlan &plan, const PhaseProblem &problem, uint64_t seed) {
    switch (plan.kind) {
        case ProtocolKind::IPE:
            return ipe_run(plan, problem, seed);
        case ProtocolKind::TextbookQPE:
            return textbook_qpe_run(plan, problem, seed);
        default:
            return run_hadamard_protocol(plan, problem, seed);
    }
}

PhaseEstimate mmqcels_plan_and_estimate(double eps, double gamma, double ps, uint64_t seed, const PhaseProblem &problem,
                                        const PlannerConfig &cfg, double rate_per_t) {
    if (!(gamma >= 0.5)) {
        throw std::invalid_argument("MMQCELS needs gamma >= 0.5");
    }
    ProtocolPlan plan = plan_protocol(ProtocolKind::MMQCELS, eps, gamma, ps, rate_per_t, cfg);
    return run_hadamard_protocol(plan, problem, seed).estimate;
}

BiasResult empirical_bias(ProtocolKind kind, const PhaseProblem &problem, int J, const std::vector<int64_t> &ns_schedule,
                          const std::vector<uint64_t> &seeds, double rate_per_t, int64_t t_per_rotation) {
    if (!is_hadamard_family(kind)) {
        throw std::invalid_argument("empirical bias is defined for the Hadamard-test protocols");
    }
    if (ns_schedule.empty() || seeds.empty() || J < 1) {
        throw std::invalid_argument("empirical bias needs J >= 1, a schedule and seeds");
    }
    for (size_t i = 1; i < ns_schedule.size(); i++) {
        if (ns_schedule[i] <= ns_schedule[i - 1]) {
            throw std::invalid_argument("N_s schedule must be increasing");
        }
    }
    QueryEngine engine(problem.query, 0, SlotNoise{rate_per_t, t_per_rotation});
    std::vector<double> sigma;
    for (int j = 1; j <= J; j++) {
        sigma.push_back(0.5 * std::ldexp(problem.t, j - 1));
    }
    double kJ = std::ldexp(1.0, J - 1);
    BiasResult out;
    out.ns_schedule = ns_schedule;
    for (size_t i = 0; i < ns_schedule.size(); i++) {
        double sum = 0;
        for (uint64_t seed : seeds) {
            std::vector<int64_t> ns(J, ns_schedule[i]);
            auto gens = sample_generations(kind, engine, problem, J, ns, sigma, splitmix64(seed) ^ (uint64_t)i);
            PhaseEstimate e = estimate_for(kind, gens, problem.t);
            sum += kJ * std::abs(wrap_phase(e.phi_hat - problem.reference_phase));
        }
        out.mean_error.push_back(sum / (double)seeds.size());
    }
    out.sampling_floor = 3 / std::sqrt((double)ns_schedule.back());
    if (out.mean_error.size() >= 3) {
        auto last = out.mean_error.end() - 3;
        double lo = *std::min_element(last, out.mean_error.end());
        double hi = *std::max_element(last, out.mean_error.end());
        if (hi > 0 && (hi - lo) <= 0.1 * hi) {
            out.plateau_found = true;
            out.plateau = (last[0] + last[1] + last[2]) / 3;
        }
    }
    return out;
}

double exact_expectation_bias(ProtocolKind kind, const PhaseProblem &problem, int J) {
    std::vector<std::complex<double>> z;
    for (int j = 1; j <= J; j++) {
        z.push_back(exact_signal(problem, int64_t{1} << (j - 1)));
    }
    PhaseEstimate e;
    if (kind == ProtocolKind::RPE) {
        e = rpe_estimate_signals(z, problem.t);
    } else {
        std::vector<FitPoint> data = {{0, 1, 1}};
        double center = 0;
        for (int j = 1; j <= J; j++) {
            data.push_back({std::ldexp(problem.t, j - 1), z[j - 1], 1});
            center = qcels_fit(data, center, kPi / std::ldexp(problem.t, j - 1));
        }
        e.phi_hat = wrap_phase(center * problem.t);
    }
    return std::ldexp(1.0, J - 1) * std::abs(wrap_phase(e.phi_hat - problem.reference_phase));
}

}  // namespace eftqpe
