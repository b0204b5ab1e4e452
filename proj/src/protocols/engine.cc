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

#include "eftqpe/protocols/engine.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eftqpe {

void apply_matrix(StateVector &psi, const Eigen::MatrixXcd &m, const std::vector<uint32_t> &targets) {
    size_t w = targets.size();
    size_t dl = size_t{1} << w;
    if ((size_t)m.rows() != dl || (size_t)m.cols() != dl) {
        throw std::invalid_argument("matrix size does not match the target count");
    }
    size_t mask = 0;
    for (auto q : targets) {
        if (q >= psi.n_qubits()) {
            throw std::out_of_range("matrix target out of range");
        }
        mask |= size_t{1} << q;
    }
    std::vector<size_t> offset(dl, 0);
    for (size_t l = 0; l < dl; l++) {
        for (size_t i = 0; i < w; i++) {
            if ((l >> i) & 1) {
                offset[l] |= size_t{1} << targets[i];
            }
        }
    }
    Eigen::VectorXcd in(dl), out(dl);
    auto &amp = psi.amplitudes();
    for (size_t base = 0; base < amp.size(); base++) {
        if (base & mask) {
            continue;
        }
        for (size_t l = 0; l < dl; l++) {
            in[l] = amp[base | offset[l]];
        }
        out.noalias() = m * in;
        for (size_t l = 0; l < dl; l++) {
            amp[base | offset[l]] = out[l];
        }
    }
}

std::string random_local_pauli(size_t k, Rng &rng) {
    std::vector<uint32_t> qs(k);
    for (size_t i = 0; i < k; i++) {
        qs[i] = (uint32_t)i;
    }
    return random_pauli(k, qs, rng);
}

void apply_local_pauli(StateVector &psi, const std::string &letters, const std::vector<uint32_t> &targets) {
    for (size_t i = 0; i < letters.size(); i++) {
        GateKind kind;
        switch (letters[i]) {
            case 'X':
                kind = GateKind::X;
                break;
            case 'Y':
                kind = GateKind::Y;
                break;
            case 'Z':
                kind = GateKind::Z;
                break;
            default:
                continue;
        }
        apply_gate(psi, GateOp::single(kind, targets[i]));
    }
}

std::vector<int64_t> sample_event_positions(int64_t n, double q, Rng &rng, bool at_least_one) {
    std::vector<int64_t> out;
    if (n <= 0 || q <= 0) {
        if (at_least_one) {
            throw std::invalid_argument("cannot condition on an event with zero event probability");
        }
        return out;
    }
    std::uniform_real_distribution<double> u(0, 1);
    double lq = std::log1p(-q);
    int64_t pos;
    if (at_least_one) {
        // Inverse CDF of the geometric law truncated to [0, n).
        double tail = -std::expm1((double)n * lq);
        double x = std::floor(std::log1p(-u(rng) * tail) / lq);
        pos = std::min<int64_t>((int64_t)x, n - 1);
    } else {
        double x = std::floor(std::log1p(-u(rng)) / lq);
        if (!(x < (double)n)) {
            return out;
        }
        pos = (int64_t)x;
    }
    while (pos < n) {
        out.push_back(pos);
        double x = std::floor(std::log1p(-u(rng)) / lq);
        if (!(x < (double)(n - pos))) {
            break;
        }
        pos += 1 + (int64_t)x;
    }
    return out;
}

QueryEngine::QueryEngine(const Circuit &query, uint32_t control, SlotNoise noise)
    : width_(query.n_qubits), control_(control), noise_(noise) {
    if (width_ > 8) {
        throw std::invalid_argument("query engine supports at most 8 local qubits");
    }
    if (control >= width_) {
        throw std::out_of_range("control qubit outside the query");
    }
    if (!(noise.rate_per_t >= 0 && noise.rate_per_t < 1) || noise.t_per_rotation < 1) {
        throw std::invalid_argument("slot noise needs rate in [0,1) and t_per_rotation >= 1");
    }
    CompiledCircuit cc = commute_cliffords(query);
    if (!cc.final_measurements.empty() && query.n_classical_bits > 0) {
        throw std::invalid_argument("query circuits must be measurement free");
    }
    for (const auto &r : cc.rotations) {
        Circuit one(width_);
        one.append(GateOp::pauli_rot(r.pauli, 2 * r.angle));
        segments_.push_back(circuit_unitary(one));
        std::vector<uint32_t> act;
        for (uint32_t q = 0; q < width_; q++) {
            if (r.pauli[q] != 'I' || q == control) {
                act.push_back(q);
            }
        }
        acted_.push_back(act);
        slot_prob_.push_back(noise.rate_per_t * (1 - std::pow(4.0, -(double)act.size())));
        max_prob_ = std::max(max_prob_, slot_prob_.back());
    }
    Circuit tail(width_);
    for (const auto &g : cc.clifford_tail) {
        tail.append(g);
    }
    segments_.push_back(circuit_unitary(tail));
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity((Eigen::Index)1 << width_, (Eigen::Index)1 << width_);
    for (const auto &s : segments_) {
        w = s * w;
    }
    powers_.push_back(w);
}

int64_t QueryEngine::t_gates(int64_t k) const {
    return k * (int64_t)slots() * noise_.t_per_rotation;
}

double QueryEngine::clean_probability(int64_t k) const {
    double log_p = 0;
    for (double q : slot_prob_) {
        log_p += std::log1p(-q) * (double)noise_.t_per_rotation;
    }
    return std::exp(log_p * (double)k);
}

const Eigen::MatrixXcd &QueryEngine::pow2_matrix(int e) const {
    while ((int)powers_.size() <= e) {
        const auto &last = powers_.back();
        powers_.push_back(last * last);
    }
    return powers_[e];
}

void QueryEngine::apply_power(StateVector &psi, int64_t k, const std::vector<uint32_t> &targets) const {
    if (k < 0) {
        throw std::invalid_argument("query power must be nonnegative");
    }
    for (int e = 0; k; e++, k >>= 1) {
        if (k & 1) {
            apply_matrix(psi, pow2_matrix(e), targets);
        }
    }
}

void QueryEngine::apply_pauli_error(StateVector &psi, size_t slot, const std::vector<uint32_t> &targets,
                                   Rng &rng) const {
    const auto &act = acted_[slot];
    std::string letters = random_local_pauli(act.size(), rng);
    std::vector<uint32_t> global;
    for (auto q : act) {
        global.push_back(targets[q]);
    }
    apply_local_pauli(psi, letters, global);
}

int QueryEngine::apply_noisy(StateVector &psi, int64_t k, const std::vector<uint32_t> &targets, Rng &rng,
                             bool at_least_one) const {
    if (targets.size() != width_) {
        throw std::invalid_argument("target list must match the query width");
    }
    if (noise_.noiseless() || slots() == 0 || k == 0) {
        if (at_least_one) {
            throw std::invalid_argument("cannot condition on an event without noise");
        }
        apply_power(psi, k, targets);
        return 0;
    }
    const int64_t per_query = (int64_t)slots() * noise_.t_per_rotation;
    std::uniform_real_distribution<double> u(0, 1);
    struct Event {
        int64_t query;
        size_t slot;
    };
    std::vector<Event> events;
    // Candidates at the largest slot rate, thinned per slot; conditioning redraws until one survives.
    do {
        events.clear();
        for (int64_t pos : sample_event_positions(k * per_query, max_prob_, rng, at_least_one)) {
            size_t slot = (size_t)((pos % per_query) / noise_.t_per_rotation);
            if (slot_prob_[slot] >= max_prob_ || u(rng) * max_prob_ < slot_prob_[slot]) {
                events.push_back({pos / per_query, slot});
            }
        }
    } while (at_least_one && events.empty());

    int64_t done = 0;  // whole queries applied
    size_t next = 0;   // next segment inside the current partial query
    auto finish_query = [&]() {
        for (; next < segments_.size(); next++) {
            apply_matrix(psi, segments_[next], targets);
        }
        next = 0;
        done++;
    };
    for (const auto &ev : events) {
        if (next > 0 && ev.query != done) {
            finish_query();
        }
        apply_power(psi, ev.query - done, targets);
        done = ev.query;
        for (; next <= ev.slot; next++) {
            apply_matrix(psi, segments_[next], targets);
        }
        apply_pauli_error(psi, ev.slot, targets, rng);
    }
    if (next > 0) {
        finish_query();
    }
    apply_power(psi, k - done, targets);
    return (int)events.size();
}

}  // namespace eftqpe
