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

#include "eftqpe/protocols/bounds.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eftqpe {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ps(double ps) {
    if (!(ps > 0.5 && ps < 1)) {
        throw std::invalid_argument("target success probability must lie in (0.5, 1)");
    }
}

double log_union(int J) {
    return J > 2 ? std::log((double)(J - 1)) : 0.0;
}

}  // namespace

double rpe_gamma_threshold() {
    return 2 / (2 + std::sqrt(3.0));
}

double bias_bound(double gamma) {
    if (!(gamma > rpe_gamma_threshold() && gamma <= 1)) {
        throw std::invalid_argument("bias bound needs 0.536 < gamma <= 1");
    }
    double s = std::asin((1 - gamma) * (1 - gamma) / (std::sqrt(2.0) * gamma));
    double r = (1 - gamma) / gamma;
    double v = std::atan2(std::sin(s - kPi / 4) + r, std::cos(s - kPi / 4) + r) - s + kPi / 4;
    return std::max(0.0, v);
}

double worst_case_overlap_bias(double gamma) {
    if (!(gamma > 0.5 && gamma <= 1)) {
        throw std::invalid_argument("worst-case bias needs gamma > 1/2");
    }
    return std::asin((1 - gamma) / gamma);
}

int64_t hoeffding_samples_noiseless(double ps, int J) {
    check_ps(ps);
    if (J < 1) {
        throw std::invalid_argument("J must be >= 1");
    }
    return (int64_t)std::ceil(16.0 / 3.0 * (std::log(4 / (1 - ps)) + log_union(J)) - 1e-12);
}

int64_t hoeffding_samples(double gamma, double a, double ps, int J) {
    check_ps(ps);
    if (J < 1) {
        throw std::invalid_argument("J must be >= 1");
    }
    double den = std::sqrt(3.0) / 2 * gamma - (1 - gamma);
    if (!(den > 0)) {
        throw std::invalid_argument("Hoeffding bound needs gamma > 0.536");
    }
    double v = 4 * std::exp(2 * a) / den * (std::log(4 / (1 - ps)) + log_union(J));
    if (!std::isfinite(v) || v > 9e18) {
        throw std::overflow_error("sample count overflows");
    }
    return (int64_t)std::ceil(v - 1e-12);
}

double rpe_error(double t, int J, double a_J, int64_t ns, double gamma) {
    double eta = gamma >= 1 ? 0.0 : bias_bound(gamma);
    return std::sqrt(std::exp(2 * a_J) / (double)ns + eta * eta) / (t * std::ldexp(1.0, J - 1));
}

double ipe_success_bound(double gamma, const std::vector<double> &a_list, int J) {
    if ((int)a_list.size() != J) {
        throw std::invalid_argument("a_list must hold one rate per iterate");
    }
    double p = gamma;
    for (int j = 2; j <= J; j++) {
        p *= 0.5 * (1 + std::exp(-a_list[j - 1]) * std::cos(kPi / std::ldexp(1.0, j)));
    }
    return p;
}

double majority_vote_bound(double p, int64_t ns) {
    if (!(p > 0.5 && p <= 1)) {
        throw std::invalid_argument("majority voting needs single-shot success above 1/2");
    }
    if (ns < 1) {
        throw std::invalid_argument("ns must be >= 1");
    }
    if (p == 1) {
        return 1;
    }
    double total = 0;
    double lp = std::log(p), lq = std::log1p(-p);
    // Terms more than 40 standard deviations from the mean are below e^-800.
    double mean = (double)ns * p, spread = 40 * std::sqrt((double)ns * p * (1 - p)) + 1;
    int64_t lo = std::max((ns + 1) / 2, (int64_t)std::floor(mean - spread));
    int64_t hi = std::min(ns, (int64_t)std::ceil(mean + spread));
    for (int64_t k = lo; k <= hi; k++) {
        double lc = std::lgamma((double)ns + 1) - std::lgamma((double)k + 1) - std::lgamma((double)(ns - k) + 1);
        total += std::exp(lc + k * lp + (ns - k) * lq);
    }
    return std::min(1.0, total);
}

int64_t majority_samples(double p_single, double ps) {
    check_ps(ps);
    // The vote success grows with odd n: double to bracket, then bisect over odd counts.
    const int64_t cap = 10000001;
    int64_t hi = 1;
    while (majority_vote_bound(p_single, hi) < ps) {
        if (hi == cap) {
            throw std::overflow_error("majority vote needs more than 1e7 shots");
        }
        hi = std::min(cap, 2 * hi + 1);
    }
    int64_t lo = hi / 2;  // odd, fails (or zero when hi = 1)
    while (hi - lo > 2) {
        int64_t mid = lo + ((hi - lo) / 2 | 1) - 1;
        mid += (mid % 2 == 0);
        if (majority_vote_bound(p_single, mid) >= ps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double qpe_single_shot_success(double gamma, int extra_bits) {
    if (extra_bits >= 2) {
        return gamma * (1 - 1 / (2 * (std::ldexp(1.0, extra_bits) - 2)));
    }
    return gamma * 8 / (kPi * kPi);
}

}  // namespace eftqpe
