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

#ifndef EFTQPE_PROTOCOLS_BOUNDS_H
#define EFTQPE_PROTOCOLS_BOUNDS_H

#include <cstdint>
#include <vector>

namespace eftqpe {

/// Overlap below which the Hoeffding denominator (sqrt(3)/2) gamma - (1 - gamma) vanishes,
/// 2 / (2 + sqrt(3)) ~ 0.536.
double rpe_gamma_threshold();

/// Brute-force bias bound on one generation's phase, in radians of that generation.
double bias_bound(double gamma);

/// Worst case of |arg(gamma + (1 - gamma) e^{i delta})| over delta, for comparison.
double worst_case_overlap_bias(double gamma);

/// ceil(16/3 (ln(4/(1-ps)) + ln(J-1))); ln(J-1) is dropped for J <= 2.
int64_t hoeffding_samples_noiseless(double ps, int J);

/// ceil(4 e^{2a} / ((sqrt(3)/2) gamma - (1 - gamma)) (ln(4/(1-ps)) + ln(J-1))).
int64_t hoeffding_samples(double gamma, double a, double ps, int J);

/// (1 / (t 2^{J-1})) sqrt(e^{2 a_J} / ns + eta^2(gamma)).
double rpe_error(double t, int J, double a_J, int64_t ns, double gamma);

/// gamma prod_{j=2}^{J} (1 + e^{-a_j} cos(pi / 2^j)) / 2 with a_list[j-1] = a_j.
double ipe_success_bound(double gamma, const std::vector<double> &a_list, int J);

/// Probability that a strict majority of ns shots succeeds.
double majority_vote_bound(double p_single, int64_t ns);

/// Smallest odd ns whose majority vote reaches ps.
int64_t majority_samples(double p_single, double ps);

/// Single-shot success of textbook QPE with `extra_bits` beyond the target precision.
double qpe_single_shot_success(double gamma, int extra_bits);

}  // namespace eftqpe

#endif
