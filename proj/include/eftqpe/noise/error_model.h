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

#ifndef EFTQPE_NOISE_ERROR_MODEL_H
#define EFTQPE_NOISE_ERROR_MODEL_H

#include <cstdint>

namespace eftqpe {

struct NoiseParams {
    double p = 1e-3;
    int d = 3;
    int64_t n_l = 1;
    double b = 0;
    /// Code cycles per T gate in units of d.
    double t_rate = 9;

    void check() const;
};

struct AggregateRate {
    double a_j = 0;
    double t_j = 0;
};

/// 0.1 n_l (100 p)^{(d+1)/2} per code cycle.
double logical_error_rate(double p, int d, int64_t n_l);

/// Depolarization contributed by one T gate: b + t_rate n_l d 0.1 (100p)^{(d+1)/2}.
double rate_per_t(const NoiseParams &params);

AggregateRate aggregate_rate(double t_j, const NoiseParams &params);

double per_t_gate_rate(double a_j, double t_j);

}  // namespace eftqpe

#endif
