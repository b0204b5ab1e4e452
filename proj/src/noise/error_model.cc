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

#include "eftqpe/noise/error_model.h"

#include <cmath>
#include <stdexcept>

namespace eftqpe {

void NoiseParams::check() const {
    if (!(p > 0 && p < 0.01)) {
        throw std::invalid_argument("physical error rate must lie in (0, 0.01); the logical-rate formula needs p below threshold");
    }
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be an odd integer >= 3");
    }
    if (n_l < 1) {
        throw std::invalid_argument("logical qubit count must be >= 1");
    }
    if (!(b >= 0) || !(t_rate > 0)) {
        throw std::invalid_argument("factory infidelity must be >= 0 and t_rate > 0");
    }
}

double logical_error_rate(double p, int d, int64_t n_l) {
    NoiseParams params;
    params.p = p;
    params.d = d;
    params.n_l = n_l;
    params.check();
    return 0.1 * (double)n_l * std::pow(100 * p, 0.5 * (d + 1));
}

double rate_per_t(const NoiseParams &params) {
    params.check();
    return params.b + params.t_rate * params.d * logical_error_rate(params.p, params.d, params.n_l);
}

AggregateRate aggregate_rate(double t_j, const NoiseParams &params) {
    if (!(t_j >= 0)) {
        throw std::invalid_argument("T count must be nonnegative");
    }
    return {t_j * rate_per_t(params), t_j};
}

double per_t_gate_rate(double a_j, double t_j) {
    if (!(t_j >= 1)) {
        throw std::invalid_argument("per-gate rate needs at least one T gate");
    }
    if (!(a_j >= 0)) {
        throw std::invalid_argument("aggregate rate must be nonnegative");
    }
    return a_j / t_j;
}

}  // namespace eftqpe
