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

#ifndef EFTQPE_CIRCUIT_T_COUNT_H
#define EFTQPE_CIRCUIT_T_COUNT_H

#include <cstdint>
#include <vector>

#include "eftqpe/circuit/circuit.h"
#include "eftqpe/synthesis/synthesis.h"

namespace eftqpe {

struct TCount {
    int64_t t_total = 0;
    /// T gates charged to each op, aligned with Circuit::ops.
    std::vector<int64_t> per_op;
};

/// T and Tdag cost 1; every non-Clifford RZ or PauliRot costs one synthesized rotation at
/// `eps_per_rotation`; Clifford-angle rotations are free.
TCount count_t_gates(const Circuit &c, const SynthesisModel &synth, double eps_per_rotation);

}  // namespace eftqpe

#endif
