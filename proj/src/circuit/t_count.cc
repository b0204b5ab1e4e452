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

#include "eftqpe/circuit/t_count.h"

namespace eftqpe {

TCount count_t_gates(const Circuit &c, const SynthesisModel &synth, double eps_per_rotation) {
    TCount out;
    int64_t rotation_cost = -1;
    for (const auto &g : c.ops) {
        int64_t cost = 0;
        if (g.kind == GateKind::T || g.kind == GateKind::Tdag) {
            cost = 1;
        } else if (g.is_non_clifford()) {
            if (rotation_cost < 0) {
                rotation_cost = synth.tcount(eps_per_rotation);
            }
            cost = rotation_cost;
        }
        out.per_op.push_back(cost);
        out.t_total += cost;
    }
    return out;
}

}  // namespace eftqpe
