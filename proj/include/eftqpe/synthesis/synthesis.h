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

#ifndef EFTQPE_SYNTHESIS_SYNTHESIS_H
#define EFTQPE_SYNTHESIS_SYNTHESIS_H

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace eftqpe {

struct SynthesizedSequence {
    std::string gates;
    double target_angle = 0;
    double requested_error = 0;
    double achieved_error = 0;
    int64_t t_count = 0;
};

/// T(eps) = ceil(coeff_a log2(1/eps) + offset_b). In external mode the coefficients come
/// from a fit to ingested sequences.
struct SynthesisModel {
    enum class Mode { Analytic, External };
    double coeff_a = 3;
    double offset_b = 10;
    Mode mode = Mode::Analytic;

    int64_t tcount(double eps) const;
    void check() const;
};

int64_t tcount_model(double eps, double coeff_a = 3, double offset_b = 10);

double allocate_budget(double total_error, int64_t n_rotations);

/// Multiplies the gate string (written as a matrix product, so the rightmost gate acts
/// first) and checks it against RZ(target_angle) up to global phase.
SynthesizedSequence ingest_external_sequence(const std::string &gates, double target_angle, double eps);

/// One sequence per line: `<angle_radians> <eps> <gate-string>`; '#' starts a comment.
std::vector<SynthesizedSequence> read_sequence_file(const std::string &path);

/// Least-squares fit of (coeff_a, offset_b) to t_count versus log2(1/eps).
SynthesisModel calibrate_model(const std::vector<SynthesizedSequence> &seqs);

Eigen::Matrix2cd sequence_matrix(const std::string &gates);
Eigen::Matrix2cd rz_matrix(double angle);

}  // namespace eftqpe

#endif
