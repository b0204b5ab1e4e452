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

#include "eftqpe/synthesis/synthesis.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eftqpe {

namespace {

using cplx = std::complex<double>;

double phase_free_distance(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1, 0);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(a - phase * b);
    return svd.singularValues()(0);
}

}  // namespace

int64_t tcount_model(double eps, double coeff_a, double offset_b) {
    if (!(eps > 0 && eps < 1)) {
        throw std::invalid_argument("synthesis error must lie in (0,1)");
    }
    return (int64_t)std::ceil(coeff_a * std::log2(1 / eps) + offset_b - 1e-12);
}

void SynthesisModel::check() const {
    if (!(coeff_a > 0) || !std::isfinite(offset_b)) {
        throw std::invalid_argument("synthesis model needs coeff_a > 0");
    }
}

int64_t SynthesisModel::tcount(double eps) const {
    return tcount_model(eps, coeff_a, offset_b);
}

double allocate_budget(double total_error, int64_t n_rotations) {
    if (n_rotations < 1) {
        throw std::invalid_argument("budget allocation needs at least one rotation");
    }
    if (!(total_error > 0)) {
        throw std::invalid_argument("total synthesis error must be positive");
    }
    return total_error / (double)n_rotations;
}

Eigen::Matrix2cd rz_matrix(double angle) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -angle / 2);
    m(1, 1) = std::polar(1.0, angle / 2);
    return m;
}

Eigen::Matrix2cd sequence_matrix(const std::string &gates) {
    const double r = std::sqrt(0.5);
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (char ch : gates) {
        Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
        switch (ch) {
            case 'H':
                g << r, r, r, -r;
                break;
            case 'S':
                g(0, 0) = 1;
                g(1, 1) = cplx(0, 1);
                break;
            case 'T':
                g(0, 0) = 1;
                g(1, 1) = std::polar(1.0, std::numbers::pi / 4);
                break;
            case 'X':
                g << 0, 1, 1, 0;
                break;
            case 'W':
                g = Eigen::Matrix2cd::Identity() * std::polar(1.0, std::numbers::pi / 4);
                break;
            default:
                throw std::invalid_argument(std::string("gate '") + ch + "' is outside the alphabet {H,S,T,X,W}");
        }
        u = u * g;
    }
    return u;
}

SynthesizedSequence ingest_external_sequence(const std::string &gates, double target_angle, double eps) {
    SynthesizedSequence s;
    s.gates = gates;
    s.target_angle = target_angle;
    s.requested_error = eps;
    s.achieved_error = phase_free_distance(sequence_matrix(gates), rz_matrix(target_angle));
    for (char ch : gates) {
        s.t_count += ch == 'T';
    }
    if (s.achieved_error > eps) {
        std::ostringstream msg;
        msg << "sequence misses RZ(" << target_angle << "): achieved distance " << s.achieved_error
            << " > requested " << eps;
        throw std::runtime_error(msg.str());
    }
    return s;
}

std::vector<SynthesizedSequence> read_sequence_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sequence file " + path);
    }
    std::vector<SynthesizedSequence> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        double angle, eps;
        std::string gates;
        if (!(ls >> angle)) {
            continue;
        }
        if (!(ls >> eps >> gates)) {
            throw std::runtime_error("malformed sequence line: " + line);
        }
        out.push_back(ingest_external_sequence(gates, angle, eps));
    }
    return out;
}

SynthesisModel calibrate_model(const std::vector<SynthesizedSequence> &seqs) {
    if (seqs.size() < 2) {
        throw std::invalid_argument("calibration needs at least two sequences");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &s : seqs) {
        double x = std::log2(1 / s.requested_error);
        double y = (double)s.t_count;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = (double)seqs.size();
    double den = n * sxx - sx * sx;
    if (std::abs(den) < 1e-12) {
        throw std::invalid_argument("calibration needs at least two distinct error targets");
    }
    SynthesisModel m;
    m.coeff_a = (n * sxy - sx * sy) / den;
    m.offset_b = (sy - m.coeff_a * sx) / n;
    m.mode = SynthesisModel::Mode::External;
    m.check();
    return m;
}

}  // namespace eftqpe
