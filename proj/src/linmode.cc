// Copyright 2026 The cvtele Authors
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

#include "cvtele/linmode.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cvtele {

namespace {

void require_positive_input_variance(double v_in) {
    if (!(v_in > 0) || !std::isfinite(v_in)) {
        throw std::invalid_argument("input variance must be positive and finite, got " + std::to_string(v_in));
    }
}

}  // namespace

QuadratureMap::QuadratureMap(double gain, std::vector<NoiseTerm> noise) : gain_(gain), noise_(std::move(noise)) {
    if (!std::isfinite(gain_)) {
        throw std::invalid_argument("quadrature gain must be finite");
    }
    for (const auto &term : noise_) {
        if (!std::isfinite(term.coefficient)) {
            throw std::invalid_argument("noise coefficient must be finite (mode " + std::to_string(term.id.value) + ")");
        }
        if (!(term.variance > 0) || !std::isfinite(term.variance)) {
            throw std::invalid_argument(
                "noise variance must be positive and finite (mode " + std::to_string(term.id.value) + ")");
        }
    }
    std::sort(noise_.begin(), noise_.end(), [](const NoiseTerm &a, const NoiseTerm &b) { return a.id < b.id; });
    auto dup = std::adjacent_find(
        noise_.begin(), noise_.end(), [](const NoiseTerm &a, const NoiseTerm &b) { return a.id == b.id; });
    if (dup != noise_.end()) {
        throw std::invalid_argument("duplicate noise mode id " + std::to_string(dup->id.value) + " in quadrature map");
    }
}

InputState::InputState(double v_plus, double v_minus, double s_plus, double s_minus)
    : v_plus_(v_plus), v_minus_(v_minus), s_plus_(s_plus), s_minus_(s_minus) {
    if (!(v_plus > 0) || !std::isfinite(v_plus) || !(v_minus > 0) || !std::isfinite(v_minus)) {
        throw std::invalid_argument("input quadrature variances must be positive and finite");
    }
    if (!std::isfinite(s_plus) || !std::isfinite(s_minus)) {
        throw std::invalid_argument("test-signal amplitudes must be finite");
    }
}

bool InputState::minimum_uncertainty() const {
    return std::abs(v_plus_ * v_minus_ - 1) <= MINIMUM_UNCERTAINTY_TOLERANCE;
}

double added_noise_variance(const QuadratureMap &map) {
    double total = 0;
    for (const auto &term : map.noise()) {
        total += term.coefficient * term.coefficient * term.variance;
    }
    return total;
}

double output_variance(const QuadratureMap &map, double v_in) {
    require_positive_input_variance(v_in);
    return map.gain() * map.gain() * v_in + added_noise_variance(map);
}

double in_out_covariance(const QuadratureMap &map, double v_in) {
    require_positive_input_variance(v_in);
    return map.gain() * v_in;
}

}  // namespace cvtele
