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

#include "cvtele/teleporter.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvtele {

namespace {

// Plus-quadrature modes use ids 1 and 2, minus-quadrature modes 3 and 4.
constexpr ModeId PLUS_A{1};
constexpr ModeId PLUS_B{2};
constexpr ModeId MINUS_A{3};
constexpr ModeId MINUS_B{4};

void require_unit_interval(double value, const char *name) {
    if (!(value > 0 && value <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1], got " + std::to_string(value));
    }
}

void require_finite_gain(double lambda) {
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("gain must be finite");
    }
}

/// Both quadratures get c_a * (mode of variance var_a) + c_b * (mode of variance var_b).
Teleporter two_mode_symmetric(
    Family family, double lambda, std::optional<double> resource, double c_a, double var_a, double c_b, double var_b) {
    QuadratureMap plus(lambda, {{PLUS_A, c_a, var_a}, {PLUS_B, c_b, var_b}});
    QuadratureMap minus(lambda, {{MINUS_A, c_a, var_a}, {MINUS_B, c_b, var_b}});
    return Teleporter{std::move(plus), std::move(minus), family, lambda, resource};
}

}  // namespace

std::string_view family_name(Family family) {
    switch (family) {
        case Family::Classical:
            return "classical";
        case Family::Epr:
            return "epr";
        case Family::SingleMode:
            return "single_mode";
        case Family::Custom:
            return "custom";
    }
    return "unknown";
}

Teleporter make_epr(double lambda, double v_ent) {
    require_finite_gain(lambda);
    require_unit_interval(v_ent, "v_ent");
    return two_mode_symmetric(Family::Epr, lambda, v_ent, 1 + lambda, v_ent / 2, 1 - lambda, (1 / v_ent) / 2);
}

Teleporter make_single_mode(double lambda, double v_s) {
    require_finite_gain(lambda);
    require_unit_interval(v_s, "v_s");
    return two_mode_symmetric(
        Family::SingleMode, lambda, v_s, 1 + lambda, (1 + v_s) / 4, 1 - lambda, (1 + 1 / v_s) / 4);
}

Teleporter make_classical_measure_resend(double lambda) {
    require_finite_gain(lambda);
    return two_mode_symmetric(Family::Classical, lambda, std::nullopt, lambda, 1, 1, 1);
}

Teleporter make_custom(QuadratureMap plus, QuadratureMap minus) {
    for (const auto &a : plus.noise()) {
        for (const auto &b : minus.noise()) {
            if (a.id == b.id) {
                throw std::invalid_argument(
                    "mode id " + std::to_string(a.id.value) + " feeds both quadratures; cross-coupling is not modelled");
            }
        }
    }
    return Teleporter{std::move(plus), std::move(minus), Family::Custom, std::nullopt, std::nullopt};
}

}  // namespace cvtele
