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

#include "cvtele/criteria.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvtele {

namespace {

constexpr double IDENTITY_TOLERANCE = 1e-12;

void check_identity(double a, double b, double scale, const char *what) {
    if (std::abs(a - b) > IDENTITY_TOLERANCE * std::max(1.0, std::abs(scale))) {
        throw std::logic_error(what);
    }
}

void require_defined_output(const QuadratureMap &map) {
    if (map.gain() == 0 && added_noise_variance(map) == 0) {
        throw std::domain_error("quadrature output carries neither signal nor noise; signal transfer is undefined");
    }
}

double signed_sqrt(double sign_source, double value) {
    return std::copysign(std::sqrt(value), sign_source);
}

}  // namespace

std::string_view region_name(Region region) {
    switch (region) {
        case Region::Classical:
            return "classical";
        case Region::Intermediate:
            return "intermediate";
        case Region::Strong:
            return "strong";
    }
    return "unknown";
}

Region region_of(double v_cvf) {
    if (v_cvf < 1) {
        return Region::Strong;
    }
    if (v_cvf < 2) {
        return Region::Intermediate;
    }
    return Region::Classical;
}

double signal_transfer(const QuadratureMap &map, double v_in) {
    require_defined_output(map);
    double signal = map.gain() * map.gain() * v_in;
    return signal / output_variance(map, v_in);
}

double correlation(const QuadratureMap &map, double v_in) {
    require_defined_output(map);
    double cov = in_out_covariance(map, v_in);
    return cov * cov / (v_in * output_variance(map, v_in));
}

double conditional_variance(const QuadratureMap &map, double v_in) {
    double v_out = output_variance(map, v_in);
    double v_cv = v_out * (1 - correlation(map, v_in));
    check_identity(v_cv, added_noise_variance(map), v_out, "conditional variance disagrees with added noise");
    return v_cv;
}

double t_total(const Teleporter &t, const InputState &in) {
    return signal_transfer(t.plus, in.v_plus()) + signal_transfer(t.minus, in.v_minus());
}

double v_total(const Teleporter &t, const InputState &in) {
    return 0.5 * (conditional_variance(t.plus, in.v_plus()) + conditional_variance(t.minus, in.v_minus()));
}

double field_correlation(const Teleporter &t, const InputState &in) {
    double cov = in_out_covariance(t.plus, in.v_plus()) + in_out_covariance(t.minus, in.v_minus());
    double v_in = in.v_plus() + in.v_minus();
    double v_out = output_variance(t.plus, in.v_plus()) + output_variance(t.minus, in.v_minus());
    if (v_out == 0) {
        throw std::domain_error("output field is identically zero; field correlation is undefined");
    }
    return cov * cov / (v_in * v_out);
}

double field_conditional_variance(const Teleporter &t, const InputState &in) {
    double v_out_plus = output_variance(t.plus, in.v_plus());
    double v_out_minus = output_variance(t.minus, in.v_minus());
    double v_out = v_out_plus + v_out_minus;
    double v_in = in.v_plus() + in.v_minus();
    double cov = in_out_covariance(t.plus, in.v_plus()) + in_out_covariance(t.minus, in.v_minus());
    double v_cvf = 0.5 * (v_out - cov * cov / v_in);

    double from_field = 0.5 * v_out * (1 - field_correlation(t, in));
    check_identity(v_cvf, from_field, v_out, "field conditional variance disagrees with the field correlation form");

    // Route through the signal transfers. A quadrature with zero gain contributes no
    // correlated term, which also covers the case where its T_s is undefined.
    auto root = [](const QuadratureMap &map, double v_in_q, double v_out_q) {
        if (map.gain() == 0) {
            return 0.0;
        }
        return signed_sqrt(map.gain(), signal_transfer(map, v_in_q) * v_out_q * v_in_q);
    };
    double r = root(t.plus, in.v_plus(), v_out_plus) + root(t.minus, in.v_minus(), v_out_minus);
    double from_transfer = 0.5 * (v_out - r * r / v_in);
    check_identity(v_cvf, from_transfer, v_out, "field conditional variance disagrees with the signal-transfer form");
    return v_cvf;
}

ClassicalBound classical_bound_check(const Teleporter &t) {
    double g_plus = t.plus.gain();
    double g_minus = t.minus.gain();
    if (g_plus == 0 || g_minus == 0) {
        throw std::domain_error("classical channel bound is undefined for zero gain");
    }
    double product = (added_noise_variance(t.plus) / (g_plus * g_plus)) *
                     (added_noise_variance(t.minus) / (g_minus * g_minus));
    return ClassicalBound{product, product >= 1 - IDENTITY_TOLERANCE};
}

CriteriaReport classify(const Teleporter &t, const InputState &in) {
    CriteriaReport r{};
    r.ts_plus = signal_transfer(t.plus, in.v_plus());
    r.ts_minus = signal_transfer(t.minus, in.v_minus());
    r.t_t = r.ts_plus + r.ts_minus;
    r.c_plus = correlation(t.plus, in.v_plus());
    r.c_minus = correlation(t.minus, in.v_minus());
    r.vcv_plus = conditional_variance(t.plus, in.v_plus());
    r.vcv_minus = conditional_variance(t.minus, in.v_minus());
    r.v_t = 0.5 * (r.vcv_plus + r.vcv_minus);
    r.c_f = field_correlation(t, in);
    r.v_cvf = field_conditional_variance(t, in);
    r.region = region_of(r.v_cvf);
    r.both_violated = r.t_t > 1 && r.v_t < 1;
    r.minimum_uncertainty_input = in.minimum_uncertainty();
    return r;
}

}  // namespace cvtele
