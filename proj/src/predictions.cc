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

#include "cvtele/predictions.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvtele/criteria.h"

namespace cvtele {

double symmetric_output_variance(double v_cvf, double lambda, double v_in) {
    return v_cvf + lambda * lambda * v_in;
}

double output_variance_symmetric(const Teleporter &t, const InputState &in, Quadrature quadrature) {
    const QuadratureMap &map = quadrature == Quadrature::Plus ? t.plus : t.minus;
    double v_in = quadrature == Quadrature::Plus ? in.v_plus() : in.v_minus();
    double generic = output_variance(map, v_in);
    if (t.family != Family::Epr || !t.symmetric()) {
        return generic;
    }
    double v = symmetric_output_variance(field_conditional_variance(t, in), map.gain(), v_in);
    if (std::abs(v - generic) > 1e-12 * std::max(1.0, generic)) {
        throw std::logic_error("symmetric output variance disagrees with the linear map");
    }
    return v;
}

bool squeezing_preserved(const Teleporter &t, double v_in_plus) {
    if (t.family != Family::Epr || !t.symmetric()) {
        throw std::invalid_argument("squeezing preservation is defined for symmetric Epr teleporters only");
    }
    if (!(v_in_plus > 0 && v_in_plus < 1)) {
        throw std::invalid_argument("input must be amplitude squeezed (0 < v_in_plus < 1)");
    }
    InputState in(v_in_plus, 1 / v_in_plus);
    return output_variance_symmetric(t, in, Quadrature::Plus) < 1;
}

bool squeezing_preserved(double v_cvf, double lambda, double v_in_plus) {
    if (!(v_in_plus > 0 && v_in_plus < 1)) {
        throw std::invalid_argument("input must be amplitude squeezed (0 < v_in_plus < 1)");
    }
    return symmetric_output_variance(v_cvf, lambda, v_in_plus) < 1;
}

double bell_s(const BellParams &p) {
    if (!(p.s_i <= MAX_CLAUSER_HORNE)) {
        throw std::invalid_argument("s_i exceeds the maximal Clauser-Horne value 1.5");
    }
    if (!(p.v_cvf >= 0) || !std::isfinite(p.v_cvf) || !std::isfinite(p.lambda)) {
        throw std::invalid_argument("v_cvf must be a finite non-negative number and lambda finite");
    }
    double g2 = p.lambda * p.lambda;
    double denominator = (p.v_cvf - 1) + 2 * g2;
    if (denominator == 0) {
        throw std::domain_error("Clauser-Horne expression is singular: (v_cvf - 1) + 2 lambda^2 == 0");
    }
    return (0.5 * (p.v_cvf - 1) + g2 * (p.s_i + 0.5)) / denominator;
}

GainOptimum optimal_gain(Family family, double resource) {
    if (!(resource > 0 && resource <= 1)) {
        throw std::invalid_argument("resource must lie in (0, 1], got " + std::to_string(resource));
    }
    double a, big_a, big_b;
    switch (family) {
        case Family::Epr:
            a = 0.5;
            big_a = resource;
            big_b = 1 / resource;
            break;
        case Family::SingleMode:
            a = 0.25;
            big_a = 1 + resource;
            big_b = 1 + 1 / resource;
            break;
        default:
            throw std::invalid_argument("closed-form optimal gain exists only for the epr and single_mode families");
    }
    double sum = big_a + big_b;
    return GainOptimum{(big_b - big_a) / sum, 4 * a * big_a * big_b / sum};
}

GainOptimum search_optimal_gain(
    const std::function<double(double)> &v_cvf_of_lambda, double lo, double hi, double tolerance) {
    if (!(lo < hi)) {
        throw std::invalid_argument("search interval must satisfy lo < hi");
    }
    const double inv_phi = std::numbers::phi - 1;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = v_cvf_of_lambda(x1);
    double f2 = v_cvf_of_lambda(x2);
    while (b - a > tolerance) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = v_cvf_of_lambda(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = v_cvf_of_lambda(x2);
        }
        if (x1 >= x2) {
            break;  // interval collapsed below floating resolution
        }
    }
    double best = 0.5 * (a + b);
    return GainOptimum{best, v_cvf_of_lambda(best)};
}

}  // namespace cvtele
