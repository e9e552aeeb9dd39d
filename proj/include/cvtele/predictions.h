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

#ifndef _CVTELE_PREDICTIONS_H
#define _CVTELE_PREDICTIONS_H

#include <functional>

#include "cvtele/linmode.h"
#include "cvtele/teleporter.h"

namespace cvtele {

enum class Quadrature {
    Plus,
    Minus,
};

/// V_out = V_cvf + lambda^2 V_in for a lossless symmetric teleporter.
double symmetric_output_variance(double v_cvf, double lambda, double v_in);

/// Output variance of one quadrature. For symmetric Epr teleporters this is evaluated as
/// V_cvf + lambda^2 V_in and cross-checked against the generic linear map (std::logic_error
/// on disagreement beyond 1e-12); any other teleporter uses the generic map directly.
double output_variance_symmetric(const Teleporter &t, const InputState &in, Quadrature quadrature);

/// Whether an amplitude-squeezed input (v_in_plus < 1) is still squeezed after teleportation.
/// Throws std::invalid_argument unless t is a symmetric Epr teleporter and v_in_plus < 1.
bool squeezing_preserved(const Teleporter &t, double v_in_plus);

/// Same question phrased on (V_cvf, lambda). Throws std::invalid_argument unless 0 < v_in_plus < 1.
bool squeezing_preserved(double v_cvf, double lambda, double v_in_plus);

struct BellParams {
    /// Clauser-Horne value before teleportation; at most 1.5.
    double s_i;
    double lambda;
    double v_cvf;
};

constexpr double MAX_CLAUSER_HORNE = 1.5;

/// Clauser-Horne S after one beam of an entangled pair is teleported (lossless):
///     S = (1/2 (V_cvf - 1) + lambda^2 (S_i + 1/2)) / ((V_cvf - 1) + 2 lambda^2).
/// Throws std::invalid_argument if s_i > 1.5 or v_cvf < 0, std::domain_error if the
/// denominator vanishes.
double bell_s(const BellParams &p);

struct GainOptimum {
    double lambda;
    double v_cvf;
};

/// Closed-form minimiser of V_cvf over the gain for the Epr or SingleMode family.
///
/// Both families have V_cvf = a (1+lambda)^2 A + a (1-lambda)^2 B, minimised at
/// lambda* = (B-A)/(A+B) with value 4aAB/(A+B).
/// Throws std::invalid_argument for other families or a resource outside (0, 1].
GainOptimum optimal_gain(Family family, double resource);

/// Golden-section minimisation of an arbitrary unimodal V_cvf(lambda) on [lo, hi].
GainOptimum search_optimal_gain(const std::function<double(double)> &v_cvf_of_lambda, double lo, double hi,
                                double tolerance = 1e-12);

}  // namespace cvtele

#endif
