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

#ifndef _CVTELE_LINMODE_H
#define _CVTELE_LINMODE_H

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

/// Linear Heisenberg-picture algebra for one quadrature of a teleporter.
///
/// All variances are in shot-noise units: the vacuum quadrature variance is 1.
/// An output quadrature fluctuation is modelled as
///
///     dX_out = gain * dX_in + sum_k coefficient_k * dX_k
///
/// where each dX_k is an independent zero-mean Gaussian latent mode with its own
/// variance, independent of the input.
namespace cvtele {

/// Identifies a statistically independent latent Gaussian source within one teleporter.
struct ModeId {
    uint64_t value;
    auto operator<=>(const ModeId &) const = default;
};

struct NoiseTerm {
    ModeId id;
    double coefficient;
    /// Variance of the latent mode; must be positive.
    double variance;
};

/// One quadrature's input-output relation. Immutable once constructed.
///
/// Noise terms are stored in ascending mode-id order, so every reduction over them is
/// independent of the order they were supplied in.
class QuadratureMap {
   public:
    /// Throws std::invalid_argument on non-finite values, a non-positive noise variance,
    /// or repeated mode ids.
    QuadratureMap(double gain, std::vector<NoiseTerm> noise);

    double gain() const {
        return gain_;
    }
    std::span<const NoiseTerm> noise() const {
        return noise_;
    }

   private:
    double gain_;
    std::vector<NoiseTerm> noise_;
};

/// Gaussian input state: quadrature variances plus optional coherent test-signal amplitudes.
class InputState {
   public:
    /// Throws std::invalid_argument unless both variances are positive and finite.
    InputState(double v_plus, double v_minus, double s_plus = 0, double s_minus = 0);

    /// The vacuum state (both variances 1, no signals).
    static InputState vacuum() {
        return InputState(1, 1);
    }

    double v_plus() const {
        return v_plus_;
    }
    double v_minus() const {
        return v_minus_;
    }
    double s_plus() const {
        return s_plus_;
    }
    double s_minus() const {
        return s_minus_;
    }

    /// True iff |v_plus * v_minus - 1| <= 1e-12.
    bool minimum_uncertainty() const;

   private:
    double v_plus_;
    double v_minus_;
    double s_plus_;
    double s_minus_;
};

constexpr double MINIMUM_UNCERTAINTY_TOLERANCE = 1e-12;

/// Sum of coefficient^2 * variance over the noise terms.
double added_noise_variance(const QuadratureMap &map);

/// gain^2 * v_in + added noise. Throws std::invalid_argument if v_in <= 0.
double output_variance(const QuadratureMap &map, double v_in);

/// <dX_in dX_out> = gain * v_in. Latent modes are independent of the input and
/// contribute nothing. Throws std::invalid_argument if v_in <= 0.
double in_out_covariance(const QuadratureMap &map, double v_in);

}  // namespace cvtele

#endif
