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

#ifndef _CVTELE_CRITERIA_H
#define _CVTELE_CRITERIA_H

#include <string_view>

#include "cvtele/linmode.h"
#include "cvtele/teleporter.h"

namespace cvtele {

/// Operating region, decided on the field conditional variance V_cvf:
/// Strong for V_cvf < 1, Intermediate for 1 <= V_cvf < 2, Classical for V_cvf >= 2.
enum class Region {
    Classical,
    Intermediate,
    Strong,
};

std::string_view region_name(Region region);
Region region_of(double v_cvf);

struct CriteriaReport {
    double ts_plus;
    double ts_minus;
    double t_t;
    double c_plus;
    double c_minus;
    double vcv_plus;
    double vcv_minus;
    double v_t;
    double c_f;
    double v_cvf;
    Region region;
    /// t_t > 1 and v_t < 1 at the same time.
    bool both_violated;
    /// False when the input is not a minimum-uncertainty state. The T_t <= 1 bound for
    /// classical channels is only derived for minimum-uncertainty inputs.
    bool minimum_uncertainty_input;
};

/// Signal transfer coefficient T_s = SNR_out / SNR_in = gain^2 v_in / (gain^2 v_in + N).
/// Throws std::domain_error when gain == 0 and N == 0 (no signal and no noise at the output).
double signal_transfer(const QuadratureMap &map, double v_in);

/// Input-output correlation C = <dX_in dX_out>^2 / (V_in V_out). Same errors as signal_transfer.
double correlation(const QuadratureMap &map, double v_in);

/// Conditional variance V_out (1 - C). Equal to the added noise; the two are cross-checked
/// and a std::logic_error is raised if they drift apart by more than 1e-12 (relative to V_out).
double conditional_variance(const QuadratureMap &map, double v_in);

double t_total(const Teleporter &t, const InputState &in);
double v_total(const Teleporter &t, const InputState &in);

/// Field correlation C_f built on the annihilation operator a = (X+ + i X-)/2:
///     C_f = (cov+ + cov-)^2 / ((V_in+ + V_in-)(V_out+ + V_out-)).
/// Throws std::domain_error if both output quadratures are noiseless and signal-free.
double field_correlation(const Teleporter &t, const InputState &in);

/// Field conditional variance V_cvf = 1/2 (V_out+ + V_out-)(1 - C_f), evaluated as
///     1/2 (V_out+ + V_out- - (cov+ + cov-)^2 / (V_in+ + V_in-)).
///
/// Also evaluated through C_f directly and from the per-quadrature signal transfers,
///     1/2 (V_out+ + V_out- - (r+ + r-)^2 / (V_in+ + V_in-)),  r = sign(gain) sqrt(T_s V_out V_in),
/// and all three must agree to 1e-12 (relative) or std::logic_error is raised.
double field_conditional_variance(const Teleporter &t, const InputState &in);

struct ClassicalBound {
    /// (N+ / gain+^2)(N- / gain-^2): product of the added noises referred to the input.
    double product;
    /// product >= 1 - 1e-12. Necessary for a map realisable through a classical channel.
    bool satisfied;
};

/// Generalised-uncertainty check on the classical channel.
/// Throws std::domain_error if either gain is zero.
ClassicalBound classical_bound_check(const Teleporter &t);

CriteriaReport classify(const Teleporter &t, const InputState &in);

}  // namespace cvtele

#endif
