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

#ifndef _CVTELE_TELEPORTER_H
#define _CVTELE_TELEPORTER_H

#include <optional>
#include <string_view>

#include "cvtele/linmode.h"

namespace cvtele {

enum class Family {
    Classical,
    Epr,
    SingleMode,
    Custom,
};

std::string_view family_name(Family family);

/// A pair of quadrature maps (amplitude, phase) plus the family that produced them.
///
/// The two maps never share a latent mode: there is no cross-quadrature coupling.
struct Teleporter {
    QuadratureMap plus;
    QuadratureMap minus;
    Family family;
    /// Gain used by the constructor; unset for custom teleporters.
    std::optional<double> lambda;
    /// V_ent for Epr, V_s for SingleMode; unset otherwise.
    std::optional<double> resource;

    bool symmetric() const {
        return plus.gain() == minus.gain();
    }
};

/// Lossless symmetric teleporter sharing an EPR resource of strength v_ent in (0, 1]
/// (1 is no entanglement). Each quadrature adds
///     (1+lambda) * (mode of variance v_ent/2) + (1-lambda) * (mode of variance 1/(2 v_ent)),
/// i.e. added noise 1/2 (1+lambda)^2 v_ent + 1/2 (1-lambda)^2 / v_ent. Keeping the 1/2 in the
/// variance makes the unity-gain values (V_cvf = 2 V_ent) exact in binary floating point.
Teleporter make_epr(double lambda, double v_ent);

/// Teleporter whose resource is one single-mode squeezed beam (squeezing v_s in (0, 1])
/// split on a 50:50 beamsplitter. Per quadrature the added noise is
///     1/4 (1+lambda)^2 (1+v_s) + 1/4 (1-lambda)^2 (1+1/v_s),
/// realised with coefficients 1 +- lambda on modes of variance (1+v_s)/4 and (1+1/v_s)/4.
Teleporter make_single_mode(double lambda, double v_s);

/// Measure-and-resend baseline: the input is measured with one vacuum penalty per quadrature
/// and resent on a vacuum carrier, giving added noise 1 + lambda^2. Coincides with make_epr(lambda, 1).
Teleporter make_classical_measure_resend(double lambda);

/// Arbitrary maps. No classicality check is made. Throws std::invalid_argument if the maps
/// share a mode id.
Teleporter make_custom(QuadratureMap plus, QuadratureMap minus);

}  // namespace cvtele

#endif
