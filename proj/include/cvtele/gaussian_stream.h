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

#ifndef _CVTELE_GAUSSIAN_STREAM_H
#define _CVTELE_GAUSSIAN_STREAM_H

#include <array>
#include <cstdint>
#include <span>

namespace cvtele {

using PhiloxBlock = std::array<uint64_t, 4>;
using PhiloxKey = std::array<uint64_t, 2>;

/// Philox4x64-10 (Salmon, Moraes, Dror, Shaw 2011): a counter-based bijection from a
/// 256-bit counter to 256 random bits under a 128-bit key.
PhiloxBlock philox4x64_10(PhiloxBlock counter, PhiloxKey key);

/// A random-access stream of standard normal deviates.
///
/// Sample i comes from Philox block floor(i / 4) keyed by (seed, stream) with the domain tag in
/// counter word 1. The four 64-bit words become two Box-Muller pairs:
///     u1 = ((w0 >> 11) + 1) 2^-53 in (0, 1],  u2 = (w1 >> 11) 2^-53 in [0, 1),
///     z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2),
/// and likewise (w2, w3) -> (z2, z3). Any sample can be regenerated from its index alone,
/// so disjoint index ranges can be produced in parallel with identical results.
class GaussianStream {
   public:
    GaussianStream(uint64_t seed, uint64_t stream, uint64_t domain = 0) : key_{seed, stream}, domain_(domain) {
    }

    double at(uint64_t index) const;

    /// out[k] = at(first + k).
    void fill(uint64_t first, std::span<double> out) const;

   private:
    std::array<double, 4> block(uint64_t block_index) const;

    PhiloxKey key_;
    uint64_t domain_;
};

}  // namespace cvtele

#endif
