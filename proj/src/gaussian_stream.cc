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

#include "cvtele/gaussian_stream.h"

#include <cmath>
#include <numbers>

namespace cvtele {

namespace {

constexpr uint64_t PHILOX_M0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t PHILOX_M1 = 0xCA5A826395121157ULL;
constexpr uint64_t PHILOX_W0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t PHILOX_W1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t &hi, uint64_t &lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<uint64_t>(p >> 64);
    lo = static_cast<uint64_t>(p);
}

inline double open_unit(uint64_t w) {
    return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

inline double half_open_unit(uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

}  // namespace

PhiloxBlock philox4x64_10(PhiloxBlock c, PhiloxKey k) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += PHILOX_W0;
            k[1] += PHILOX_W1;
        }
        uint64_t hi0, lo0, hi1, lo1;
        mulhilo(PHILOX_M0, c[0], hi0, lo0);
        mulhilo(PHILOX_M1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

std::array<double, 4> GaussianStream::block(uint64_t block_index) const {
    PhiloxBlock w = philox4x64_10({block_index, domain_, 0, 0}, key_);
    std::array<double, 4> z;
    for (int pair = 0; pair < 2; ++pair) {
        double r = std::sqrt(-2 * std::log(open_unit(w[2 * pair])));
        double theta = 2 * std::numbers::pi * half_open_unit(w[2 * pair + 1]);
        z[2 * pair] = r * std::cos(theta);
        z[2 * pair + 1] = r * std::sin(theta);
    }
    return z;
}

double GaussianStream::at(uint64_t index) const {
    return block(index / 4)[index % 4];
}

void GaussianStream::fill(uint64_t first, std::span<double> out) const {
    size_t k = 0;
    uint64_t index = first;
    while (k < out.size()) {
        auto z = block(index / 4);
        for (uint64_t j = index % 4; j < 4 && k < out.size(); ++j, ++k, ++index) {
            out[k] = z[j];
        }
    }
}

}  // namespace cvtele
