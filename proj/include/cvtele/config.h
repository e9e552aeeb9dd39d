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

#ifndef _CVTELE_CONFIG_H
#define _CVTELE_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvtele/linmode.h"
#include "cvtele/teleporter.h"

namespace cvtele {

/// Invalid or incomplete configuration. The message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evenly spaced closed grid. steps == 1 is the single point `min`.
struct Grid {
    double min;
    double max;
    uint64_t steps;

    /// Throws ConfigError unless steps >= 1 and min <= max.
    std::vector<double> values() const;
};

/// Everything a command may need. Every field is optional here; commands demand what they use
/// and raise ConfigError naming the first missing field.
///
/// The config file is a JSON document:
///
///     {
///       "family": "epr" | "single_mode" | "classical" | "custom",
///       "lambda": 1.0, "resource": 0.25,
///       "input": {"v_plus": 1, "v_minus": 1, "s_plus": 0, "s_minus": 0},
///       "custom": {"plus":  {"gain": 1, "noise": [{"id": 1, "coefficient": 1, "variance": 1}]},
///                  "minus": {"gain": 1, "noise": []}},
///       "sweep":   {"lambda": GRID, "resource": GRID},
///       "mc":      {"shots": 1000000, "seed": 42, "workers": 0},
///       "bell":    {"v_cvf": GRID, "lambda": GRID, "s_i": GRID},
///       "squeeze": {"v_cvf": GRID, "lambda": GRID, "v_in_plus": GRID},
///       "out": "path"
///     }
///
/// where GRID is {"min": a, "max": b, "steps": n}, an explicit list of numbers, or one number.
struct Settings {
    std::optional<std::string> family;
    std::optional<double> lambda;
    std::optional<double> resource;

    std::optional<double> vin_plus;
    std::optional<double> vin_minus;
    std::optional<double> s_plus;
    std::optional<double> s_minus;

    std::optional<QuadratureMap> custom_plus;
    std::optional<QuadratureMap> custom_minus;

    std::optional<std::vector<double>> sweep_lambda;
    std::optional<std::vector<double>> sweep_resource;

    std::optional<uint64_t> shots;
    std::optional<uint64_t> seed;
    std::optional<unsigned> workers;

    std::optional<std::vector<double>> bell_v_cvf;
    std::optional<std::vector<double>> bell_lambda;
    std::optional<std::vector<double>> bell_s_i;

    std::optional<std::vector<double>> squeeze_v_cvf;
    std::optional<std::vector<double>> squeeze_lambda;
    std::optional<std::vector<double>> squeeze_v_in_plus;

    std::optional<std::string> out;

    /// Test hook for the mc command: the named analytic value is shifted by +1 before comparison.
    std::optional<std::string> inject_fault;

    /// Fields set in `overrides` replace the ones here.
    void apply(const Settings &overrides);

    /// Input state from vin/s fields; variances default to 1 and signals to 0.
    InputState input() const;
    /// Teleporter named by family/lambda/resource (or the custom maps).
    Teleporter teleporter() const;
};

Settings parse_settings(const std::string &json_text);
Settings load_settings(const std::string &path);

}  // namespace cvtele

#endif
