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

#ifndef _CVTELE_COMMANDS_H
#define _CVTELE_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cvtele/config.h"

namespace cvtele {

enum class Command {
    Report,
    Sweep,
    Mc,
    Bell,
    Squeeze,
};

constexpr int EXIT_OK = 0;
constexpr int EXIT_USAGE = 1;
constexpr int EXIT_VERIFICATION_FAILED = 2;

/// Command-line flags. Each one, when given, wins over the config file.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> family;
    std::optional<double> lambda;
    std::optional<double> resource;
    std::optional<double> vin_plus;
    std::optional<double> vin_minus;
    std::optional<uint64_t> shots;
    std::optional<uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    std::optional<std::string> inject_fault;
};

/// Loads the config file (if any) and applies the flags. For grid-driven commands a scalar
/// flag collapses the matching grid to that single value: --lambda replaces the sweep, bell
/// and squeeze lambda grids, --resource the sweep resource grid, --vin-plus the squeeze
/// v_in_plus grid.
Settings resolve_settings(Command command, const Flags &flags);

/// Runs one command. Primary output goes to `out` unless settings.out names a file;
/// diagnostics go to `err`. Returns the process exit code.
int run_command(Command command, const Settings &settings, std::ostream &out, std::ostream &err);

// The renderers below throw ConfigError on missing or invalid settings.

/// JSON report with every criterion, the region and the classical-channel bound.
std::string render_report(const Settings &settings);

/// CSV `lambda,resource,ts_plus,ts_minus,t_t,vcv_plus,vcv_minus,v_t,c_f,v_cvf,region`,
/// lambda in the outer loop. The classical family has no resource axis and leaves it empty.
std::string render_sweep(const Settings &settings);

/// CSV `v_cvf,lambda,s_i,s`; loops lambda, then s_i, then v_cvf. A singular row has s = error.
std::string render_bell(const Settings &settings);

/// CSV `v_cvf,lambda,v_in_plus,v_out_plus,squeezed`; loops lambda, then v_in_plus, then v_cvf.
std::string render_squeeze(const Settings &settings);

struct McOutcome {
    std::string table;
    bool all_pass;
};

/// Analytic-versus-sampled table at 5 standard errors. Injected-signal rows are added when
/// the input carries a test signal.
McOutcome render_mc(const Settings &settings);

}  // namespace cvtele

#endif
