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

#include <iostream>

#include "CLI11.hpp"
#include "cvtele/commands.h"

using namespace cvtele;

namespace {

void add_common(CLI::App *sub, Flags &f) {
    sub->add_option("--config", f.config, "JSON config file; flags override its values");
    sub->add_option("--family", f.family, "epr | single_mode | classical | custom");
    sub->add_option("--lambda", f.lambda, "teleporter gain");
    sub->add_option("--resource", f.resource, "V_ent (epr) or V_s (single_mode), in (0, 1]");
    sub->add_option("--vin-plus", f.vin_plus, "input amplitude-quadrature variance");
    sub->add_option("--vin-minus", f.vin_minus, "input phase-quadrature variance");
    sub->add_option("--out", f.out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Continuous-variable teleportation criteria: analytic reports, sweeps and Monte Carlo checks"};
    app.require_subcommand(1);

    Flags flags;
    Command command = Command::Report;

    auto *report = app.add_subcommand("report", "criteria report for one teleporter (JSON)");
    add_common(report, flags);
    report->callback([&] { command = Command::Report; });

    auto *sweep = app.add_subcommand("sweep", "lambda x resource grid of criteria (CSV)");
    add_common(sweep, flags);
    sweep->callback([&] { command = Command::Sweep; });

    auto *mc = app.add_subcommand("mc", "Monte Carlo verification of every analytic criterion");
    add_common(mc, flags);
    mc->add_option("--shots", flags.shots, "number of shots");
    mc->add_option("--seed", flags.seed, "64-bit seed");
    mc->add_option("--workers", flags.workers, "worker threads (0 = all cores); results do not depend on it");
    mc->add_option("--inject-fault", flags.inject_fault, "shift the named analytic value by +1")->group("");
    mc->callback([&] { command = Command::Mc; });

    auto *bell = app.add_subcommand("bell", "Clauser-Horne S after teleportation over a V_cvf grid (CSV)");
    add_common(bell, flags);
    bell->callback([&] { command = Command::Bell; });

    auto *squeeze = app.add_subcommand("squeeze", "output squeezing over a V_cvf grid (CSV)");
    add_common(squeeze, flags);
    squeeze->callback([&] { command = Command::Squeeze; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return EXIT_USAGE;
    }

    Settings settings;
    try {
        settings = resolve_settings(command, flags);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_USAGE;
    }
    return run_command(command, settings, std::cout, std::cerr);
}
