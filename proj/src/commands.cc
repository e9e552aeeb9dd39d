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

#include "cvtele/commands.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cvtele/criteria.h"
#include "cvtele/float_format.h"
#include "cvtele/mcoracle.h"
#include "cvtele/predictions.h"
#include "json.hpp"

namespace cvtele {

namespace {

template <typename T>
const T &need(const std::optional<T> &v, const char *name) {
    if (!v) {
        throw ConfigError(std::string("missing required field '") + name + "'");
    }
    return *v;
}

std::string fmt(double v) {
    return format_double(v);
}

std::string optional_number(const std::optional<double> &v) {
    return v ? fmt(*v) : std::string();
}

void write_or_throw(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open output file '" + path + "' for writing");
    }
    f << content;
    f.flush();
    if (!f) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

}  // namespace

Settings resolve_settings(Command command, const Flags &flags) {
    Settings s;
    if (flags.config) {
        s = load_settings(*flags.config);
    }
    Settings o;
    o.family = flags.family;
    o.lambda = flags.lambda;
    o.resource = flags.resource;
    o.vin_plus = flags.vin_plus;
    o.vin_minus = flags.vin_minus;
    o.shots = flags.shots;
    o.seed = flags.seed;
    o.workers = flags.workers;
    o.out = flags.out;
    o.inject_fault = flags.inject_fault;
    if (flags.lambda) {
        std::vector<double> one{*flags.lambda};
        if (command == Command::Sweep) o.sweep_lambda = one;
        if (command == Command::Bell) o.bell_lambda = one;
        if (command == Command::Squeeze) o.squeeze_lambda = one;
    }
    if (flags.resource && command == Command::Sweep) {
        o.sweep_resource = std::vector<double>{*flags.resource};
    }
    if (flags.vin_plus && command == Command::Squeeze) {
        o.squeeze_v_in_plus = std::vector<double>{*flags.vin_plus};
    }
    s.apply(o);
    return s;
}

std::string render_report(const Settings &settings) {
    using nlohmann::ordered_json;
    Teleporter t = settings.teleporter();
    InputState in = settings.input();
    CriteriaReport r = classify(t, in);

    ordered_json tj;
    tj["family"] = family_name(t.family);
    tj["lambda"] = t.lambda ? ordered_json(*t.lambda) : ordered_json(nullptr);
    tj["resource"] = t.resource ? ordered_json(*t.resource) : ordered_json(nullptr);
    tj["symmetric"] = t.symmetric();
    tj["gain_plus"] = t.plus.gain();
    tj["gain_minus"] = t.minus.gain();
    tj["added_noise_plus"] = added_noise_variance(t.plus);
    tj["added_noise_minus"] = added_noise_variance(t.minus);

    ordered_json ij;
    ij["v_plus"] = in.v_plus();
    ij["v_minus"] = in.v_minus();
    ij["minimum_uncertainty"] = in.minimum_uncertainty();

    ordered_json cj;
    cj["ts_plus"] = r.ts_plus;
    cj["ts_minus"] = r.ts_minus;
    cj["t_t"] = r.t_t;
    cj["c_plus"] = r.c_plus;
    cj["c_minus"] = r.c_minus;
    cj["vcv_plus"] = r.vcv_plus;
    cj["vcv_minus"] = r.vcv_minus;
    cj["v_t"] = r.v_t;
    cj["c_f"] = r.c_f;
    cj["v_cvf"] = r.v_cvf;
    cj["region"] = region_name(r.region);
    cj["both_violated"] = r.both_violated;

    ordered_json bj = nullptr;
    if (t.plus.gain() != 0 && t.minus.gain() != 0) {
        ClassicalBound b = classical_bound_check(t);
        bj = ordered_json{{"product", b.product}, {"satisfied", b.satisfied}};
    }

    ordered_json doc;
    doc["teleporter"] = tj;
    doc["input"] = ij;
    doc["criteria"] = cj;
    doc["classical_bound"] = bj;
    return doc.dump(2) + "\n";
}

std::string render_sweep(const Settings &settings) {
    const std::string &family = need(settings.family, "family");
    const auto &lambdas = need(settings.sweep_lambda, "sweep.lambda");
    bool has_resource = family != "classical";
    if (family == "custom") {
        throw ConfigError("sweep supports the epr, single_mode and classical families");
    }
    std::vector<std::optional<double>> resources;
    if (has_resource) {
        for (double v : need(settings.sweep_resource, "sweep.resource")) {
            if (!(v > 0 && v <= 1)) {
                throw ConfigError("sweep.resource values must lie in (0, 1]");
            }
            resources.emplace_back(v);
        }
    } else {
        resources.emplace_back(std::nullopt);
    }
    InputState in = settings.input();

    std::ostringstream os;
    os << "lambda,resource,ts_plus,ts_minus,t_t,vcv_plus,vcv_minus,v_t,c_f,v_cvf,region\n";
    for (double lambda : lambdas) {
        for (const auto &resource : resources) {
            Settings point = settings;
            point.lambda = lambda;
            point.resource = resource;
            CriteriaReport r = classify(point.teleporter(), in);
            os << fmt(lambda) << ',' << optional_number(resource) << ',' << fmt(r.ts_plus) << ','
               << fmt(r.ts_minus) << ',' << fmt(r.t_t) << ',' << fmt(r.vcv_plus) << ',' << fmt(r.vcv_minus) << ','
               << fmt(r.v_t) << ',' << fmt(r.c_f) << ',' << fmt(r.v_cvf) << ',' << region_name(r.region) << '\n';
        }
    }
    return os.str();
}

std::string render_bell(const Settings &settings) {
    const auto &v_cvfs = need(settings.bell_v_cvf, "bell.v_cvf");
    const auto &lambdas = need(settings.bell_lambda, "bell.lambda");
    std::vector<double> s_is = settings.bell_s_i.value_or(std::vector<double>{MAX_CLAUSER_HORNE});
    for (double s_i : s_is) {
        if (s_i > MAX_CLAUSER_HORNE) {
            throw ConfigError("bell.s_i values must not exceed 1.5");
        }
    }
    for (double v : v_cvfs) {
        if (v < 0) {
            throw ConfigError("bell.v_cvf values must be non-negative");
        }
    }

    std::ostringstream os;
    os << "v_cvf,lambda,s_i,s\n";
    for (double lambda : lambdas) {
        for (double s_i : s_is) {
            for (double v_cvf : v_cvfs) {
                os << fmt(v_cvf) << ',' << fmt(lambda) << ',' << fmt(s_i) << ',';
                try {
                    os << fmt(bell_s(BellParams{s_i, lambda, v_cvf}));
                } catch (const std::domain_error &) {
                    os << "error";
                }
                os << '\n';
            }
        }
    }
    return os.str();
}

std::string render_squeeze(const Settings &settings) {
    const auto &v_cvfs = need(settings.squeeze_v_cvf, "squeeze.v_cvf");
    const auto &lambdas = need(settings.squeeze_lambda, "squeeze.lambda");
    const auto &v_ins = need(settings.squeeze_v_in_plus, "squeeze.v_in_plus");
    for (double v : v_ins) {
        if (!(v > 0)) {
            throw ConfigError("squeeze.v_in_plus values must be positive");
        }
    }
    for (double v : v_cvfs) {
        if (v < 0) {
            throw ConfigError("squeeze.v_cvf values must be non-negative");
        }
    }

    std::ostringstream os;
    os << "v_cvf,lambda,v_in_plus,v_out_plus,squeezed\n";
    for (double lambda : lambdas) {
        for (double v_in : v_ins) {
            for (double v_cvf : v_cvfs) {
                double v_out = symmetric_output_variance(v_cvf, lambda, v_in);
                os << fmt(v_cvf) << ',' << fmt(lambda) << ',' << fmt(v_in) << ',' << fmt(v_out) << ','
                   << (v_out < 1 ? "true" : "false") << '\n';
            }
        }
    }
    return os.str();
}

McOutcome render_mc(const Settings &settings) {
    Teleporter t = settings.teleporter();
    InputState in = settings.input();
    uint64_t shots = need(settings.shots, "mc.shots");
    uint64_t seed = need(settings.seed, "mc.seed");
    unsigned workers = settings.workers.value_or(0);
    if (shots < MIN_SHOTS) {
        throw ConfigError("mc.shots must be at least " + std::to_string(MIN_SHOTS));
    }

    SampleStats stats = sample_criteria(t, in, shots, seed, workers);
    std::optional<InjectedTransfer> injected;
    if (in.s_plus() != 0 || in.s_minus() != 0) {
        injected = sample_signal_transfer(t, in, shots, seed, workers);
    }
    auto rows = verification_table(t, in, stats, injected ? &*injected : nullptr);

    if (settings.inject_fault) {
        bool found = false;
        for (auto &row : rows) {
            if (row.quantity == *settings.inject_fault) {
                row.analytic += 1;
                row.pass = within_error(row.analytic, row.estimate);
                found = true;
            }
        }
        if (!found) {
            throw ConfigError("inject-fault names unknown quantity '" + *settings.inject_fault + "'");
        }
    }

    std::ostringstream os;
    os << "# family=" << family_name(t.family) << " lambda=" << optional_number(t.lambda)
       << " resource=" << optional_number(t.resource) << " v_in_plus=" << fmt(in.v_plus())
       << " v_in_minus=" << fmt(in.v_minus()) << " shots=" << shots << " seed=" << seed
       << " sigmas=" << fmt(DEFAULT_SIGMAS) << '\n';
    os << std::left << std::setw(20) << "quantity" << std::setw(26) << "analytic" << std::setw(26) << "estimate"
       << std::setw(26) << "std_error" << std::setw(10) << "z" << "status\n";
    size_t passed = 0;
    for (const auto &row : rows) {
        double diff = row.estimate.value - row.analytic;
        char z[32];
        if (row.estimate.std_error > 0) {
            std::snprintf(z, sizeof(z), "%.3f", diff / row.estimate.std_error);
        } else {
            std::snprintf(z, sizeof(z), "%s", diff == 0 ? "0" : "-");
        }
        os << std::setw(20) << row.quantity << std::setw(26) << fmt(row.analytic) << std::setw(26)
           << fmt(row.estimate.value) << std::setw(26) << fmt(row.estimate.std_error) << std::setw(10) << z
           << (row.pass ? "PASS" : "FAIL") << '\n';
        passed += row.pass ? 1 : 0;
    }
    bool all = passed == rows.size();
    os << "result: " << (all ? "PASS" : "FAIL") << " (" << passed << "/" << rows.size() << ")\n";
    return McOutcome{os.str(), all};
}

int run_command(Command command, const Settings &settings, std::ostream &out, std::ostream &err) {
    try {
        std::string content;
        int code = EXIT_OK;
        switch (command) {
            case Command::Report: {
                content = render_report(settings);
                if (!settings.input().minimum_uncertainty()) {
                    err << "warning: input is not a minimum-uncertainty state; the T_t <= 1 classical bound "
                           "does not strictly apply\n";
                }
                break;
            }
            case Command::Sweep:
                content = render_sweep(settings);
                break;
            case Command::Bell:
                content = render_bell(settings);
                break;
            case Command::Squeeze:
                content = render_squeeze(settings);
                break;
            case Command::Mc: {
                McOutcome mc = render_mc(settings);
                content = std::move(mc.table);
                code = mc.all_pass ? EXIT_OK : EXIT_VERIFICATION_FAILED;
                break;
            }
        }
        if (settings.out) {
            write_or_throw(*settings.out, content);
        } else {
            out << content;
        }
        return code;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return EXIT_USAGE;
    }
}

}  // namespace cvtele
