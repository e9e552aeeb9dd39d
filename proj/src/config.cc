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

#include "cvtele/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cvtele {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json &j, const std::string &where, const std::set<std::string> &allowed) {
    for (const auto &[key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown config field '" + where + key + "'");
        }
    }
}

const json &require_object(const json &j, const std::string &name) {
    if (!j.is_object()) {
        throw ConfigError("config field '" + name + "' must be an object");
    }
    return j;
}

double number(const json &j, const std::string &name) {
    if (!j.is_number()) {
        throw ConfigError("config field '" + name + "' must be a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError("config field '" + name + "' must be finite");
    }
    return v;
}

uint64_t count(const json &j, const std::string &name) {
    if (!j.is_number_unsigned()) {
        throw ConfigError("config field '" + name + "' must be a non-negative integer");
    }
    return j.get<uint64_t>();
}

std::vector<double> grid(const json &j, const std::string &name) {
    if (j.is_number()) {
        return {number(j, name)};
    }
    if (j.is_array()) {
        std::vector<double> out;
        for (size_t k = 0; k < j.size(); ++k) {
            out.push_back(number(j[k], name + "[" + std::to_string(k) + "]"));
        }
        if (out.empty()) {
            throw ConfigError("config field '" + name + "' must not be empty");
        }
        return out;
    }
    require_object(j, name);
    reject_unknown_keys(j, name + ".", {"min", "max", "steps"});
    for (const char *key : {"min", "max", "steps"}) {
        if (!j.contains(key)) {
            throw ConfigError("missing required field '" + name + "." + key + "'");
        }
    }
    Grid g{number(j["min"], name + ".min"), number(j["max"], name + ".max"), count(j["steps"], name + ".steps")};
    try {
        return g.values();
    } catch (const ConfigError &e) {
        throw ConfigError("config field '" + name + "': " + e.what());
    }
}

QuadratureMap quadrature_map(const json &j, const std::string &name) {
    require_object(j, name);
    reject_unknown_keys(j, name + ".", {"gain", "noise"});
    if (!j.contains("gain")) {
        throw ConfigError("missing required field '" + name + ".gain'");
    }
    double gain = number(j["gain"], name + ".gain");
    std::vector<NoiseTerm> noise;
    if (j.contains("noise")) {
        const json &list = j["noise"];
        if (!list.is_array()) {
            throw ConfigError("config field '" + name + ".noise' must be an array");
        }
        for (size_t k = 0; k < list.size(); ++k) {
            std::string item = name + ".noise[" + std::to_string(k) + "]";
            require_object(list[k], item);
            reject_unknown_keys(list[k], item + ".", {"id", "coefficient", "variance"});
            for (const char *key : {"id", "coefficient", "variance"}) {
                if (!list[k].contains(key)) {
                    throw ConfigError("missing required field '" + item + "." + key + "'");
                }
            }
            noise.push_back(NoiseTerm{ModeId{count(list[k]["id"], item + ".id")},
                                      number(list[k]["coefficient"], item + ".coefficient"),
                                      number(list[k]["variance"], item + ".variance")});
        }
    }
    try {
        return QuadratureMap(gain, std::move(noise));
    } catch (const std::invalid_argument &e) {
        throw ConfigError("config field '" + name + "': " + e.what());
    }
}

template <typename T>
void take(std::optional<T> &dst, const std::optional<T> &src) {
    if (src) {
        dst = src;
    }
}

}  // namespace

std::vector<double> Grid::values() const {
    if (steps < 1) {
        throw ConfigError("grid needs at least one step");
    }
    if (!(min <= max)) {
        throw ConfigError("grid needs min <= max");
    }
    if (steps == 1) {
        return {min};
    }
    std::vector<double> out;
    out.reserve(steps);
    for (uint64_t k = 0; k < steps; ++k) {
        out.push_back(std::lerp(min, max, static_cast<double>(k) / static_cast<double>(steps - 1)));
    }
    return out;
}

void Settings::apply(const Settings &o) {
    take(family, o.family);
    take(lambda, o.lambda);
    take(resource, o.resource);
    take(vin_plus, o.vin_plus);
    take(vin_minus, o.vin_minus);
    take(s_plus, o.s_plus);
    take(s_minus, o.s_minus);
    take(custom_plus, o.custom_plus);
    take(custom_minus, o.custom_minus);
    take(sweep_lambda, o.sweep_lambda);
    take(sweep_resource, o.sweep_resource);
    take(shots, o.shots);
    take(seed, o.seed);
    take(workers, o.workers);
    take(bell_v_cvf, o.bell_v_cvf);
    take(bell_lambda, o.bell_lambda);
    take(bell_s_i, o.bell_s_i);
    take(squeeze_v_cvf, o.squeeze_v_cvf);
    take(squeeze_lambda, o.squeeze_lambda);
    take(squeeze_v_in_plus, o.squeeze_v_in_plus);
    take(out, o.out);
    take(inject_fault, o.inject_fault);
}

InputState Settings::input() const {
    try {
        return InputState(vin_plus.value_or(1), vin_minus.value_or(1), s_plus.value_or(0), s_minus.value_or(0));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("input: ") + e.what());
    }
}

Teleporter Settings::teleporter() const {
    if (!family) {
        throw ConfigError("missing required field 'family'");
    }
    auto need = [](const std::optional<double> &v, const char *name) {
        if (!v) {
            throw ConfigError(std::string("missing required field '") + name + "'");
        }
        return *v;
    };
    try {
        if (*family == "epr") {
            return make_epr(need(lambda, "lambda"), need(resource, "resource"));
        }
        if (*family == "single_mode") {
            return make_single_mode(need(lambda, "lambda"), need(resource, "resource"));
        }
        if (*family == "classical") {
            return make_classical_measure_resend(need(lambda, "lambda"));
        }
        if (*family == "custom") {
            if (!custom_plus) {
                throw ConfigError("missing required field 'custom.plus'");
            }
            if (!custom_minus) {
                throw ConfigError("missing required field 'custom.minus'");
            }
            return make_custom(*custom_plus, *custom_minus);
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown family '" + *family + "' (expected epr, single_mode, classical or custom)");
}

Settings parse_settings(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(j, "<root>");
    reject_unknown_keys(
        j, "", {"family", "lambda", "resource", "input", "custom", "sweep", "mc", "bell", "squeeze", "out"});

    Settings s;
    if (j.contains("family")) {
        if (!j["family"].is_string()) {
            throw ConfigError("config field 'family' must be a string");
        }
        s.family = j["family"].get<std::string>();
    }
    if (j.contains("lambda")) {
        s.lambda = number(j["lambda"], "lambda");
    }
    if (j.contains("resource")) {
        s.resource = number(j["resource"], "resource");
    }
    if (j.contains("input")) {
        const json &in = require_object(j["input"], "input");
        reject_unknown_keys(in, "input.", {"v_plus", "v_minus", "s_plus", "s_minus"});
        if (in.contains("v_plus")) s.vin_plus = number(in["v_plus"], "input.v_plus");
        if (in.contains("v_minus")) s.vin_minus = number(in["v_minus"], "input.v_minus");
        if (in.contains("s_plus")) s.s_plus = number(in["s_plus"], "input.s_plus");
        if (in.contains("s_minus")) s.s_minus = number(in["s_minus"], "input.s_minus");
    }
    if (j.contains("custom")) {
        const json &c = require_object(j["custom"], "custom");
        reject_unknown_keys(c, "custom.", {"plus", "minus"});
        if (c.contains("plus")) s.custom_plus = quadrature_map(c["plus"], "custom.plus");
        if (c.contains("minus")) s.custom_minus = quadrature_map(c["minus"], "custom.minus");
    }
    if (j.contains("sweep")) {
        const json &sw = require_object(j["sweep"], "sweep");
        reject_unknown_keys(sw, "sweep.", {"lambda", "resource"});
        if (sw.contains("lambda")) s.sweep_lambda = grid(sw["lambda"], "sweep.lambda");
        if (sw.contains("resource")) s.sweep_resource = grid(sw["resource"], "sweep.resource");
    }
    if (j.contains("mc")) {
        const json &mc = require_object(j["mc"], "mc");
        reject_unknown_keys(mc, "mc.", {"shots", "seed", "workers"});
        if (mc.contains("shots")) s.shots = count(mc["shots"], "mc.shots");
        if (mc.contains("seed")) s.seed = count(mc["seed"], "mc.seed");
        if (mc.contains("workers")) s.workers = static_cast<unsigned>(count(mc["workers"], "mc.workers"));
    }
    if (j.contains("bell")) {
        const json &b = require_object(j["bell"], "bell");
        reject_unknown_keys(b, "bell.", {"v_cvf", "lambda", "s_i"});
        if (b.contains("v_cvf")) s.bell_v_cvf = grid(b["v_cvf"], "bell.v_cvf");
        if (b.contains("lambda")) s.bell_lambda = grid(b["lambda"], "bell.lambda");
        if (b.contains("s_i")) s.bell_s_i = grid(b["s_i"], "bell.s_i");
    }
    if (j.contains("squeeze")) {
        const json &q = require_object(j["squeeze"], "squeeze");
        reject_unknown_keys(q, "squeeze.", {"v_cvf", "lambda", "v_in_plus"});
        if (q.contains("v_cvf")) s.squeeze_v_cvf = grid(q["v_cvf"], "squeeze.v_cvf");
        if (q.contains("lambda")) s.squeeze_lambda = grid(q["lambda"], "squeeze.lambda");
        if (q.contains("v_in_plus")) s.squeeze_v_in_plus = grid(q["v_in_plus"], "squeeze.v_in_plus");
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) {
            throw ConfigError("config field 'out' must be a string");
        }
        s.out = j["out"].get<std::string>();
    }
    return s;
}

Settings load_settings(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_settings(ss.str());
}

}  // namespace cvtele
