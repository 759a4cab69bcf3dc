// Copyright 2026 The tbsim Authors
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

#include "presets.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tbsim::cli {

ScenarioParams preset_params(const std::string& preset, const std::string& scenario) {
    if (preset != "paper" && !preset.empty())
        throw config_error("unknown preset: " + preset);
    ScenarioParams p;  // struct defaults are the paper operating point
    if (scenario == "hom") {
        p.mu_a = 2.6e-3;
    } else if (scenario == "teleport-z") {
        p.mu_a = 3.53e-2;
        p.input_state = InputState::early;
    } else if (scenario == "teleport-x") {
        p.mu_a = 9.38e-3;
        p.input_state = InputState::plus;
    } else if (scenario == "entanglement") {
        p.mu_a = 0.0;
    } else {
        throw config_error("unknown scenario: " + scenario);
    }
    return p;
}

namespace {

double parse_number(const std::string& name, const std::string& value) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw config_error("parameter " + name + ": '" + value + "' is not a number");
    return v;
}

}  // namespace

void apply_param(ScenarioParams& p, const std::string& name, const std::string& value) {
    if (name == "input") {
        if (value == "early")
            p.input_state = InputState::early;
        else if (value == "late")
            p.input_state = InputState::late;
        else if (value == "plus")
            p.input_state = InputState::plus;
        else
            throw config_error("input must be early, late or plus");
        return;
    }
    double v = parse_number(name, value);
    if (name == "mu_A" || name == "mu_a")
        p.mu_a = v;
    else if (name == "mu_B" || name == "mu_b")
        p.mu_b = v;
    else if (name == "zeta")
        p.zeta = v;
    else if (name == "eta_i")
        p.eta_i = v;
    else if (name == "eta_s")
        p.eta_s = v;
    else if (name == "dark_prob")
        p.dark_prob = v;
    else if (name == "dark_rate_hz")
        p.dark_prob = v * p.bin_duration_ps * 1e-12;
    else if (name == "mzi_visibility")
        p.mzi_visibility = v;
    else if (name == "sigma_pulse_ps")
        p.sigma_pulse_ps = v;
    else if (name == "extinction_db")
        p.extinction_db = v;
    else if (name == "clock_hz")
        p.clock_hz = v;
    else
        throw config_error("unknown parameter: " + name);
}

double get_param(const ScenarioParams& p, const std::string& name) {
    if (name == "mu_A" || name == "mu_a") return p.mu_a;
    if (name == "mu_B" || name == "mu_b") return p.mu_b;
    if (name == "zeta") return p.zeta;
    if (name == "eta_i") return p.eta_i;
    if (name == "eta_s") return p.eta_s;
    if (name == "dark_prob") return p.dark_prob;
    if (name == "mzi_visibility") return p.mzi_visibility;
    if (name == "sigma_pulse_ps") return p.sigma_pulse_ps;
    if (name == "extinction_db") return p.extinction_db;
    if (name == "clock_hz") return p.clock_hz;
    throw config_error("unknown parameter: " + name);
}

std::string canonical_string(const ScenarioParams& p) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "mu_a=%.17g;mu_b=%.17g;zeta=%.17g;eta_i=%.17g;eta_s=%.17g;dark=%.17g;"
                  "mzi=%.17g;sigma=%.17g;binsep=%.17g;bindur=%.17g;clock=%.17g;ext=%.17g;"
                  "input=%d",
                  p.mu_a, p.mu_b, p.zeta, p.eta_i, p.eta_s, p.dark_prob, p.mzi_visibility,
                  p.sigma_pulse_ps, p.bin_separation_ps, p.bin_duration_ps, p.clock_hz,
                  p.extinction_db, static_cast<int>(p.input_state));
    return buf;
}

}  // namespace tbsim::cli
