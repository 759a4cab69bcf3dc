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

#include "tbsim/validation.hpp"

#include <cmath>

#include "tbsim/fock.hpp"
#include "tbsim/gaussian.hpp"

namespace tbsim {

namespace {

// Heralded correct/wrong probabilities for a z input through the engine.
std::pair<double, double> z_outcomes_engine(const ScenarioParams& p) {
    TeleportCircuit tc = teleportation_circuit(p);
    GaussianState<double> st = evaluate_circuit<double>(tc.circuit);
    ClickPattern corr = tc.bsm;
    corr.required_click.push_back(tc.d3_correct);
    ClickPattern wrong = tc.bsm;
    wrong.required_click.push_back(tc.d3_wrong);
    return {click_pattern_probability(st, tc.circuit, corr),
            click_pattern_probability(st, tc.circuit, wrong)};
}

}  // namespace

DecoyRow simulate_decoy_row(const ScenarioParams& p) {
    DecoyRow row;
    row.mu = p.mu_a;
    if (p.input_state == InputState::plus) {
        auto r = teleport_fidelity_plus(p);
        row.gain = r.rate_max + r.rate_min;
        row.fidelity = p.mu_a == 0.0 ? 0.5 : r.fidelity;
    } else {
        auto [correct, wrong] = z_outcomes_engine(p);
        row.gain = correct + wrong;
        row.fidelity = p.mu_a == 0.0 ? 0.5 : correct / (correct + wrong);
    }
    return row;
}

double single_photon_teleport_fidelity(const ScenarioParams& p, int cutoff) {
    if (p.input_state == InputState::plus) {
        // locate the fringe extrema on the coherent model, then evaluate the
        // single-photon rates at those phases
        auto plus = teleport_fidelity_plus(p);
        auto rate1 = [&](double phi) {
            TeleportCircuit tc = teleportation_circuit_single_photon(p, phi);
            ClickPattern pat = tc.bsm;
            pat.required_click.push_back(tc.d3_port1);
            return fock::evaluate_click_probability(tc.circuit, pat, cutoff);
        };
        double rx = rate1(plus.phi_max);
        double rn = rate1(plus.phi_min);
        if (rx < rn) std::swap(rx, rn);
        return rx / (rx + rn);
    }
    TeleportCircuit tc = teleportation_circuit_single_photon(p);
    fock::FockState st = fock::build_input(tc.circuit, cutoff);
    fock::propagate(st, tc.circuit);
    ClickPattern corr = tc.bsm;
    corr.required_click.push_back(tc.d3_correct);
    ClickPattern wrong = tc.bsm;
    wrong.required_click.push_back(tc.d3_wrong);
    double pc = fock::click_pattern_probability_fock(st, tc.circuit, corr);
    double pw = fock::click_pattern_probability_fock(st, tc.circuit, wrong);
    return pc / (pc + pw);
}

}  // namespace tbsim
