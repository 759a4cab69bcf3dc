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

#include "tbsim/circuit.hpp"

#include <set>

namespace tbsim {

namespace {

void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw config_error(std::string(what) + " outside [0,1]");
}

}  // namespace

void OpticalCircuit::validate() const {
    int n = 0;
    bool transforms_started = false;
    for (const auto& e : elements) {
        if (is_source(e)) {
            if (transforms_started)
                throw config_error("source elements must precede transform elements");
            if (auto* c = std::get_if<CoherentSource>(&e)) {
                if (c->mu < 0) throw config_error("coherent source: mu must be >= 0");
            } else if (auto* t = std::get_if<TmsvSource>(&e)) {
                if (t->mu < 0) throw config_error("TMSV source: mu must be >= 0");
            } else if (auto* s = std::get_if<SinglePhotonQubitSource>(&e)) {
                check_unit_interval(s->gamma, "single-photon qubit gamma");
            } else if (auto* v = std::get_if<VacuumSource>(&e)) {
                if (v->count < 1) throw config_error("vacuum source: count must be >= 1");
            }
            n += modes_added(e);
            continue;
        }
        transforms_started = true;
        if (auto* b = std::get_if<BeamSplitter>(&e)) {
            if (b->mode_a < 0 || b->mode_a >= n || b->mode_b < 0 || b->mode_b >= n)
                throw config_error("beam splitter mode index out of range");
            if (b->mode_a == b->mode_b)
                throw config_error("beam splitter needs two distinct modes");
            check_unit_interval(b->transmittance, "beam splitter transmittance");
        } else if (auto* p = std::get_if<PhaseShift>(&e)) {
            if (p->mode < 0 || p->mode >= n) throw config_error("phase shift mode index out of range");
        } else if (auto* l = std::get_if<Loss>(&e)) {
            if (l->mode < 0 || l->mode >= n) throw config_error("loss mode index out of range");
            check_unit_interval(l->efficiency, "loss efficiency");
        }
    }

    std::set<int> seen;
    std::set<std::string> ids;
    for (const auto& d : detectors) {
        if (d.id.empty()) throw config_error("detector id must be non-empty");
        if (!ids.insert(d.id).second) throw config_error("duplicate detector id: " + d.id);
        if (d.modes.empty()) throw config_error("detector " + d.id + " monitors no modes");
        check_unit_interval(d.efficiency, ("detector " + d.id + " efficiency").c_str());
        check_unit_interval(d.dark_prob, ("detector " + d.id + " dark probability").c_str());
        for (int m : d.modes) {
            if (m < 0 || m >= n)
                throw config_error("detector " + d.id + " monitors an out-of-range mode");
            if (!seen.insert(m).second)
                throw config_error("detector mode sets must be disjoint (mode " +
                                   std::to_string(m) + ")");
        }
    }
}

void validate_pattern(const OpticalCircuit& circuit, const ClickPattern& pattern) {
    std::set<std::string> click_set;
    for (const auto& id : pattern.required_click) {
        circuit.detector(id);  // throws on unknown id
        if (!click_set.insert(id).second)
            throw config_error("pattern lists detector twice: " + id);
    }
    for (const auto& id : pattern.required_no_click) {
        circuit.detector(id);
        if (click_set.count(id))
            throw config_error("pattern requires " + id + " to both click and stay silent");
    }
}

}  // namespace tbsim
