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

#ifndef TBSIM_CIRCUIT_HPP
#define TBSIM_CIRCUIT_HPP

#include <string>
#include <variant>
#include <vector>

#include "tbsim/common.hpp"

namespace tbsim {

// Sources append modes to the state; transforms act on existing mode indices.
// Mode indices refer to the order in which sources appear in the element list.

struct CoherentSource {  // appends 1 mode, mean photon number mu
    double mu = 0.0;
    double phase = 0.0;
};

struct TmsvSource {  // appends 2 modes (signal, idler), mean pairs mu
    double mu = 0.0;
};

// Single photon split over two fresh modes: gamma|10> + sqrt(1-gamma^2)|01>.
// Non-Gaussian; only the Fock oracle accepts it (single-photon reference
// evaluations for the decoy bounds).
struct SinglePhotonQubitSource {
    double gamma = 1.0;
};

struct VacuumSource {  // appends `count` vacuum modes
    int count = 1;
};

struct BeamSplitter {
    int mode_a = 0;
    int mode_b = 0;
    double transmittance = 1.0;  // amplitude transmittance t; a' = t a + r e^{i phase} b
    double phase = 0.0;
};

struct PhaseShift {
    int mode = 0;
    double phase = 0.0;
};

struct Loss {
    int mode = 0;
    double efficiency = 1.0;
};

using Element = std::variant<CoherentSource, TmsvSource, SinglePhotonQubitSource,
                             VacuumSource, BeamSplitter, PhaseShift, Loss>;

inline bool is_source(const Element& e) {
    return std::holds_alternative<CoherentSource>(e) || std::holds_alternative<TmsvSource>(e) ||
           std::holds_alternative<SinglePhotonQubitSource>(e) ||
           std::holds_alternative<VacuumSource>(e);
}

inline int modes_added(const Element& e) {
    if (std::holds_alternative<CoherentSource>(e)) return 1;
    if (std::holds_alternative<TmsvSource>(e)) return 2;
    if (std::holds_alternative<SinglePhotonQubitSource>(e)) return 2;
    if (auto* v = std::get_if<VacuumSource>(&e)) return v->count;
    return 0;
}

// Threshold detector: clicks when any photon lands in one of its modes.
// Detection efficiency is folded in as loss on the monitored modes before
// projection; dark_prob is an independent per-window click probability.
struct Detector {
    std::string id;
    std::vector<int> modes;
    double efficiency = 1.0;
    double dark_prob = 0.0;
};

struct ClickPattern {
    std::vector<std::string> required_click;
    std::vector<std::string> required_no_click;
};

struct OpticalCircuit {
    std::vector<Element> elements;
    std::vector<Detector> detectors;

    int mode_count() const {
        int n = 0;
        for (const auto& e : elements) n += modes_added(e);
        return n;
    }

    OpticalCircuit& add(Element e) {
        elements.push_back(std::move(e));
        return *this;
    }

    OpticalCircuit& add_detector(Detector d) {
        detectors.push_back(std::move(d));
        return *this;
    }

    const Detector& detector(const std::string& id) const {
        for (const auto& d : detectors)
            if (d.id == id) return d;
        throw config_error("unknown detector id: " + id);
    }

    // Index-range, ordering, disjointness and parameter-range checks.
    void validate() const;
};

void validate_pattern(const OpticalCircuit& circuit, const ClickPattern& pattern);

}  // namespace tbsim

#endif
