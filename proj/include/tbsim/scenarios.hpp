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
//
// Experiment builders: Hong-Ou-Mandel interference, time-bin teleportation
// with a Psi-minus Bell-state measurement, entanglement-visibility fringes,
// and the closed-form three-fold coincidence probability they are checked
// against.
//
// Distinguishability wiring: each of the two interfering paths (weak-coherent
// qubit and pair-source idler) passes a virtual beam splitter of amplitude
// transmittance sqrt(zeta), so the interfering amplitude of the pair is zeta
// and the interfering intensity fraction is zeta^2. Components routed to the
// orthogonal outputs still reach the same physical detectors through their
// own 50/50 splitters.

#ifndef TBSIM_SCENARIOS_HPP
#define TBSIM_SCENARIOS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "tbsim/circuit.hpp"
#include "tbsim/common.hpp"
#include "tbsim/gaussian.hpp"

namespace tbsim {

enum class InputState { early, late, plus };

struct ScenarioParams {
    double mu_a = 2.6e-3;   // mean photons per qubit, weak-coherent side
    double mu_b = 8.0e-3;   // mean pairs per time bin
    double zeta = 0.90;     // pair indistinguishability; interfering intensity fraction zeta^2
    double eta_i = 1.2e-2;  // idler end-to-end transmission-detection efficiency
    double eta_s = 4.5e-3;  // signal end-to-end transmission-detection efficiency
    double dark_prob = 2.5 * 800e-12;  // per detector per 800 ps window
    double mzi_visibility = 0.985;
    double sigma_pulse_ps = 300.0;  // 1/e pulse duration
    double bin_separation_ps = 2000.0;
    double bin_duration_ps = 800.0;
    double clock_hz = 90e6;
    // Intensity-modulator extinction ratio: fraction 10^(-db/10) of the qubit
    // intensity leaks into the nominally empty bin of |e>/|l> inputs.
    double extinction_db = 22.0;
    InputState input_state = InputState::plus;
    std::vector<double> phase_grid;    // MZI phases (radians)
    std::vector<double> delta_t_grid;  // arrival-time offsets (ps)

    double gamma() const {
        switch (input_state) {
            case InputState::early: return 1.0;
            case InputState::late: return 0.0;
            case InputState::plus: return 1.0 / std::sqrt(2.0);
        }
        return 1.0;
    }

    double bin_leak() const {
        return std::isinf(extinction_db) ? 0.0 : std::pow(10.0, -extinction_db / 10.0);
    }

    // All imperfections off: unit efficiencies, no darks, perfect overlap,
    // perfect interferometer, ideal pulse carving.
    static ScenarioParams ideal() {
        ScenarioParams p;
        p.zeta = 1.0;
        p.eta_i = 1.0;
        p.eta_s = 1.0;
        p.dark_prob = 0.0;
        p.mzi_visibility = 1.0;
        p.extinction_db = std::numeric_limits<double>::infinity();
        return p;
    }

    void validate() const;
};

// Second-splitter amplitude transmittance that makes a coherent-state fringe
// show the configured interferometer visibility: tau^2 = (1 + sqrt(1-V^2))/2.
double mzi_imbalance_transmittance(double visibility);

// ----- circuits -----

// HOM configuration (7 modes): weak-coherent qubit and idler interfere at the
// 50/50 splitter; D1/D2 behind the splitter, D3 on the signal.
OpticalCircuit hom_circuit(const ScenarioParams& p, double zeta);

struct TeleportCircuit {
    OpticalCircuit circuit;
    ClickPattern bsm;          // D1 early and D2 late (Psi-minus)
    std::string d3_correct;    // z-configuration: flipped-bin detector id
    std::string d3_wrong;
    std::string d3_port1;      // x-configuration: MZI middle-bin ports
    std::string d3_port2;
};

// Ten-mode teleportation circuit. With measure_phase set, the signal passes
// the imbalanced MZI and D3 monitors a middle-bin port; otherwise D3e/D3l
// time-resolve the signal bins directly.
TeleportCircuit teleportation_circuit(const ScenarioParams& p);
TeleportCircuit teleportation_circuit(const ScenarioParams& p, double measure_phase);
// Same wiring with the weak-coherent qubit replaced by one genuine photon
// (Fock-oracle evaluations for the decoy bounds).
TeleportCircuit teleportation_circuit_single_photon(const ScenarioParams& p);
TeleportCircuit teleportation_circuit_single_photon(const ScenarioParams& p,
                                                    double measure_phase);

// Both pair members analyzed by the same MZI (idler delayed so its bins are
// distinct); coincidences between opposite output ports.
OpticalCircuit entanglement_circuit(const ScenarioParams& p, double phase);

// ----- closed form and observables -----

// Six-term closed form for the three-fold coincidence probability of the HOM
// configuration (no dark counts).
template <class R>
R p3f_closed_form(R mu_a, R mu_b, R eta_i, R eta_s, R zeta) {
    R z2 = zeta * zeta;
    R xi = eta_i * mu_b;
    R xs = eta_s * mu_b;
    R d2 = R(1) + xi / R(2);
    R t2 = R(2) * real_exp(-(mu_a / R(2)) * (R(1) + (R(1) - z2) * xi / R(2)) / d2) / d2;
    R t3 = R(1) / (R(1) + xs);
    R t4 = real_exp(-mu_a) / (R(1) + xi);
    R d5 = R(1) + (R(1) - eta_s) * xi + xs;
    R t5 = real_exp(-mu_a) / d5;
    R d6 = R(1) + (R(1) - eta_s) * xi / R(2) + xs;
    R t6 = R(2) *
           real_exp(-(mu_a / R(2)) * (R(1) + (R(1) - z2) * (R(1) - eta_s) * xi / R(2) + xs) / d6) /
           d6;
    return R(1) - t2 - t3 + t4 - t5 + t6;
}

double p3f_closed_form(const ScenarioParams& p, double zeta);

// Engine evaluation of the same quantity (dark counts from params).
template <class R = double>
R p3f_engine(const ScenarioParams& p, double zeta) {
    OpticalCircuit c = hom_circuit(p, zeta);
    return click_pattern_probability<R>(c, ClickPattern{{"D1", "D2", "D3"}, {}});
}

// V_HOM = [P3f(0) - P3f(zeta)] / P3f(0), from the closed form.
double hom_visibility(const ScenarioParams& p);

struct DipPoint {
    double delta_t_ps;
    double rate_hz;
};

// Three-fold rate vs arrival-time offset, zeta(dt) = zeta0 exp(-dt^2/(4 sigma^2)).
std::vector<DipPoint> hom_dip_curve(const ScenarioParams& p);

struct ZFidelityResult {
    double fidelity;
    double p_bsm;          // heralding probability per clock cycle
    double p_correct;      // P(BSM and flipped-bin click)
    double p_any;          // P(BSM and any-bin click)
};

// F = P(correct-bin D3 click | BSM) / P(any-bin D3 click | BSM); the correct
// bin is the flipped one (the measurement heralds -i sigma_y applied to the
// input).
ZFidelityResult teleport_fidelity_z(const ScenarioParams& p);

struct PlusFidelityResult {
    double fidelity;       // (1 + V)/2, equal to Rmax/(Rmax+Rmin)
    double visibility;
    double phi_max;        // phase of maximum three-fold rate
    double phi_min;
    double rate_max;
    double rate_min;
};

// Sweeps the MZI phase through the engine; extrema refined by golden-section
// search so interferometer imbalance shifts them correctly.
PlusFidelityResult teleport_fidelity_plus(const ScenarioParams& p);

// Three-fold rate (per clock cycle) of the plus-teleportation configuration
// at one MZI phase, port 1 or 2.
double teleport_plus_rate(const ScenarioParams& p, double phase, bool port2 = false);

struct FringeResult {
    std::vector<double> phases;
    std::vector<double> rates;  // coincidence probability per clock cycle
    double visibility;
};

FringeResult entanglement_fringe(const ScenarioParams& p);

// ----- exact conversions -----

inline double entanglement_fidelity_from_visibility(double v_ent) {
    return (3.0 * v_ent + 1.0) / 4.0;
}
inline double plus_fidelity_from_visibility(double v_plus) { return (1.0 + v_plus) / 2.0; }
inline double average_teleport_fidelity(double f_e, double f_l, double f_plus) {
    return (f_e + f_l + 4.0 * f_plus) / 6.0;
}

}  // namespace tbsim

#endif
