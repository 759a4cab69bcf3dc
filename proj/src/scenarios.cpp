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

#include "tbsim/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace tbsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw config_error(std::string(what) + " outside [0,1]");
}

// Extremum refinement on a smooth periodic rate curve.
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, bool maximize) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-11; ++it) {
        bool keep_left = maximize ? (f1 > f2) : (f1 < f2);
        if (keep_left) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace

void ScenarioParams::validate() const {
    if (mu_a < 0 || mu_b < 0) throw config_error("mean photon numbers must be >= 0");
    check_unit(zeta, "zeta");
    check_unit(eta_i, "eta_i");
    check_unit(eta_s, "eta_s");
    check_unit(dark_prob, "dark probability");
    check_unit(mzi_visibility, "MZI visibility");
    if (sigma_pulse_ps <= 0) throw config_error("pulse duration must be positive");
    if (bin_duration_ps <= 0 || bin_separation_ps <= 0)
        throw config_error("bin geometry must be positive");
    if (clock_hz <= 0) throw config_error("clock rate must be positive");
    if (!(extinction_db > 0)) throw config_error("extinction ratio must be positive dB");
}

double mzi_imbalance_transmittance(double visibility) {
    check_unit(visibility, "MZI visibility");
    return std::sqrt((1.0 + std::sqrt(1.0 - visibility * visibility)) / 2.0);
}

OpticalCircuit hom_circuit(const ScenarioParams& p, double zeta) {
    p.validate();
    check_unit(zeta, "zeta");
    const double tz = std::sqrt(zeta);
    OpticalCircuit c;
    c.add(CoherentSource{p.mu_a, 0.0});  // 0: qubit
    c.add(VacuumSource{1});              // 1: qubit, non-interfering part
    c.add(TmsvSource{p.mu_b});           // 2: signal, 3: idler
    c.add(VacuumSource{3});              // 4: idler non-interfering, 5-6: splitter partners
    c.add(Loss{2, p.eta_s});
    c.add(Loss{3, p.eta_i});
    c.add(BeamSplitter{0, 1, tz, 0.0});  // virtual splitters
    c.add(BeamSplitter{3, 4, tz, 0.0});
    c.add(BeamSplitter{0, 3, kInvSqrt2, 0.0});  // interference at the 50/50
    c.add(BeamSplitter{1, 5, kInvSqrt2, 0.0});
    c.add(BeamSplitter{4, 6, kInvSqrt2, 0.0});
    c.add_detector({"D1", {0, 1, 4}, 1.0, p.dark_prob});
    c.add_detector({"D2", {3, 5, 6}, 1.0, p.dark_prob});
    c.add_detector({"D3", {2}, 1.0, p.dark_prob});
    return c;
}

namespace {

TeleportCircuit build_teleport(const ScenarioParams& p, bool with_mzi, double phase,
                               bool single_photon) {
    p.validate();
    const double tz = std::sqrt(p.zeta);
    const double leak = p.bin_leak();
    double g2 = p.gamma() * p.gamma();
    if (p.input_state != InputState::plus) {
        // finite pulse extinction leaks intensity into the empty bin
        g2 = p.input_state == InputState::early ? 1.0 - leak : leak;
    }

    TeleportCircuit tc;
    OpticalCircuit& c = tc.circuit;
    if (single_photon) {
        double gamma = std::sqrt(g2);
        c.add(SinglePhotonQubitSource{gamma});  // 0: early, 1: late
    } else {
        c.add(CoherentSource{p.mu_a * g2, 0.0});          // 0: qubit early
        c.add(CoherentSource{p.mu_a * (1.0 - g2), 0.0});  // 1: qubit late
    }
    c.add(TmsvSource{p.mu_b});  // 2: signal early, 3: idler early
    c.add(TmsvSource{p.mu_b});  // 4: signal late,  5: idler late
    c.add(VacuumSource{4});     // 6,7: qubit non-interfering e/l; 8,9: idler e/l
    c.add(Loss{2, p.eta_s});
    c.add(Loss{4, p.eta_s});
    c.add(Loss{3, p.eta_i});
    c.add(Loss{5, p.eta_i});
    c.add(BeamSplitter{0, 6, tz, 0.0});
    c.add(BeamSplitter{1, 7, tz, 0.0});
    c.add(BeamSplitter{3, 8, tz, 0.0});
    c.add(BeamSplitter{5, 9, tz, 0.0});
    c.add(BeamSplitter{0, 3, kInvSqrt2, 0.0});  // 50/50, early bin
    c.add(BeamSplitter{1, 5, kInvSqrt2, 0.0});  // 50/50, late bin
    // Non-interfering halves that reach the detector window not used by the
    // Psi-minus pattern are traced out.
    c.add(Loss{6, 0.5});
    c.add(Loss{7, 0.5});
    c.add(Loss{8, 0.5});
    c.add(Loss{9, 0.5});
    if (with_mzi) {
        // Middle-bin projection: half of each bin's amplitude leaves through
        // the side bins, the rest interferes on the imbalanced splitter.
        const double tau = mzi_imbalance_transmittance(p.mzi_visibility);
        c.add(Loss{2, 0.5});
        c.add(Loss{4, 0.5});
        c.add(PhaseShift{2, phase});
        c.add(BeamSplitter{2, 4, tau, 0.0});
        c.add_detector({"D3", {2}, 1.0, p.dark_prob});
        c.add_detector({"D3b", {4}, 1.0, p.dark_prob});
        tc.d3_port1 = "D3";
        tc.d3_port2 = "D3b";
    } else {
        c.add_detector({"D3e", {2}, 1.0, p.dark_prob});
        c.add_detector({"D3l", {4}, 1.0, p.dark_prob});
        bool early_in = p.input_state == InputState::early;
        tc.d3_correct = early_in ? "D3l" : "D3e";  // heralded output is bin-flipped
        tc.d3_wrong = early_in ? "D3e" : "D3l";
    }
    c.add_detector({"D1e", {0, 6, 8}, 1.0, p.dark_prob});
    c.add_detector({"D2l", {5, 7, 9}, 1.0, p.dark_prob});
    tc.bsm = ClickPattern{{"D1e", "D2l"}, {}};
    return tc;
}

}  // namespace

TeleportCircuit teleportation_circuit(const ScenarioParams& p) {
    return build_teleport(p, false, 0.0, false);
}
TeleportCircuit teleportation_circuit(const ScenarioParams& p, double measure_phase) {
    return build_teleport(p, true, measure_phase, false);
}
TeleportCircuit teleportation_circuit_single_photon(const ScenarioParams& p) {
    return build_teleport(p, false, 0.0, true);
}
TeleportCircuit teleportation_circuit_single_photon(const ScenarioParams& p,
                                                    double measure_phase) {
    return build_teleport(p, true, measure_phase, true);
}

OpticalCircuit entanglement_circuit(const ScenarioParams& p, double phase) {
    p.validate();
    const double tau = mzi_imbalance_transmittance(p.mzi_visibility);
    OpticalCircuit c;
    c.add(TmsvSource{p.mu_b});  // 0: signal early, 1: idler early
    c.add(TmsvSource{p.mu_b});  // 2: signal late,  3: idler late
    c.add(Loss{0, p.eta_s});
    c.add(Loss{2, p.eta_s});
    c.add(Loss{1, p.eta_i});
    c.add(Loss{3, p.eta_i});
    c.add(Loss{0, 0.5});
    c.add(Loss{2, 0.5});
    c.add(PhaseShift{0, phase});
    c.add(BeamSplitter{0, 2, tau, 0.0});
    c.add(Loss{1, 0.5});
    c.add(Loss{3, 0.5});
    c.add(PhaseShift{1, phase});
    c.add(BeamSplitter{1, 3, tau, 0.0});
    c.add_detector({"Ds1", {0}, 1.0, p.dark_prob});
    c.add_detector({"Ds2", {2}, 1.0, p.dark_prob});
    c.add_detector({"Di1", {1}, 1.0, p.dark_prob});
    c.add_detector({"Di2", {3}, 1.0, p.dark_prob});
    return c;
}

double p3f_closed_form(const ScenarioParams& p, double zeta) {
    return p3f_closed_form<double>(p.mu_a, p.mu_b, p.eta_i, p.eta_s, zeta);
}

double hom_visibility(const ScenarioParams& p) {
    if (p.mu_a == 0.0) return 0.0;
    double p0 = p3f_closed_form(p, 0.0);
    if (p0 <= 0.0) throw numerical_error("HOM visibility undefined: P3f(0) = 0");
    return (p0 - p3f_closed_form(p, p.zeta)) / p0;
}

std::vector<DipPoint> hom_dip_curve(const ScenarioParams& p) {
    if (p.delta_t_grid.empty()) throw config_error("hom_dip_curve needs a delta_t grid");
    std::vector<DipPoint> out;
    out.reserve(p.delta_t_grid.size());
    for (double dt : p.delta_t_grid) {
        double overlap = std::exp(-dt * dt / (4.0 * p.sigma_pulse_ps * p.sigma_pulse_ps));
        double zeta_dt = p.zeta * overlap;
        double prob = p3f_engine(p, zeta_dt);
        out.push_back({dt, prob * p.clock_hz});
    }
    return out;
}

ZFidelityResult teleport_fidelity_z(const ScenarioParams& p) {
    if (p.input_state == InputState::plus)
        throw config_error("teleport_fidelity_z needs an early or late input state");
    TeleportCircuit tc = teleportation_circuit(p);
    GaussianState<double> st = evaluate_circuit<double>(tc.circuit);
    double p_bsm = click_pattern_probability(st, tc.circuit, tc.bsm);
    ClickPattern corr = tc.bsm;
    corr.required_click.push_back(tc.d3_correct);
    double p_correct = click_pattern_probability(st, tc.circuit, corr);
    ClickPattern none = tc.bsm;
    none.required_no_click = {tc.d3_correct, tc.d3_wrong};
    double p_any = p_bsm - click_pattern_probability(st, tc.circuit, none);
    if (p_any <= 0.0) throw numerical_error("teleport fidelity undefined: no heralded clicks");
    return {p_correct / p_any, p_bsm, p_correct, p_any};
}

double teleport_plus_rate(const ScenarioParams& p, double phase, bool port2) {
    ScenarioParams q = p;
    q.input_state = InputState::plus;
    TeleportCircuit tc = teleportation_circuit(q, phase);
    ClickPattern pat = tc.bsm;
    pat.required_click.push_back(port2 ? tc.d3_port2 : tc.d3_port1);
    return click_pattern_probability<double>(tc.circuit, pat);
}

PlusFidelityResult teleport_fidelity_plus(const ScenarioParams& p) {
    if (p.input_state != InputState::plus)
        throw config_error("teleport_fidelity_plus needs the plus input state");
    std::vector<double> grid = p.phase_grid;
    if (grid.empty()) {
        for (int k = 0; k < 32; ++k) grid.push_back(2.0 * M_PI * k / 32.0);
    }
    double span = *std::max_element(grid.begin(), grid.end()) -
                  *std::min_element(grid.begin(), grid.end());
    if (grid.size() >= 2 && span < 2.0 * M_PI * (1.0 - 1.0 / static_cast<double>(grid.size())))
        throw config_error("phase grid must span a full period");

    std::sort(grid.begin(), grid.end());
    auto rate = [&](double phi) { return teleport_plus_rate(p, phi, false); };
    std::vector<double> rates(grid.size());
    size_t imax = 0, imin = 0;
    for (size_t k = 0; k < grid.size(); ++k) {
        rates[k] = rate(grid[k]);
        if (rates[k] > rates[imax]) imax = k;
        if (rates[k] < rates[imin]) imin = k;
    }
    // bracket each extremum by its cyclic grid neighbours
    auto bracket = [&](size_t k) {
        double left = k > 0 ? grid[k - 1] : grid.back() - 2.0 * M_PI;
        double right = k + 1 < grid.size() ? grid[k + 1] : grid.front() + 2.0 * M_PI;
        return std::pair<double, double>(left, right);
    };
    auto [lo_max, hi_max] = bracket(imax);
    auto [lo_min, hi_min] = bracket(imin);
    auto [phi_max, r_max] = golden_section(rate, lo_max, hi_max, true);
    auto [phi_min, r_min] = golden_section(rate, lo_min, hi_min, false);
    if (r_max + r_min <= 0.0)
        throw numerical_error("teleport fidelity undefined: zero heralded rate");
    double v = (r_max - r_min) / (r_max + r_min);
    return {(1.0 + v) / 2.0, v, phi_max, phi_min, r_max, r_min};
}

FringeResult entanglement_fringe(const ScenarioParams& p) {
    std::vector<double> grid = p.phase_grid;
    if (grid.empty()) {
        for (int k = 0; k < 48; ++k) grid.push_back(2.0 * M_PI * k / 48.0);
    }
    FringeResult out;
    out.phases = grid;
    out.rates.reserve(grid.size());
    double rx = 0.0, rn = std::numeric_limits<double>::infinity();
    for (double phi : grid) {
        OpticalCircuit c = entanglement_circuit(p, phi);
        double r = click_pattern_probability<double>(c, ClickPattern{{"Ds1", "Di2"}, {}});
        out.rates.push_back(r);
        rx = std::max(rx, r);
        rn = std::min(rn, r);
    }
    if (rx + rn <= 0.0) throw numerical_error("entanglement fringe has zero rate");
    out.visibility = (rx - rn) / (rx + rn);
    return out;
}

}  // namespace tbsim
