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

#include "tbsim/fock.hpp"

#include <array>
#include <cmath>

namespace tbsim::fock {

namespace {

// sqrt(n!) and binomials up to the packing limit
struct Tables {
    std::array<double, kMaxPhotonsPerMode + 1> sqrt_fact{};
    std::array<std::array<double, kMaxPhotonsPerMode + 1>, kMaxPhotonsPerMode + 1> binom{};
    Tables() {
        sqrt_fact[0] = 1.0;
        for (int n = 1; n <= kMaxPhotonsPerMode; ++n)
            sqrt_fact[n] = sqrt_fact[n - 1] * std::sqrt(static_cast<double>(n));
        for (int n = 0; n <= kMaxPhotonsPerMode; ++n) {
            binom[n][0] = 1.0;
            for (int k = 1; k <= n; ++k)
                binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
        }
    }
};
const Tables& tables() {
    static const Tables t;
    return t;
}

// Tensor a single-mode expansion into the state, dropping tuples beyond the
// total-photon cutoff.
void tensor_mode(FockState& state, const std::vector<Amplitude>& mode_amps) {
    int mode = state.add_mode();
    FockState::Map next;
    next.reserve(state.amplitudes().size() * mode_amps.size());
    for (const auto& [key, amp] : state.amplitudes()) {
        int used = FockState::total_photons(key);
        for (int n = 0; n < static_cast<int>(mode_amps.size()); ++n) {
            if (used + n > state.cutoff()) break;
            if (mode_amps[n] == Amplitude(0.0, 0.0)) continue;
            next[FockState::with_occupation(key, mode, n)] = amp * mode_amps[n];
        }
    }
    state.amplitudes() = std::move(next);
}

// Two-mode correlated source (TMSV): diagonal |nn> expansion.
void tensor_pair(FockState& state, const std::vector<Amplitude>& pair_amps) {
    int m1 = state.add_mode();
    int m2 = state.add_mode();
    FockState::Map next;
    next.reserve(state.amplitudes().size() * pair_amps.size());
    for (const auto& [key, amp] : state.amplitudes()) {
        int used = FockState::total_photons(key);
        for (int n = 0; n < static_cast<int>(pair_amps.size()); ++n) {
            if (used + 2 * n > state.cutoff()) break;
            std::uint64_t k2 = FockState::with_occupation(key, m1, n);
            k2 = FockState::with_occupation(k2, m2, n);
            next[k2] = amp * pair_amps[n];
        }
    }
    state.amplitudes() = std::move(next);
}

void apply_phase(FockState& state, int mode, double phase) {
    for (auto& [key, amp] : state.amplitudes()) {
        int n = FockState::occupation(key, mode);
        if (n) amp *= std::polar(1.0, phase * n);
    }
}

// a'_i = t a_i + r e^{i phase} a_j in the Heisenberg picture; on kets the
// creation operators map as
//   adag_i -> t adag_i - r e^{-i phase} adag_j,
//   adag_j -> r e^{i phase} adag_i + t adag_j.
void apply_beam_splitter(FockState& state, int mi, int mj, double t, double phase,
                         std::size_t max_entries) {
    const auto& tb = tables();
    double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    Amplitude cross_i = -r * std::polar(1.0, -phase);  // adag_i's a_j' coefficient
    Amplitude cross_j = r * std::polar(1.0, phase);    // adag_j's a_i' coefficient

    FockState::Map next;
    next.reserve(state.amplitudes().size() * 2);
    for (const auto& [key, amp] : state.amplitudes()) {
        int ni = FockState::occupation(key, mi);
        int nj = FockState::occupation(key, mj);
        if (ni == 0 && nj == 0) {
            next[key] += amp;
            continue;
        }
        Amplitude base = amp / (tb.sqrt_fact[ni] * tb.sqrt_fact[nj]);
        // (t adag_i' + cross_i adag_j')^ni (cross_j adag_i' + t adag_j')^nj
        for (int k = 0; k <= ni; ++k) {
            Amplitude term_i = tb.binom[ni][k] * std::pow(t, k) *
                               (ni - k ? std::pow(cross_i, ni - k) : Amplitude(1.0, 0.0));
            for (int m = 0; m <= nj; ++m) {
                Amplitude term_j = tb.binom[nj][m] *
                                   (m ? std::pow(cross_j, m) : Amplitude(1.0, 0.0)) *
                                   std::pow(t, nj - m);
                int pi = k + m;
                int pj = ni + nj - pi;
                if (pi > kMaxPhotonsPerMode || pj > kMaxPhotonsPerMode) continue;
                std::uint64_t k2 = FockState::with_occupation(key, mi, pi);
                k2 = FockState::with_occupation(k2, mj, pj);
                next[k2] += base * term_i * term_j * tb.sqrt_fact[pi] * tb.sqrt_fact[pj];
            }
        }
        if (next.size() > max_entries)
            throw resource_error("Fock amplitude map exceeded its size budget");
    }
    // prune exact and near-exact zeros to keep the map compact
    for (auto it = next.begin(); it != next.end();) {
        if (std::norm(it->second) < 1e-36)
            it = next.erase(it);
        else
            ++it;
    }
    state.amplitudes() = std::move(next);
}

}  // namespace

FockState build_input(const OpticalCircuit& circuit, int cutoff) {
    circuit.validate();
    if (cutoff < 1) throw config_error("Fock cutoff must be >= 1");
    FockState state(0, cutoff);
    for (const auto& e : circuit.elements) {
        if (!is_source(e)) break;
        if (auto* c = std::get_if<CoherentSource>(&e)) {
            // e^{-mu/2} alpha^n / sqrt(n!), alpha = sqrt(mu) e^{i phase}
            std::vector<Amplitude> amps(static_cast<size_t>(cutoff) + 1);
            Amplitude alpha = std::polar(std::sqrt(c->mu), c->phase);
            Amplitude a(std::exp(-c->mu / 2.0), 0.0);
            for (int n = 0; n <= cutoff; ++n) {
                amps[n] = a;
                a *= alpha / std::sqrt(static_cast<double>(n + 1));
            }
            tensor_mode(state, amps);
        } else if (auto* t = std::get_if<TmsvSource>(&e)) {
            // sqrt(1-p) p^{n/2} |nn>, p = mu/(1+mu)
            double p = t->mu / (1.0 + t->mu);
            std::vector<Amplitude> amps(static_cast<size_t>(cutoff / 2) + 1);
            double a = std::sqrt(1.0 - p);
            for (int n = 0; n <= cutoff / 2; ++n) {
                amps[n] = Amplitude(a, 0.0);
                a *= std::sqrt(p);
            }
            tensor_pair(state, amps);
        } else if (auto* s = std::get_if<SinglePhotonQubitSource>(&e)) {
            int me = state.add_mode();
            int ml = state.add_mode();
            FockState::Map next;
            double g = s->gamma;
            double gl = std::sqrt(std::max(0.0, 1.0 - g * g));
            for (const auto& [key, amp] : state.amplitudes()) {
                if (FockState::total_photons(key) + 1 > cutoff) continue;
                if (g != 0.0) next[FockState::with_occupation(key, me, 1)] += amp * g;
                if (gl != 0.0) next[FockState::with_occupation(key, ml, 1)] += amp * gl;
            }
            state.amplitudes() = std::move(next);
        } else if (auto* v = std::get_if<VacuumSource>(&e)) {
            for (int k = 0; k < v->count; ++k) state.add_mode();
        }
    }
    return state;
}

void propagate(FockState& state, const OpticalCircuit& circuit, std::size_t max_entries) {
    for (const auto& e : circuit.elements) {
        if (is_source(e)) continue;
        if (auto* b = std::get_if<BeamSplitter>(&e)) {
            apply_beam_splitter(state, b->mode_a, b->mode_b, b->transmittance, b->phase,
                                max_entries);
        } else if (auto* p = std::get_if<PhaseShift>(&e)) {
            apply_phase(state, p->mode, p->phase);
        } else if (auto* l = std::get_if<Loss>(&e)) {
            if (l->efficiency >= 1.0) continue;
            int env = state.add_mode();
            apply_beam_splitter(state, l->mode, env, std::sqrt(l->efficiency), 0.0, max_entries);
        }
    }
}

double click_pattern_probability_fock(const FockState& state, const OpticalCircuit& circuit,
                                      const ClickPattern& pattern) {
    validate_pattern(circuit, pattern);
    struct Det {
        const Detector* d;
        bool click;
    };
    std::vector<Det> dets;
    for (const auto& id : pattern.required_click) dets.push_back({&circuit.detector(id), true});
    for (const auto& id : pattern.required_no_click) dets.push_back({&circuit.detector(id), false});

    double prob = 0.0;
    for (const auto& [key, amp] : state.amplitudes()) {
        double w = std::norm(amp);
        if (w == 0.0) continue;
        for (const auto& det : dets) {
            int n = 0;
            for (int m : det.d->modes) n += FockState::occupation(key, m);
            double p_silent =
                std::pow(1.0 - det.d->efficiency, n) * (1.0 - det.d->dark_prob);
            w *= det.click ? (1.0 - p_silent) : p_silent;
            if (w == 0.0) break;
        }
        prob += w;
    }
    return prob;
}

double evaluate_click_probability(const OpticalCircuit& circuit, const ClickPattern& pattern,
                                  int cutoff, std::size_t max_entries) {
    FockState state = build_input(circuit, cutoff);
    propagate(state, circuit, max_entries);
    return click_pattern_probability_fock(state, circuit, pattern);
}

}  // namespace tbsim::fock
