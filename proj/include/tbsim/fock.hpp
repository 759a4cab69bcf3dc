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
// Truncated Fock-basis simulation of the same optical circuits, used as an
// independent oracle for the Gaussian engine and for true single-photon-input
// evaluations. States stay pure: loss is purified into explicit environment
// modes appended during propagation and traced only at detection.

#ifndef TBSIM_FOCK_HPP
#define TBSIM_FOCK_HPP

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tbsim/circuit.hpp"
#include "tbsim/common.hpp"

namespace tbsim::fock {

using Amplitude = std::complex<double>;

// Occupation tuples are packed 3 bits per mode, so cutoff <= 7 and <= 21 modes.
constexpr int kBitsPerMode = 3;
constexpr int kMaxPhotonsPerMode = (1 << kBitsPerMode) - 1;
constexpr int kMaxModes = 63 / kBitsPerMode;

class FockState {
  public:
    using Map = std::unordered_map<std::uint64_t, Amplitude>;

    FockState(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
        if (cutoff < 1) throw config_error("Fock cutoff must be >= 1");
        if (cutoff > kMaxPhotonsPerMode)
            throw config_error("Fock cutoff exceeds packing limit of 7");
        if (modes < 0 || modes > kMaxModes)
            throw config_error("Fock mode count outside supported range");
        amps_[0] = Amplitude(1.0, 0.0);
    }

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }
    const Map& amplitudes() const { return amps_; }
    Map& amplitudes() { return amps_; }

    static int occupation(std::uint64_t key, int mode) {
        return static_cast<int>((key >> (kBitsPerMode * mode)) & kMaxPhotonsPerMode);
    }

    static std::uint64_t with_occupation(std::uint64_t key, int mode, int n) {
        std::uint64_t mask = std::uint64_t(kMaxPhotonsPerMode) << (kBitsPerMode * mode);
        return (key & ~mask) | (std::uint64_t(n) << (kBitsPerMode * mode));
    }

    static int total_photons(std::uint64_t key) {
        int tot = 0;
        while (key) {
            tot += static_cast<int>(key & kMaxPhotonsPerMode);
            key >>= kBitsPerMode;
        }
        return tot;
    }

    double norm2() const {
        double s = 0.0;
        for (const auto& [k, a] : amps_) s += std::norm(a);
        return s;
    }

    Amplitude amplitude(const std::vector<int>& occupation_tuple) const {
        std::uint64_t key = 0;
        for (size_t m = 0; m < occupation_tuple.size(); ++m)
            key = with_occupation(key, static_cast<int>(m), occupation_tuple[m]);
        auto it = amps_.find(key);
        return it == amps_.end() ? Amplitude(0.0, 0.0) : it->second;
    }

    double probability(const std::vector<int>& occupation_tuple) const {
        return std::norm(amplitude(occupation_tuple));
    }

    int add_mode() {
        if (modes_ + 1 > kMaxModes) throw config_error("Fock mode count exceeds packing limit");
        return modes_++;
    }

  private:
    int modes_;
    int cutoff_;
    Map amps_;
};

// Tensor product of the truncated source expansions, in circuit order.
// Truncation to the total-photon cutoff is NOT renormalized.
FockState build_input(const OpticalCircuit& circuit, int cutoff);

// Applies the transform elements of the circuit. Each lossy element appends
// one purifying environment mode. Throws resource_error when the amplitude
// map exceeds max_entries.
void propagate(FockState& state, const OpticalCircuit& circuit,
               std::size_t max_entries = 4'000'000);

// Threshold detection with per-photon efficiency and independent dark clicks:
//   P(click | n photons at detector) = 1 - (1 - eta)^n (1 - dark).
double click_pattern_probability_fock(const FockState& state, const OpticalCircuit& circuit,
                                      const ClickPattern& pattern);

// build_input + propagate + detect.
double evaluate_click_probability(const OpticalCircuit& circuit, const ClickPattern& pattern,
                                  int cutoff, std::size_t max_entries = 4'000'000);

}  // namespace tbsim::fock

#endif
