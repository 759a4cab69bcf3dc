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
// Decoy-analysis plumbing shared by the CLI recipes and the validation
// suites: weak-coherent gain/fidelity points from the Gaussian engine, and
// the genuine single-photon fidelity from the Fock oracle.

#ifndef TBSIM_VALIDATION_HPP
#define TBSIM_VALIDATION_HPP

#include "tbsim/decoy.hpp"
#include "tbsim/scenarios.hpp"

namespace tbsim {

// Gain is the sum of correct- and wrong-outcome heralded three-fold
// probabilities (linear in the input state, as the decoy identities assume);
// fidelity is correct/(correct + wrong). The vacuum row (mu_a = 0) reports
// fidelity 0.5 by convention.
DecoyRow simulate_decoy_row(const ScenarioParams& p);

// Same conditional fidelity with the weak-coherent qubit replaced by one
// genuine photon, evaluated in the truncated Fock basis.
double single_photon_teleport_fidelity(const ScenarioParams& p, int cutoff = 5);

}  // namespace tbsim

#endif
