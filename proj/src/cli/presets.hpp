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

#ifndef TBSIM_CLI_PRESETS_HPP
#define TBSIM_CLI_PRESETS_HPP

#include <string>

#include "tbsim/scenarios.hpp"

namespace tbsim::cli {

// The "paper" preset pins the deployed-system operating point:
//   mu_B = 8.0e-3 pairs per bin, eta_i = 1.2e-2, eta_s = 4.5e-3,
//   zeta = 0.90, dark rate 2.5 Hz over 800 ps windows, MZI visibility 0.985,
//   sigma = 300 ps, clock 90 MHz, 22 dB pulse extinction.
// Per-scenario qubit intensities: hom 2.6e-3, teleport-z 3.53e-2,
// teleport-x 9.38e-3.
ScenarioParams preset_params(const std::string& preset, const std::string& scenario);

// Applies "name=value" to a parameter record; throws config_error for
// unknown names or malformed values.
void apply_param(ScenarioParams& p, const std::string& name, const std::string& value);

double get_param(const ScenarioParams& p, const std::string& name);

// Canonical string of every field (for config hashing).
std::string canonical_string(const ScenarioParams& p);

}  // namespace tbsim::cli

#endif
