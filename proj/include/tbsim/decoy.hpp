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
// Two-intensity-plus-vacuum decoy bounds on the single-photon teleportation
// fidelity. With gains Q and error rates E = 1 - F at intensities mu > nu > 0
// and a vacuum yield Y0:
//   Y1 >= (mu/(mu nu - nu^2)) [Q_nu e^nu - Q_mu e^mu (nu/mu)^2
//                              - ((mu^2-nu^2)/mu^2) Y0]
//   e1 <= (E_nu Q_nu e^nu - e0 Y0) / (nu Y1_lower),   e0 = 1/2
//   F_1 >= 1 - e1_upper.

#ifndef TBSIM_DECOY_HPP
#define TBSIM_DECOY_HPP

#include <map>
#include <string>
#include <vector>

#include "tbsim/common.hpp"

namespace tbsim {

struct DecoyRow {
    double mu = 0.0;
    double gain = 0.0;      // heralded three-fold probability per window
    double fidelity = 0.0;  // conditional fidelity at this intensity
};

// Rows per prepared state. Each state needs at least signal, decoy and a
// vacuum row (mu = 0, fidelity 0.5 by convention).
struct DecoyDataset {
    std::map<std::string, std::vector<DecoyRow>> states;  // keys: "e", "l", "plus"

    void validate() const;
};

// Informative datasets only; Y1 lower bound <= 0 raises bound_undefined_error.
struct bound_undefined_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateBound {
    double y1_lower = 0.0;
    double e1_upper = 0.0;
    double fidelity_lower = 0.0;  // clamped to [0,1]
    double mu = 0.0;              // intensities used
    double nu = 0.0;
};

struct DecoyBound {
    std::map<std::string, StateBound> per_state;
    double f_avg_lower = 0.0;  // (F_e + F_l + 4 F_plus)/6 when all three present
    bool has_avg = false;
};

StateBound decoy_bound_state(const std::vector<DecoyRow>& rows);
DecoyBound decoy_bound(const DecoyDataset& data);

}  // namespace tbsim

#endif
