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

#include "tbsim/decoy.hpp"

#include <algorithm>
#include <cmath>

namespace tbsim {

void DecoyDataset::validate() const {
    if (states.empty()) throw config_error("decoy dataset is empty");
    for (const auto& [name, rows] : states) {
        if (rows.size() < 3)
            throw config_error("decoy state " + name +
                               " needs signal, decoy and vacuum rows (>= 3)");
        bool has_vacuum = false;
        std::vector<double> mus;
        for (const auto& r : rows) {
            if (r.mu < 0) throw config_error("decoy state " + name + " has negative mu");
            if (r.gain < 0) throw config_error("decoy state " + name + " has negative gain");
            if (r.fidelity < 0.0 || r.fidelity > 1.0)
                throw config_error("decoy state " + name + " has fidelity outside [0,1]");
            if (r.mu == 0.0) has_vacuum = true;
            mus.push_back(r.mu);
        }
        std::sort(mus.begin(), mus.end());
        if (std::adjacent_find(mus.begin(), mus.end()) != mus.end())
            throw config_error("decoy state " + name + " has duplicate intensities");
        if (!has_vacuum) throw config_error("decoy state " + name + " is missing the vacuum row");
    }
}

StateBound decoy_bound_state(const std::vector<DecoyRow>& rows) {
    const DecoyRow* vac = nullptr;
    std::vector<const DecoyRow*> lit;
    for (const auto& r : rows) {
        if (r.mu == 0.0)
            vac = &r;
        else
            lit.push_back(&r);
    }
    if (!vac || lit.size() < 2)
        throw config_error("decoy bound needs two nonzero intensities plus a vacuum row");
    std::sort(lit.begin(), lit.end(),
              [](const DecoyRow* a, const DecoyRow* b) { return a->mu > b->mu; });
    const double mu = lit[0]->mu, q_mu = lit[0]->gain;
    const double nu = lit[1]->mu, q_nu = lit[1]->gain;
    const double y0 = vac->gain;
    const double e0 = 0.5;

    double y1 = (mu / (mu * nu - nu * nu)) *
                (q_nu * std::exp(nu) - q_mu * std::exp(mu) * (nu / mu) * (nu / mu) -
                 ((mu * mu - nu * nu) / (mu * mu)) * y0);
    if (!(y1 > 0.0))
        throw bound_undefined_error("decoy bound undefined: non-positive single-photon yield "
                                    "(non-informative dataset)");
    double e_nu = 1.0 - lit[1]->fidelity;
    double e1 = (e_nu * q_nu * std::exp(nu) - e0 * y0) / (nu * y1);
    StateBound out;
    out.y1_lower = y1;
    out.e1_upper = e1;
    out.fidelity_lower = std::clamp(1.0 - e1, 0.0, 1.0);
    out.mu = mu;
    out.nu = nu;
    return out;
}

DecoyBound decoy_bound(const DecoyDataset& data) {
    data.validate();
    DecoyBound out;
    for (const auto& [name, rows] : data.states) out.per_state[name] = decoy_bound_state(rows);
    auto e = out.per_state.find("e");
    auto l = out.per_state.find("l");
    auto p = out.per_state.find("plus");
    if (e != out.per_state.end() && l != out.per_state.end() && p != out.per_state.end()) {
        out.f_avg_lower = (e->second.fidelity_lower + l->second.fidelity_lower +
                           4.0 * p->second.fidelity_lower) /
                          6.0;
        out.has_avg = true;
    }
    return out;
}

}  // namespace tbsim
