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

#include <doctest.h>

#include <cmath>

#include "tbsim/decoy.hpp"
#include "tbsim/rng.hpp"
#include "tbsim/scenarios.hpp"
#include "tbsim/validation.hpp"

using namespace tbsim;

namespace {

// Poissonian gains from an ideal per-photon process: Y_n = 1-(1-eta)^n with
// unit single-photon fidelity and error-free vacuum.
DecoyRow ideal_row(double mu, double eta, double y0) {
    DecoyRow r;
    r.mu = mu;
    // Q = sum_n P(n|mu) Y_n = 1 - (1-y0) e^{-eta mu}
    r.gain = 1.0 - (1.0 - y0) * std::exp(-eta * mu);
    // all errors come from the vacuum yield at rate e0 = 1/2
    r.fidelity = mu == 0.0 ? 0.5 : 1.0 - 0.5 * y0 * std::exp(-mu) / r.gain;
    return r;
}

}  // namespace

TEST_CASE("decoy bound: perfect single-photon process saturates at one") {
    std::vector<DecoyRow> rows = {ideal_row(0.1, 0.3, 0.0), ideal_row(0.03, 0.3, 0.0),
                                  ideal_row(0.0, 0.3, 0.0)};
    StateBound b = decoy_bound_state(rows);
    CHECK(b.fidelity_lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.y1_lower > 0.0);
}

TEST_CASE("decoy bound: yield lower bound is conservative for Poissonian gains") {
    Rng rng(31, 0);
    for (int rep = 0; rep < 50; ++rep) {
        double eta = 0.05 + 0.9 * rng.uniform();
        double y0 = 1e-5 * rng.uniform();
        double mu = 0.05 + 0.2 * rng.uniform();
        double nu = mu * (0.2 + 0.3 * rng.uniform());
        std::vector<DecoyRow> rows = {ideal_row(mu, eta, y0), ideal_row(nu, eta, y0),
                                      ideal_row(0.0, eta, y0)};
        StateBound b = decoy_bound_state(rows);
        double y1_true = 1.0 - (1.0 - y0) * (1.0 - eta);
        CHECK(b.y1_lower <= y1_true * (1.0 + 1e-9));
        CHECK(b.y1_lower > 0.0);
        CHECK(b.fidelity_lower <= 1.0);
    }
}

TEST_CASE("decoy bound: monotone in the measured fidelities") {
    auto make = [](double f_shift) {
        std::vector<DecoyRow> rows = {{0.1, 0.02, 0.93 + f_shift},
                                      {0.03, 0.007, 0.90 + f_shift},
                                      {0.0, 1e-5, 0.5}};
        return rows;
    };
    double prev = -1.0;
    for (double shift : {0.0, 0.02, 0.04, 0.06}) {
        StateBound b = decoy_bound_state(make(shift));
        CHECK(b.fidelity_lower >= prev);
        prev = b.fidelity_lower;
    }
}

TEST_CASE("decoy bound: non-informative dataset reports bound-undefined") {
    // gains inconsistent with any nonnegative single-photon yield
    std::vector<DecoyRow> rows = {{0.1, 0.5, 0.9}, {0.03, 1e-9, 0.9}, {0.0, 1e-9, 0.5}};
    CHECK_THROWS_AS(decoy_bound_state(rows), bound_undefined_error);
}

TEST_CASE("decoy dataset validation") {
    DecoyDataset d;
    d.states["e"] = {{0.1, 0.01, 0.9}, {0.03, 0.004, 0.88}};
    CHECK_THROWS_AS(d.validate(), config_error);  // missing vacuum row
    d.states["e"].push_back({0.0, 1e-6, 0.5});
    d.validate();
    d.states["e"].push_back({0.1, 0.01, 0.9});  // duplicate intensity
    CHECK_THROWS_AS(d.validate(), config_error);
}

TEST_CASE("decoy validity against the single-photon oracle on simulator data") {
    // Simulator-generated gain/fidelity datasets must never certify more
    // than the true single-photon fidelity; tight settings come close.
    // The bound slack grows with the multiphoton fraction, so the 0.05
    // tightness claim is checked at nu/mu = 0.3 and mu_a <= 8e-3; validity
    // (never exceeding the single-photon truth) is checked everywhere.
    Rng rng(57, 0);
    int tight_checked = 0;
    for (int rep = 0; rep < 12; ++rep) {
        ScenarioParams p;
        p.input_state = rep % 2 ? InputState::early : InputState::plus;
        p.mu_a = 3e-3 + 5e-3 * rng.uniform();
        p.zeta = 0.85 + 0.15 * rng.uniform();
        p.mu_b = 4e-3 + 6e-3 * rng.uniform();
        double f1_true = single_photon_teleport_fidelity(p, 5);

        for (double ratio : {0.3, 0.2 + 0.3 * rng.uniform()}) {
            std::vector<DecoyRow> rows;
            ScenarioParams q = p;
            rows.push_back(simulate_decoy_row(q));
            q.mu_a = p.mu_a * ratio;
            rows.push_back(simulate_decoy_row(q));
            q.mu_a = 0.0;
            rows.push_back(simulate_decoy_row(q));
            StateBound b = decoy_bound_state(rows);
            CHECK(b.fidelity_lower <= f1_true + 1e-9);
            if (ratio == 0.3) {
                CHECK(f1_true - b.fidelity_lower < 0.05);
                ++tight_checked;
            }
        }
    }
    CHECK(tight_checked == 12);
}
