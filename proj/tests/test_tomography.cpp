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

#include "tbsim/rng.hpp"
#include "tbsim/tomography.hpp"

using namespace tbsim;

namespace {

DensityMatrix coherence_state(double off_diag) {
    // diag(1/2,1/2) with a real coherence
    DensityMatrix rho;
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = off_diag;
    rho(1, 0) = off_diag;
    return rho;
}

}  // namespace

TEST_CASE("qst_mle: exact plus-state statistics") {
    TomographyData d;
    d.counts[0] = {500000, 500000};  // z: 50/50
    d.counts[1] = {1000000, 0};      // x: all plus
    d.counts[2] = {500000, 500000};  // y: 50/50
    MleResult r = qst_mle(d);
    CHECK(r.converged);
    DensityMatrix target = DensityMatrix::pure(ket_plus());
    CHECK(trace_distance(r.rho, target) < 1e-6);
    CHECK(state_fidelity(r.rho, ket_plus()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("qst_mle: recovers a partially coherent state from sampled counts") {
    DensityMatrix rho = coherence_state(0.35);
    TomographyData d = sample_tomography_counts(rho, 1000000, 42);
    MleResult r = qst_mle(d);
    CHECK(r.converged);
    CHECK(std::fabs(r.rho(0, 1).real() - 0.35) < 0.002);
    CHECK(trace_distance(r.rho, rho) < 5e-3);
}

TEST_CASE("qst_mle: output physical even for contradictory counts") {
    // linear inversion would give an unphysical matrix here
    TomographyData d;
    d.counts[0] = {1000, 0};
    d.counts[1] = {1000, 0};
    d.counts[2] = {1000, 0};
    MleResult r = qst_mle(d);
    CHECK(r.rho.is_physical());
    auto ev = r.rho.eigenvalues();
    CHECK(ev[0] >= -1e-10);
}

TEST_CASE("qst_mle: physicality over fuzzed count sets") {
    Rng rng(77, 0);
    for (int rep = 0; rep < 300; ++rep) {
        TomographyData d;
        bool any = true;
        for (int b = 0; b < 3; ++b) {
            d.counts[b][0] = rng.raw() % 5000;
            d.counts[b][1] = rng.raw() % 5000;
            if (d.counts[b][0] + d.counts[b][1] == 0) any = false;
        }
        if (!any) continue;
        MleResult r = qst_mle(d);
        CHECK(r.rho.is_physical());
    }
}

TEST_CASE("qst_mle: likelihood trace is monotone") {
    DensityMatrix rho = coherence_state(0.2);
    TomographyData d = sample_tomography_counts(rho, 10000, 7);
    MleResult r = qst_mle(d);
    for (size_t k = 1; k < r.loglik_trace.size(); ++k)
        CHECK(r.loglik_trace[k] >= r.loglik_trace[k - 1] - 1e-9);
}

TEST_CASE("qst_mle: zero counts in a basis names the basis") {
    TomographyData d;
    d.counts[0] = {10, 10};
    d.counts[1] = {0, 0};
    d.counts[2] = {10, 10};
    CHECK_THROWS_WITH_AS(qst_mle(d), doctest::Contains("basis x"), config_error);
}

TEST_CASE("state fidelity basics") {
    DensityMatrix plus = DensityMatrix::pure(ket_plus());
    CHECK(state_fidelity(plus, ket_plus()) == doctest::Approx(1.0));
    CHECK(state_fidelity(DensityMatrix::maximally_mixed(), ket_plus()) ==
          doctest::Approx(0.5));
    CHECK(state_fidelity(plus, ket_minus()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(state_fidelity(DensityMatrix::pure(ket_early()), ket_late()) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trace distance basics") {
    DensityMatrix a = DensityMatrix::pure(ket_early());
    DensityMatrix b = DensityMatrix::pure(ket_late());
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
}

TEST_CASE("outcome imbalance calibration shifts the reconstruction") {
    DensityMatrix rho = coherence_state(0.0);
    TomographyData d;
    // perfectly mixed true state seen through a 2:1 efficiency imbalance in z
    d.counts[0] = {200000, 100000};
    d.counts[1] = {150000, 150000};
    d.counts[2] = {150000, 150000};
    d.outcome_imbalance[0] = 2.0;
    MleResult r = qst_mle(d);
    CHECK(std::fabs(r.rho(0, 0).real() - 0.5) < 2e-2);
}
