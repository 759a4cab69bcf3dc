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

#include "tbsim/fock.hpp"
#include "tbsim/rng.hpp"

using namespace tbsim;
using fock::FockState;

TEST_CASE("build_input: vacuum-amplitude coherent source") {
    OpticalCircuit c;
    c.add(CoherentSource{0.0, 0.0});
    FockState st = fock::build_input(c, 4);
    CHECK(st.probability({0}) == doctest::Approx(1.0));
    CHECK(st.norm2() == doctest::Approx(1.0));
}

TEST_CASE("build_input: TMSV geometric pair amplitudes") {
    OpticalCircuit c;
    c.add(TmsvSource{0.008});
    FockState st = fock::build_input(c, 2);
    double p = 0.008 / 1.008;
    CHECK(st.amplitude({0, 0}).real() == doctest::Approx(std::sqrt(1.0 - p)).epsilon(1e-12));
    CHECK(st.amplitude({1, 1}).real() ==
          doctest::Approx(std::sqrt((1.0 - p) * p)).epsilon(1e-12));
    CHECK(st.amplitude({1, 0}) == fock::Amplitude(0.0, 0.0));
}

TEST_CASE("build_input: coherent truncation deficit is the Poisson tail") {
    OpticalCircuit c;
    c.add(CoherentSource{0.01, 0.0});
    FockState st = fock::build_input(c, 6);
    // sum_{n>6} e^-mu mu^n/n!
    double tail = 1.0;
    double term = std::exp(-0.01);
    for (int n = 0; n <= 6; ++n) {
        tail -= term;
        term *= 0.01 / (n + 1);
    }
    CHECK(1.0 - st.norm2() == doctest::Approx(tail).epsilon(1e-6));
    CHECK(1.0 - st.norm2() < 1e-12);
}

TEST_CASE("build_input: cutoff below one is rejected") {
    OpticalCircuit c;
    c.add(CoherentSource{0.1, 0.0});
    CHECK_THROWS_AS(fock::build_input(c, 0), config_error);
}

TEST_CASE("propagate: HOM null for an indistinguishable pair") {
    // |1,1> on a 50/50 splitter never yields one photon in each output
    OpticalCircuit c;
    c.add(SinglePhotonQubitSource{1.0});  // |1> in mode 0
    c.add(SinglePhotonQubitSource{1.0});  // |1> in mode 2
    c.add(BeamSplitter{0, 2, 1.0 / std::sqrt(2.0), 0.0});
    FockState st = fock::build_input(c, 4);
    fock::propagate(st, c);
    CHECK(st.probability({1, 0, 1, 0}) == doctest::Approx(0.0).epsilon(1e-24));
    CHECK(st.probability({2, 0, 0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.probability({0, 0, 2, 0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("propagate: single photon splits 50/50") {
    OpticalCircuit c;
    c.add(SinglePhotonQubitSource{1.0});
    c.add(VacuumSource{1});
    c.add(BeamSplitter{0, 2, 1.0 / std::sqrt(2.0), 0.0});
    FockState st = fock::build_input(c, 3);
    fock::propagate(st, c);
    CHECK(st.probability({1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.probability({0, 0, 1}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("propagate: two photons through a balanced splitter, binomial expansion") {
    // |2,0> with t^2 = 0.5 gives (0.25, 0.5, 0.25) over (2,0),(1,1),(0,2)
    FockState st(2, 4);
    st.amplitudes().clear();
    std::uint64_t key = FockState::with_occupation(0, 0, 2);
    st.amplitudes()[key] = fock::Amplitude(1.0, 0.0);
    OpticalCircuit c;
    c.add(VacuumSource{2});
    c.add(BeamSplitter{0, 1, std::sqrt(0.5), 0.0});
    fock::propagate(st, c);
    CHECK(st.probability({2, 0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(st.probability({1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.probability({0, 2}) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("propagate: norm preserved by unitary elements") {
    Rng rng(3, 0);
    OpticalCircuit c;
    c.add(CoherentSource{0.04, 0.3});
    c.add(TmsvSource{0.03});
    c.add(BeamSplitter{0, 1, 0.8, 0.4});
    c.add(PhaseShift{2, 1.2});
    c.add(BeamSplitter{1, 2, 0.6, 0.0});
    FockState st = fock::build_input(c, 6);
    double n0 = st.norm2();
    fock::propagate(st, c);
    CHECK(st.norm2() == doctest::Approx(n0).epsilon(1e-9));
}

TEST_CASE("click probabilities: efficiency and vacuum cases") {
    OpticalCircuit c;
    c.add(SinglePhotonQubitSource{1.0});
    c.add_detector({"D", {0}, 0.8, 0.0});
    FockState st = fock::build_input(c, 2);
    fock::propagate(st, c);
    CHECK(fock::click_pattern_probability_fock(st, c, {{"D"}, {}}) ==
          doctest::Approx(0.8).epsilon(1e-12));

    OpticalCircuit cv;
    cv.add(VacuumSource{1});
    cv.add_detector({"D", {0}, 1.0, 0.0});
    FockState sv = fock::build_input(cv, 2);
    fock::propagate(sv, cv);
    CHECK(fock::click_pattern_probability_fock(sv, cv, {{"D"}, {}}) == doctest::Approx(0.0));
}

TEST_CASE("truncation-error monotonicity: changes bounded by the norm deficit") {
    OpticalCircuit c;
    c.add(CoherentSource{0.05, 0.0});
    c.add(TmsvSource{0.04});
    c.add(BeamSplitter{0, 2, 1.0 / std::sqrt(2.0), 0.0});
    c.add(Loss{1, 0.6});
    c.add_detector({"D1", {0}, 1.0, 0.0});
    c.add_detector({"D2", {2}, 1.0, 0.0});
    ClickPattern pat{{"D1", "D2"}, {}};
    double prev = -1.0;
    double prev_deficit = 1.0;
    for (int cutoff = 3; cutoff <= 7; ++cutoff) {
        FockState st = fock::build_input(c, cutoff);
        double deficit = 1.0 - st.norm2();
        fock::propagate(st, c);
        double p = fock::click_pattern_probability_fock(st, c, pat);
        if (prev >= 0.0) CHECK(std::fabs(p - prev) <= prev_deficit + 1e-15);
        prev = p;
        prev_deficit = deficit;
    }
}

TEST_CASE("permutation covariance: consistent relabeling leaves probabilities unchanged") {
    // same physics with the two sources listed in swapped order
    OpticalCircuit a;
    a.add(CoherentSource{0.03, 0.5});  // mode 0
    a.add(TmsvSource{0.02});           // modes 1,2
    a.add(BeamSplitter{0, 2, 0.7, 0.2});
    a.add(Loss{1, 0.5});
    a.add_detector({"DA", {0}, 0.9, 1e-6});
    a.add_detector({"DB", {1, 2}, 0.8, 0.0});

    OpticalCircuit b;
    b.add(TmsvSource{0.02});           // modes 0,1
    b.add(CoherentSource{0.03, 0.5});  // mode 2
    b.add(BeamSplitter{2, 1, 0.7, 0.2});
    b.add(Loss{0, 0.5});
    b.add_detector({"DA", {2}, 0.9, 1e-6});
    b.add_detector({"DB", {0, 1}, 0.8, 0.0});

    for (const ClickPattern& pat :
         {ClickPattern{{"DA", "DB"}, {}}, ClickPattern{{"DA"}, {"DB"}}, ClickPattern{{"DB"}, {}}}) {
        double pa = fock::evaluate_click_probability(a, pat, 6);
        double pb = fock::evaluate_click_probability(b, pat, 6);
        CHECK(pa == doctest::Approx(pb).epsilon(1e-12));
    }
}

TEST_CASE("amplitude-map budget raises a resource error") {
    OpticalCircuit c;
    for (int k = 0; k < 6; ++k) c.add(CoherentSource{0.5, 0.0});
    for (int k = 0; k + 1 < 6; ++k) c.add(BeamSplitter{k, k + 1, 0.7, 0.1});
    FockState st = fock::build_input(c, 6);
    CHECK_THROWS_AS(fock::propagate(st, c, 100), resource_error);
}
