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

#include "tbsim/fit.hpp"
#include "tbsim/resample.hpp"
#include "tbsim/rng.hpp"

using namespace tbsim;

TEST_CASE("poisson_resample: deterministic and order-independent") {
    auto est = [](const std::vector<double>& c) { return c[0] / (c[0] + c[1]); };
    std::vector<double> counts = {900.0, 100.0};
    ResampleResult a = poisson_resample(est, counts, 500, 123);
    ResampleResult b = poisson_resample(est, counts, 500, 123);
    CHECK(a.sigma == b.sigma);
    CHECK(a.mean == b.mean);
}

TEST_CASE("poisson_resample: uncertainty scales like 1/sqrt(counts)") {
    auto est = [](const std::vector<double>& c) { return c[0] / (c[0] + c[1]); };
    ResampleResult small = poisson_resample(est, {900.0, 100.0}, 2000, 5);
    ResampleResult big = poisson_resample(est, {90000.0, 10000.0}, 2000, 5);
    CHECK(big.sigma == doctest::Approx(small.sigma / 10.0).epsilon(0.15));
}

TEST_CASE("poisson_resample: trial count convergence") {
    auto est = [](const std::vector<double>& c) { return c[0] - c[1]; };
    std::vector<double> counts = {400.0, 100.0};
    double s1 = poisson_resample(est, counts, 1000, 9).sigma;
    double s2 = poisson_resample(est, counts, 10000, 9).sigma;
    CHECK(std::fabs(s1 - s2) / s2 < 0.05);
    // analytic: sqrt(400 + 100)
    CHECK(s2 == doctest::Approx(std::sqrt(500.0)).epsilon(0.05));
}

TEST_CASE("poisson_resample: failure accounting") {
    int calls = 0;
    auto flaky = [&calls](const std::vector<double>& c) {
        ++calls;
        if (c[0] < 85.0) throw numerical_error("low");
        return c[0];
    };
    // mean 100: dips below 85 occasionally but well under 10%
    ResampleResult r = poisson_resample(flaky, {100.0}, 1000, 3);
    CHECK(r.failures > 0);
    CHECK(r.trials_used + r.failures == 1000);

    auto broken = [](const std::vector<double>&) -> double {
        throw numerical_error("always");
    };
    CHECK_THROWS_AS(poisson_resample(broken, {100.0}, 200, 3), numerical_error);
    CHECK_THROWS_AS(poisson_resample(flaky, {100.0}, 50, 3), config_error);
}

TEST_CASE("fringe visibility uncertainty via resampling matches the fit estimate") {
    Rng rng(55, 0);
    const double v_true = 0.964, amp = 480.0;
    std::vector<double> t, counts;
    for (int k = 0; k < 48; ++k) {
        double x = 4.0 * M_PI * k / 47.0;
        t.push_back(x);
        counts.push_back(static_cast<double>(
            rng.poisson(amp * (1.0 + v_true * std::sin(x + 0.35)))));
    }
    auto est = [&t](const std::vector<double>& y) { return fit_fringe(t, y).visibility; };
    ResampleResult r = poisson_resample(est, counts, 400, 11);
    // paper-level counting statistics put sigma_V at the few-per-mille level
    CHECK(r.sigma > 1e-3);
    CHECK(r.sigma < 8e-3);
    FringeFit direct = fit_fringe(t, counts);
    CHECK(r.sigma == doctest::Approx(direct.sigma_visibility).epsilon(0.5));
}
