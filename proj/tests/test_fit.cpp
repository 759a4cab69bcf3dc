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
#include "tbsim/rng.hpp"

using namespace tbsim;

TEST_CASE("fringe fit: exact recovery on noiseless data") {
    std::vector<double> t, y;
    for (int k = 0; k < 40; ++k) {
        double x = 0.35 * k;
        t.push_back(x);
        y.push_back(7.0 * (1.0 + 0.5 * std::sin(1.3 * x + 0.9)));
    }
    FringeFit f = fit_fringe(t, y);
    CHECK(f.info.converged);
    CHECK(f.visibility == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(f.amplitude == doctest::Approx(7.0).epsilon(1e-6));
    CHECK(f.omega == doctest::Approx(1.3).epsilon(1e-6));
    CHECK(f.phase == doctest::Approx(0.9).epsilon(1e-5));
}

TEST_CASE("fringe fit: Poisson noise at counting-statistics level") {
    Rng rng(5, 0);
    const double v_true = 0.964, amp = 480.0;
    std::vector<double> t, y;
    for (int k = 0; k < 48; ++k) {
        double x = 4.0 * M_PI * k / 47.0;
        t.push_back(x);
        y.push_back(static_cast<double>(
            rng.poisson(amp * (1.0 + v_true * std::sin(x + 0.35)))));
    }
    FringeFit f = fit_fringe(t, y);
    CHECK(f.info.converged);
    CHECK(std::fabs(f.visibility - v_true) < 0.01);
    CHECK(f.sigma_visibility > 5e-4);
    CHECK(f.sigma_visibility < 0.02);
}

TEST_CASE("fringe fit: constant data flagged degenerate") {
    std::vector<double> t, y;
    for (int k = 0; k < 20; ++k) {
        t.push_back(0.5 * k);
        y.push_back(3.0);
    }
    FringeFit f = fit_fringe(t, y);
    CHECK(f.info.degenerate);
    CHECK(f.visibility == doctest::Approx(0.0));
    CHECK(f.amplitude == doctest::Approx(3.0));
}

TEST_CASE("fringe fit: input validation") {
    std::vector<double> t = {1, 2, 3}, y = {1, 2, 3};
    CHECK_THROWS_AS(fit_fringe(t, y), config_error);
    std::vector<double> t8(8, 1.0), y8(8, 1.0);
    CHECK_THROWS_AS(fit_fringe(t8, y8), config_error);  // zero span
}

TEST_CASE("dip fit: exact recovery on noiseless data") {
    std::vector<double> t, y;
    for (int k = -15; k <= 15; ++k) {
        double dt = 120.0 * k;
        t.push_back(dt);
        y.push_back(11.0 * (1.0 - 0.709 * std::exp(-dt * dt / (2.0 * 300.0 * 300.0))));
    }
    DipFit f = fit_hom_dip(t, y);
    CHECK(f.info.converged);
    CHECK(f.visibility == doctest::Approx(0.709).epsilon(1e-7));
    CHECK(f.sigma_ps == doctest::Approx(300.0).epsilon(1e-7));
    CHECK(f.amplitude == doctest::Approx(11.0).epsilon(1e-7));
}

TEST_CASE("dip fit: Poisson noise at counting-statistics level") {
    Rng rng(6, 0);
    std::vector<double> t, y;
    for (int k = -15; k <= 15; ++k) {
        double dt = 100.0 * k;
        double mean = 70.0 * (1.0 - 0.709 * std::exp(-dt * dt / (2.0 * 300.0 * 300.0)));
        t.push_back(dt);
        y.push_back(static_cast<double>(rng.poisson(mean)));
    }
    DipFit f = fit_hom_dip(t, y);
    CHECK(f.info.converged);
    CHECK(std::fabs(f.visibility - 0.709) < 0.06);
    CHECK(f.sigma_visibility > 0.005);
    CHECK(f.sigma_visibility < 0.08);
}

TEST_CASE("analytic Jacobians match central finite differences") {
    Rng rng(9, 0);
    const double fd_step = 1e-6;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> p = {0.5 + 5.0 * rng.uniform(), 2.0 * (rng.uniform() - 0.5),
                                 0.5 + 2.0 * rng.uniform(), 2.0 * M_PI * rng.uniform()};
        double x = 10.0 * (rng.uniform() - 0.5);
        double jac[4];
        fringe_jacobian(p, x, jac);
        for (int j = 0; j < 4; ++j) {
            std::vector<double> hi = p, lo = p;
            hi[j] += fd_step;
            lo[j] -= fd_step;
            double fd = (fringe_model(hi, x) - fringe_model(lo, x)) / (2.0 * fd_step);
            double scale = std::max({std::fabs(fd), std::fabs(jac[j]), 1e-3});
            CHECK(std::fabs(jac[j] - fd) / scale < 1e-6);
        }

        std::vector<double> q = {0.5 + 5.0 * rng.uniform(), 2.0 * (rng.uniform() - 0.5),
                                 std::log(50.0 + 400.0 * rng.uniform())};
        double dt = 1000.0 * (rng.uniform() - 0.5);
        double jd[3];
        dip_jacobian(q, dt, jd);
        for (int j = 0; j < 3; ++j) {
            std::vector<double> hi = q, lo = q;
            hi[j] += fd_step;
            lo[j] -= fd_step;
            double fd = (dip_model(hi, dt) - dip_model(lo, dt)) / (2.0 * fd_step);
            double scale = std::max({std::fabs(fd), std::fabs(jd[j]), 1e-3});
            CHECK(std::fabs(jd[j] - fd) / scale < 1e-6);
        }
    }
}

TEST_CASE("fit uncertainties shrink with count scale") {
    // counts scaled by 100 shrink the visibility uncertainty by about 10
    auto run = [](double scale, std::uint64_t seed) {
        Rng rng(seed, 0);
        std::vector<double> t, y;
        for (int k = 0; k < 40; ++k) {
            double x = 4.0 * M_PI * k / 39.0;
            t.push_back(x);
            y.push_back(static_cast<double>(
                rng.poisson(scale * (1.0 + 0.7 * std::sin(x + 0.2)))));
        }
        return fit_fringe(t, y).sigma_visibility;
    };
    double s1 = run(100.0, 21);
    double s2 = run(10000.0, 22);
    CHECK(s2 < s1 * 0.25);
    CHECK(s2 > s1 * 0.02);
}
