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
// Damped least-squares fits for the sinusoidal fringe A[1 + V sin(w T + phi)]
// and the Gaussian dip A[1 - V exp(-dt^2 / 2 sigma^2)]. Visibility is kept in
// [0,1) by fitting u with V = tanh(u); the dip width is fit in log sigma.

#ifndef TBSIM_FIT_HPP
#define TBSIM_FIT_HPP

#include <vector>

#include "tbsim/common.hpp"

namespace tbsim {

struct FitResult {
    std::vector<double> params;  // internal parameterization
    std::vector<double> sigmas;  // 1-sigma uncertainties of internal params
    double rss = 0.0;
    bool converged = false;
    bool degenerate = false;  // no oscillation/dip signal found
    int iterations = 0;
    double gradient_norm = 0.0;
};

struct FringeFit {
    double amplitude = 0.0;
    double visibility = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    double sigma_amplitude = 0.0;
    double sigma_visibility = 0.0;
    double sigma_omega = 0.0;
    double sigma_phase = 0.0;
    FitResult info;
};

struct DipFit {
    double amplitude = 0.0;
    double visibility = 0.0;
    double sigma_ps = 0.0;  // 1/e pulse duration
    double sigma_amplitude = 0.0;
    double sigma_visibility = 0.0;
    double sigma_sigma_ps = 0.0;
    FitResult info;
};

// Model functors exposed so the analytic Jacobians can be checked against
// finite differences. Parameter vectors: fringe (A, u, omega, phi) with
// V = tanh(u); dip (A, u, log_sigma).
double fringe_model(const std::vector<double>& params, double t);
void fringe_jacobian(const std::vector<double>& params, double t, double out[4]);
double dip_model(const std::vector<double>& params, double dt);
void dip_jacobian(const std::vector<double>& params, double dt, double out[3]);

// Least-squares fit of A[1 + V sin(w T + phi)]. Frequency is initialized from
// a discrete spectral scan; needs >= 8 points spanning at least one period.
FringeFit fit_fringe(const std::vector<double>& control, const std::vector<double>& rate);

// Least-squares fit of A[1 - V exp(-dt^2/2 sigma^2)]; needs >= 6 points
// including a plateau at |dt| >> sigma.
DipFit fit_hom_dip(const std::vector<double>& delta_t, const std::vector<double>& rate);

}  // namespace tbsim

#endif
