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
// Single-qubit state tomography: Poisson-per-outcome maximum likelihood over
// a Cholesky-factorized density matrix, so every reconstruction is physical
// by construction. Basis convention: sigma_z outcomes are the early/late
// arrival bins; sigma_x and sigma_y outcomes are the interferometer fringe
// extrema at phi and phi + pi.

#ifndef TBSIM_TOMOGRAPHY_HPP
#define TBSIM_TOMOGRAPHY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "tbsim/common.hpp"
#include "tbsim/rng.hpp"

namespace tbsim {

using Cplx = std::complex<double>;

// 2x2 density matrix, row-major.
struct DensityMatrix {
    std::array<Cplx, 4> m{};

    Cplx& operator()(int r, int c) { return m[2 * r + c]; }
    const Cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    double trace_real() const { return m[0].real() + m[3].real(); }
    std::array<double, 2> eigenvalues() const;
    bool is_physical(double tol_herm = 1e-12, double tol_trace = 1e-12,
                     double tol_eig = -1e-10) const;

    static DensityMatrix maximally_mixed() {
        DensityMatrix r;
        r(0, 0) = 0.5;
        r(1, 1) = 0.5;
        return r;
    }
    static DensityMatrix pure(const std::array<Cplx, 2>& psi);
};

double state_fidelity(const DensityMatrix& rho, const std::array<Cplx, 2>& psi);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Named pure states in the time-bin basis (|0> = early, |1> = late).
std::array<Cplx, 2> ket_early();
std::array<Cplx, 2> ket_late();
std::array<Cplx, 2> ket_plus();
std::array<Cplx, 2> ket_minus();
std::array<Cplx, 2> ket_plus_i();
std::array<Cplx, 2> ket_minus_i();

enum class Basis : int { z = 0, x = 1, y = 2 };

struct TomographyData {
    // counts[basis][outcome]; outcome 0 projects on |e>, |+>, |+i>
    std::array<std::array<std::uint64_t, 2>, 3> counts{};
    // relative detection-efficiency imbalance between the two outcomes of
    // each basis (calibration factor; 1 = balanced)
    std::array<double, 3> outcome_imbalance{1.0, 1.0, 1.0};
};

struct MleResult {
    DensityMatrix rho;
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
    std::vector<double> loglik_trace;  // monotone non-decreasing
};

// Deterministic ascent from the maximally mixed state, gradient tolerance
// 1e-10 (scaled). Throws config_error naming the basis if a basis has zero
// total counts.
MleResult qst_mle(const TomographyData& data);

// Poisson counts from the exact outcome probabilities of rho.
TomographyData sample_tomography_counts(const DensityMatrix& rho, std::uint64_t shots_per_basis,
                                        std::uint64_t seed);

}  // namespace tbsim

#endif
