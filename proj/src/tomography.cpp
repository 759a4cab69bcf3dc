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

#include "tbsim/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace tbsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// Projector of (basis, outcome) as a 2x2 hermitian matrix.
DensityMatrix projector(Basis b, int outcome) {
    DensityMatrix p;
    double s = outcome == 0 ? 1.0 : -1.0;
    switch (b) {
        case Basis::z:
            p(0, 0) = 0.5 * (1.0 + s);
            p(1, 1) = 0.5 * (1.0 - s);
            break;
        case Basis::x:
            p(0, 0) = 0.5;
            p(1, 1) = 0.5;
            p(0, 1) = 0.5 * s;
            p(1, 0) = 0.5 * s;
            break;
        case Basis::y:
            p(0, 0) = 0.5;
            p(1, 1) = 0.5;
            p(0, 1) = Cplx(0.0, -0.5 * s);
            p(1, 0) = Cplx(0.0, 0.5 * s);
            break;
    }
    return p;
}

double expectation(const DensityMatrix& rho, const DensityMatrix& op) {
    // tr(rho op), both hermitian
    Cplx t = rho(0, 0) * op(0, 0) + rho(0, 1) * op(1, 0) + rho(1, 0) * op(0, 1) +
             rho(1, 1) * op(1, 1);
    return t.real();
}

// rho(T) = T^dag T / tr(T^dag T), T = [[t0, 0], [t2 + i t3, t1]]
DensityMatrix rho_from_t(const std::array<double, 4>& t, double* trace_out = nullptr) {
    Cplx a(t[0], 0.0);
    Cplx c(t[2], t[3]);
    Cplx b(t[1], 0.0);
    DensityMatrix g;  // T^dag T
    g(0, 0) = std::norm(a) + std::norm(c);
    g(0, 1) = std::conj(c) * b;
    g(1, 0) = std::conj(g(0, 1));
    g(1, 1) = std::norm(b);
    double tr = g(0, 0).real() + g(1, 1).real();
    if (trace_out) *trace_out = tr;
    DensityMatrix r;
    for (int k = 0; k < 4; ++k) r.m[k] = g.m[k] / tr;
    return r;
}

}  // namespace

std::array<double, 2> DensityMatrix::eigenvalues() const {
    double tr = trace_real();
    double det = (m[0] * m[3] - m[1] * m[2]).real();
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

bool DensityMatrix::is_physical(double tol_herm, double tol_trace, double tol_eig) const {
    if (std::abs(m[1] - std::conj(m[2])) > tol_herm) return false;
    if (std::fabs(m[0].imag()) > tol_herm || std::fabs(m[3].imag()) > tol_herm) return false;
    if (std::fabs(trace_real() - 1.0) > tol_trace) return false;
    return eigenvalues()[0] >= tol_eig;
}

DensityMatrix DensityMatrix::pure(const std::array<Cplx, 2>& psi) {
    DensityMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = psi[i] * std::conj(psi[j]);
    return r;
}

double state_fidelity(const DensityMatrix& rho, const std::array<Cplx, 2>& psi) {
    Cplx f = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f += std::conj(psi[i]) * rho(i, j) * psi[j];
    return f.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    // 1/2 tr|a-b|; for hermitian 2x2 difference this is the mean |eigenvalue|
    Cplx d00 = a(0, 0) - b(0, 0);
    Cplx d01 = a(0, 1) - b(0, 1);
    Cplx d11 = a(1, 1) - b(1, 1);
    double tr = d00.real() + d11.real();
    double det = (d00 * d11).real() - std::norm(d01);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return (std::fabs(tr / 2.0 - disc) + std::fabs(tr / 2.0 + disc)) / 2.0;
}

std::array<Cplx, 2> ket_early() { return {Cplx(1.0, 0.0), Cplx(0.0, 0.0)}; }
std::array<Cplx, 2> ket_late() { return {Cplx(0.0, 0.0), Cplx(1.0, 0.0)}; }
std::array<Cplx, 2> ket_plus() { return {Cplx(kInvSqrt2, 0.0), Cplx(kInvSqrt2, 0.0)}; }
std::array<Cplx, 2> ket_minus() { return {Cplx(kInvSqrt2, 0.0), Cplx(-kInvSqrt2, 0.0)}; }
std::array<Cplx, 2> ket_plus_i() { return {Cplx(kInvSqrt2, 0.0), Cplx(0.0, kInvSqrt2)}; }
std::array<Cplx, 2> ket_minus_i() { return {Cplx(kInvSqrt2, 0.0), Cplx(0.0, -kInvSqrt2)}; }

MleResult qst_mle(const TomographyData& data) {
    static const char* kBasisNames[3] = {"z", "x", "y"};
    for (int b = 0; b < 3; ++b) {
        if (data.counts[b][0] + data.counts[b][1] == 0)
            throw config_error(std::string("tomography basis ") + kBasisNames[b] +
                               " has zero counts");
        if (!(data.outcome_imbalance[b] > 0))
            throw config_error("outcome imbalance factors must be positive");
    }

    // Profile out the per-basis Poisson fluxes; what remains is the
    // multinomial log likelihood sum n log p with imbalance-weighted outcome
    // probabilities p'_0 = k p0 / (k p0 + p1).
    auto loglik_and_grad = [&](const std::array<double, 4>& t, std::array<double, 4>* grad) {
        double trace;
        DensityMatrix rho = rho_from_t(t, &trace);
        double ll = 0.0;
        if (grad) grad->fill(0.0);
        for (int b = 0; b < 3; ++b) {
            DensityMatrix pi0 = projector(static_cast<Basis>(b), 0);
            double k = data.outcome_imbalance[b];
            double p0 = expectation(rho, pi0);
            p0 = std::clamp(p0, 1e-15, 1.0 - 1e-15);
            double w0 = k * p0, w1 = 1.0 - p0;
            double wsum = w0 + w1;
            double n0 = static_cast<double>(data.counts[b][0]);
            double n1 = static_cast<double>(data.counts[b][1]);
            ll += n0 * std::log(w0 / wsum) + n1 * std::log(w1 / wsum);
            if (!grad) continue;
            // dll/dp0, then chain through rho(T)
            double dll_dp0 = n0 * (1.0 / p0 - (k - 1.0) / wsum) +
                             n1 * (-1.0 / (1.0 - p0) - (k - 1.0) / wsum);
            // d p0 / d t_j with rho = G/tr: dp0 = (tr(dG pi0) - p0 d tr)/tr
            // G = T^dag T; derivative w.r.t. each real parameter
            for (int j = 0; j < 4; ++j) {
                std::array<double, 4> dt{};
                dt[j] = 1.0;
                // dG elements
                Cplx a(t[0], 0.0), bb(t[1], 0.0), c(t[2], t[3]);
                Cplx da(dt[0], 0.0), db(dt[1], 0.0), dc(dt[2], dt[3]);
                double dg00 = 2.0 * (a * std::conj(da)).real() + 2.0 * (c * std::conj(dc)).real();
                double dg11 = 2.0 * (bb * std::conj(db)).real();
                Cplx dg01 = std::conj(dc) * bb + std::conj(c) * db;
                double dtr = dg00 + dg11;
                double num = dg00 * pi0(0, 0).real() + dg11 * pi0(1, 1).real() +
                             2.0 * (dg01 * pi0(1, 0)).real();
                double dp0 = (num - p0 * dtr) / trace;
                (*grad)[j] += dll_dp0 * dp0;
            }
        }
        return ll;
    };

    MleResult res;
    std::array<double, 4> t = {kInvSqrt2, kInvSqrt2, 0.0, 0.0};  // maximally mixed
    double total_counts = 0.0;
    for (int b = 0; b < 3; ++b)
        total_counts += static_cast<double>(data.counts[b][0] + data.counts[b][1]);
    const double tol = 1e-10 * std::max(1.0, total_counts);

    std::array<double, 4> grad{};
    double ll = loglik_and_grad(t, &grad);
    res.loglik_trace.push_back(ll);
    double step = 1.0 / std::max(1.0, total_counts);

    for (int it = 0; it < 20000; ++it) {
        double gnorm = 0.0;
        for (double g : grad) gnorm = std::max(gnorm, std::fabs(g));
        res.gradient_norm = gnorm;
        res.iterations = it;
        if (gnorm < tol) {
            res.converged = true;
            break;
        }
        // backtracking line search along the gradient keeps the likelihood
        // trace monotone
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            std::array<double, 4> trial;
            for (int j = 0; j < 4; ++j) trial[j] = t[j] + step * grad[j];
            double ll_t = loglik_and_grad(trial, nullptr);
            if (ll_t >= ll) {
                t = trial;
                ll = loglik_and_grad(t, &grad);
                res.loglik_trace.push_back(ll);
                step *= 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // the likelihood cannot be improved along the gradient at double
            // precision; treat the stalled point as converged
            res.converged = true;
            break;
        }
        if (res.loglik_trace.size() >= 2) {
            double d = res.loglik_trace.back() - res.loglik_trace[res.loglik_trace.size() - 2];
            if (d < 1e-12 * (1.0 + std::fabs(ll))) {
                res.converged = true;
                break;
            }
        }
    }
    res.rho = rho_from_t(t);
    return res;
}

TomographyData sample_tomography_counts(const DensityMatrix& rho, std::uint64_t shots_per_basis,
                                        std::uint64_t seed) {
    TomographyData data;
    Rng rng(seed, 0x70a0ULL);
    for (int b = 0; b < 3; ++b) {
        double p0 = expectation(rho, projector(static_cast<Basis>(b), 0));
        p0 = std::clamp(p0, 0.0, 1.0);
        data.counts[b][0] = rng.poisson(static_cast<double>(shots_per_basis) * p0);
        data.counts[b][1] = rng.poisson(static_cast<double>(shots_per_basis) * (1.0 - p0));
    }
    return data;
}

}  // namespace tbsim
