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

#include "tbsim/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "tbsim/common.hpp"

namespace tbsim {

namespace {

using Model = std::function<double(const std::vector<double>&, double)>;
using Jacobian = std::function<void(const std::vector<double>&, double, double*)>;

// Damped least squares with simple trust heuristics; returns internal-space
// estimates plus covariance from the local quadratic model.
FitResult levenberg_marquardt(const Model& model, const Jacobian& jac, int n_params,
                              const std::vector<double>& x, const std::vector<double>& y,
                              std::vector<double> p) {
    const int n = static_cast<int>(x.size());
    const int m = n_params;
    FitResult res;
    Eigen::VectorXd params = Eigen::Map<Eigen::VectorXd>(p.data(), m);

    auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
        std::vector<double> qq(q.data(), q.data() + m);
        std::vector<double> row(m);
        for (int i = 0; i < n; ++i) {
            r(i) = model(qq, x[i]) - y[i];
            if (J) {
                jac(qq, x[i], row.data());
                for (int j = 0; j < m; ++j) (*J)(i, j) = row[j];
            }
        }
    };

    Eigen::VectorXd r(n);
    Eigen::MatrixXd J(n, m);
    residuals(params, r, &J);
    double rss = r.squaredNorm();
    double lambda = 1e-3;
    const double scale = std::max(1.0, rss);

    int it = 0;
    for (; it < 200; ++it) {
        Eigen::MatrixXd jtj = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        res.gradient_norm = g.lpNorm<Eigen::Infinity>();
        if (res.gradient_norm < 1e-10 * scale) {
            res.converged = true;
            break;
        }
        Eigen::MatrixXd damped = jtj;
        for (int j = 0; j < m; ++j) damped(j, j) += lambda * std::max(jtj(j, j), 1e-12);
        Eigen::VectorXd step = damped.ldlt().solve(g);
        Eigen::VectorXd trial = params - step;
        Eigen::VectorXd rt(n);
        residuals(trial, rt, nullptr);
        double rss_t = rt.squaredNorm();
        if (rss_t < rss) {
            params = trial;
            residuals(params, r, &J);
            bool stalled = rss - rss_t < 1e-12 * (1.0 + rss);
            rss = rss_t;
            if (stalled) {
                res.converged = true;
                break;
            }
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 8.0;
            // no descent direction improves the fit: numerical optimum
            if (lambda > 1e12) {
                res.converged = true;
                break;
            }
        }
    }
    res.iterations = it;
    res.rss = rss;
    res.params.assign(params.data(), params.data() + m);

    // local quadratic model: cov = s^2 (J^T J)^-1, s^2 = rss/(n-m)
    Eigen::MatrixXd jtj = J.transpose() * J;
    double dof = std::max(1, n - m);
    double s2 = rss / dof;
    Eigen::MatrixXd cov = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
    res.sigmas.resize(m);
    for (int j = 0; j < m; ++j) res.sigmas[j] = std::sqrt(std::max(0.0, cov(j, j)));
    return res;
}

double sech2(double u) {
    double c = std::cosh(u);
    return 1.0 / (c * c);
}

// Linear LSQ of y ~ a + b sin(wt) + c cos(wt) at fixed frequency.
double scan_rss(const std::vector<double>& x, const std::vector<double>& y, double w,
                double* a_out, double* b_out, double* c_out) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = std::sin(w * x[i]);
        A(i, 2) = std::cos(w * x[i]);
        b(i) = y[i];
    }
    Eigen::Vector3d sol = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    if (a_out) *a_out = sol(0);
    if (b_out) *b_out = sol(1);
    if (c_out) *c_out = sol(2);
    return (A * sol - b).squaredNorm();
}

}  // namespace

double fringe_model(const std::vector<double>& p, double t) {
    return p[0] * (1.0 + std::tanh(p[1]) * std::sin(p[2] * t + p[3]));
}

void fringe_jacobian(const std::vector<double>& p, double t, double out[4]) {
    double v = std::tanh(p[1]);
    double s = std::sin(p[2] * t + p[3]);
    double c = std::cos(p[2] * t + p[3]);
    out[0] = 1.0 + v * s;
    out[1] = p[0] * sech2(p[1]) * s;
    out[2] = p[0] * v * t * c;
    out[3] = p[0] * v * c;
}

double dip_model(const std::vector<double>& p, double dt) {
    double sigma = std::exp(p[2]);
    return p[0] * (1.0 - std::tanh(p[1]) * std::exp(-dt * dt / (2.0 * sigma * sigma)));
}

void dip_jacobian(const std::vector<double>& p, double dt, double out[3]) {
    double sigma = std::exp(p[2]);
    double g = std::exp(-dt * dt / (2.0 * sigma * sigma));
    double v = std::tanh(p[1]);
    out[0] = 1.0 - v * g;
    out[1] = -p[0] * sech2(p[1]) * g;
    // d/d(log sigma) = d/dsigma * sigma
    out[2] = -p[0] * v * g * (dt * dt / (sigma * sigma));
}

FringeFit fit_fringe(const std::vector<double>& control, const std::vector<double>& rate) {
    if (control.size() != rate.size()) throw config_error("fringe fit: size mismatch");
    if (control.size() < 8) throw config_error("fringe fit needs at least 8 points");
    const int n = static_cast<int>(control.size());

    double mean = 0.0;
    for (double v : rate) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : rate) var += (v - mean) * (v - mean);

    double span = *std::max_element(control.begin(), control.end()) -
                  *std::min_element(control.begin(), control.end());
    if (span <= 0.0) throw config_error("fringe fit: degenerate control span");

    // discrete spectral scan for the starting frequency
    double best_w = 2.0 * M_PI / span;
    double best_rss = std::numeric_limits<double>::infinity();
    const int n_freq = 400;
    for (int k = 1; k <= n_freq; ++k) {
        double w = (2.0 * M_PI) * (0.25 + 0.5 * static_cast<double>(n * k) / n_freq) / span;
        double rss = scan_rss(control, rate, w, nullptr, nullptr, nullptr);
        if (rss < best_rss) {
            best_rss = rss;
            best_w = w;
        }
    }

    FringeFit out;
    if (var <= 0.0 || best_rss > 0.999999 * var) {
        // constant data: no spectral peak improves on the flat model
        out.amplitude = mean;
        out.info.degenerate = true;
        out.info.converged = true;
        out.info.params = {mean, 0.0, best_w, 0.0};
        out.info.sigmas = {std::sqrt(var / std::max(1, n - 1)), 0.0, 0.0, 0.0};
        return out;
    }

    double a0, b0, c0;
    scan_rss(control, rate, best_w, &a0, &b0, &c0);
    double v0 = std::clamp(std::hypot(b0, c0) / std::max(a0, 1e-300), 1e-6, 0.999);
    std::vector<double> p = {std::max(a0, 1e-300), std::atanh(v0), best_w, std::atan2(c0, b0)};

    FitResult info =
        levenberg_marquardt(fringe_model, [](const std::vector<double>& q, double t,
                                             double* j) { fringe_jacobian(q, t, j); },
                            4, control, rate, p);

    double u = info.params[1];
    double v = std::tanh(u);
    double phi = info.params[3];
    if (v < 0.0) {  // absorb sign into the phase
        v = -v;
        u = -u;
        phi += M_PI;
    }
    phi = std::remainder(phi, 2.0 * M_PI);
    out.amplitude = info.params[0];
    out.visibility = v;
    out.omega = info.params[2];
    out.phase = phi;
    out.sigma_amplitude = info.sigmas[0];
    out.sigma_visibility = sech2(u) * info.sigmas[1];
    out.sigma_omega = info.sigmas[2];
    out.sigma_phase = info.sigmas[3];
    out.info = std::move(info);
    return out;
}

DipFit fit_hom_dip(const std::vector<double>& delta_t, const std::vector<double>& rate) {
    if (delta_t.size() != rate.size()) throw config_error("dip fit: size mismatch");
    if (delta_t.size() < 6) throw config_error("dip fit needs at least 6 points");
    const int n = static_cast<int>(delta_t.size());

    // plateau from the outer third (largest |dt|), depth from the minimum
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::fabs(delta_t[a]) > std::fabs(delta_t[b]);
    });
    double plateau = 0.0;
    int n_out = std::max(2, n / 3);
    for (int i = 0; i < n_out; ++i) plateau += rate[order[i]];
    plateau /= n_out;
    int imin = 0;
    for (int i = 1; i < n; ++i)
        if (rate[i] < rate[imin]) imin = i;
    double depth = std::max(plateau - rate[imin], 0.0);

    DipFit out;
    if (plateau <= 0.0 || depth <= 0.0) {
        out.amplitude = plateau;
        out.info.degenerate = true;
        out.info.converged = true;
        out.info.params = {plateau, 0.0, 0.0};
        out.info.sigmas = {0.0, 0.0, 0.0};
        return out;
    }

    // sigma from the half-width at half depth
    double half_level = plateau - 0.5 * depth;
    double hwhm = 0.0;
    for (int i = 0; i < n; ++i)
        if (rate[i] <= half_level) hwhm = std::max(hwhm, std::fabs(delta_t[i] - delta_t[imin]));
    if (hwhm <= 0.0) hwhm = std::fabs(delta_t[order[0]]) / 4.0 + 1e-9;
    double sigma0 = hwhm / 1.1774;  // HWHM = sigma sqrt(2 ln 2)

    double v0 = std::clamp(depth / plateau, 1e-6, 0.999);
    std::vector<double> p = {plateau, std::atanh(v0), std::log(sigma0)};

    FitResult info = levenberg_marquardt(
        dip_model,
        [](const std::vector<double>& q, double t, double* j) { dip_jacobian(q, t, j); }, 3,
        delta_t, rate, p);

    double u = info.params[1];
    double sigma = std::exp(info.params[2]);
    out.amplitude = info.params[0];
    out.visibility = std::fabs(std::tanh(u));
    out.sigma_ps = sigma;
    out.sigma_amplitude = info.sigmas[0];
    out.sigma_visibility = sech2(u) * info.sigmas[1];
    out.sigma_sigma_ps = sigma * info.sigmas[2];
    out.info = std::move(info);
    return out;
}

}  // namespace tbsim
