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
// Exact Gaussian-state propagation through linear-optical networks and
// threshold-detector click probabilities via vacuum-projection
// inclusion-exclusion.
//
// Conventions: quadrature order x1,p1,...,xn,pn; vacuum covariance is the
// identity; a coherent state of mean photon number mu has |mean|^2 = 4 mu.
// Under these, P(vacuum on mode set S) =
//     2^|S| det(V_S + I)^{-1/2} exp(-1/2 d_S^T (V_S + I)^{-1} d_S).

#ifndef TBSIM_GAUSSIAN_HPP
#define TBSIM_GAUSSIAN_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "tbsim/circuit.hpp"
#include "tbsim/common.hpp"

namespace tbsim {

template <class R = double>
class GaussianState {
  public:
    GaussianState() = default;

    explicit GaussianState(int modes) { grow(modes); }

    int modes() const { return modes_; }
    const std::vector<R>& mean() const { return mean_; }
    const std::vector<R>& cov() const { return cov_; }
    R mean_at(int q) const { return mean_[static_cast<size_t>(q)]; }
    R cov_at(int r, int c) const { return cov_[static_cast<size_t>(r) * dim() + c]; }
    int dim() const { return 2 * modes_; }

    int attach_coherent(double mu, double phase) {
        if (mu < 0) throw config_error("coherent source: mu must be >= 0");
        int k = modes_;
        grow(1);
        R amp = R(2) * real_sqrt(R(mu));
        mean_[2 * k] = amp * R(std::cos(phase));
        mean_[2 * k + 1] = amp * R(std::sin(phase));
        return k;
    }

    // Returns the index of the first (signal) mode; idler is the next one.
    int attach_tmsv(double mu) {
        if (mu < 0) throw config_error("TMSV source: mu must be >= 0");
        int k = modes_;
        grow(2);
        R c = R(1) + R(2) * R(mu);                      // cosh 2r, sinh^2 r = mu
        R s = R(2) * real_sqrt(R(mu) * (R(1) + R(mu)));  // sinh 2r
        at(2 * k, 2 * k) = c;
        at(2 * k + 1, 2 * k + 1) = c;
        at(2 * k + 2, 2 * k + 2) = c;
        at(2 * k + 3, 2 * k + 3) = c;
        at(2 * k, 2 * k + 2) = s;
        at(2 * k + 2, 2 * k) = s;
        at(2 * k + 1, 2 * k + 3) = -s;
        at(2 * k + 3, 2 * k + 1) = -s;
        return k;
    }

    int attach_vacuum(int count) {
        int k = modes_;
        grow(count);
        return k;
    }

    // a' = t a + r e^{i phase} b,  b' = -r e^{-i phase} a + t b,  r = sqrt(1-t^2)
    void beam_splitter(int i, int j, double t, double phase) {
        check_mode(i);
        check_mode(j);
        if (i == j) throw config_error("beam splitter needs two distinct modes");
        if (t < 0.0 || t > 1.0) throw config_error("beam splitter transmittance outside [0,1]");
        R tt = R(t);
        R rr = real_sqrt(std::max<R>(R(0), R(1) - tt * tt));
        R c = R(std::cos(phase));
        R s = R(std::sin(phase));
        // 4x4 block acting on (x_i, p_i, x_j, p_j); R(phase) rotations carry
        // the splitter phase.
        R S[4][4] = {{tt, R(0), rr * c, -rr * s},
                     {R(0), tt, rr * s, rr * c},
                     {-rr * c, -rr * s, tt, R(0)},
                     {rr * s, -rr * c, R(0), tt}};
        apply_two_mode(i, j, S);
    }

    void phase_shift(int i, double phase) {
        check_mode(i);
        R c = R(std::cos(phase));
        R s = R(std::sin(phase));
        R S[2][2] = {{c, -s}, {s, c}};
        apply_one_mode(i, S);
    }

    void loss(int i, double eta) {
        check_mode(i);
        if (eta < 0.0 || eta > 1.0) throw config_error("loss efficiency outside [0,1]");
        R se = real_sqrt(R(eta));
        int n2 = dim();
        mean_[2 * i] *= se;
        mean_[2 * i + 1] *= se;
        for (int q = 2 * i; q <= 2 * i + 1; ++q) {
            for (int c = 0; c < n2; ++c) {
                at(q, c) *= se;
                at(c, q) *= se;
            }
        }
        // the diagonal block got eta twice; restore eta*B + (1-eta)*I
        at(2 * i, 2 * i) += R(1) - R(eta);
        at(2 * i + 1, 2 * i + 1) += R(1) - R(eta);
    }

    // Tr[rho_S |0><0|^S] from the marginal on `modes`.
    R vacuum_probability(const std::vector<int>& modes) const {
        if (modes.empty()) throw config_error("vacuum probability of empty mode set");
        std::vector<int> m(modes);
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        for (int k : m) check_mode(k);
        const int nm = static_cast<int>(m.size());
        const int d = 2 * nm;
        std::vector<R> a(static_cast<size_t>(d) * d);
        std::vector<R> v(d);
        for (int r = 0; r < nm; ++r) {
            v[2 * r] = mean_[2 * m[r]];
            v[2 * r + 1] = mean_[2 * m[r] + 1];
            for (int c = 0; c < nm; ++c) {
                for (int qr = 0; qr < 2; ++qr)
                    for (int qc = 0; qc < 2; ++qc)
                        a[static_cast<size_t>(2 * r + qr) * d + 2 * c + qc] =
                            cov_at(2 * m[r] + qr, 2 * m[c] + qc);
            }
        }
        for (int q = 0; q < d; ++q) a[static_cast<size_t>(q) * d + q] += R(1);
        // Cholesky of V_S + I (symmetric positive definite for physical states)
        R log_det = R(0);
        for (int k = 0; k < d; ++k) {
            R pivot = a[static_cast<size_t>(k) * d + k];
            for (int r = 0; r < k; ++r) {
                R lkr = a[static_cast<size_t>(k) * d + r];
                pivot -= lkr * lkr;
            }
            if (!(to_double(pivot) > 0.0))
                throw numerical_error("vacuum probability: V_S + I not positive definite");
            R lkk = real_sqrt(pivot);
            a[static_cast<size_t>(k) * d + k] = lkk;
            log_det += R(2) * real_log(lkk);
            for (int r = k + 1; r < d; ++r) {
                R sum = a[static_cast<size_t>(r) * d + k];
                for (int c = 0; c < k; ++c)
                    sum -= a[static_cast<size_t>(r) * d + c] * a[static_cast<size_t>(k) * d + c];
                a[static_cast<size_t>(r) * d + k] = sum / lkk;
            }
        }
        // solve L y = d_S; quadratic form = |y|^2
        R quad = R(0);
        for (int r = 0; r < d; ++r) {
            R sum = v[r];
            for (int c = 0; c < r; ++c) sum -= a[static_cast<size_t>(r) * d + c] * v[c];
            v[r] = sum / a[static_cast<size_t>(r) * d + r];
            quad += v[r] * v[r];
        }
        R log_p = R(nm) * real_log(R(2)) - log_det / R(2) - quad / R(2);
        return real_exp(log_p);
    }

    R mode_mean_photons(int k) const {
        check_mode(k);
        R q = (cov_at(2 * k, 2 * k) + cov_at(2 * k + 1, 2 * k + 1) - R(2)) / R(4);
        R d2 = mean_[2 * k] * mean_[2 * k] + mean_[2 * k + 1] * mean_[2 * k + 1];
        return q + d2 / R(4);
    }

    R total_mean_photons() const {
        R tot = R(0);
        for (int k = 0; k < modes_; ++k) tot += mode_mean_photons(k);
        return tot;
    }

  private:
    int modes_ = 0;
    std::vector<R> mean_;
    std::vector<R> cov_;

    R& at(int r, int c) { return cov_[static_cast<size_t>(r) * dim() + c]; }

    void check_mode(int k) const {
        if (k < 0 || k >= modes_) throw config_error("mode index out of range");
    }

    void grow(int count) {
        if (count < 0) throw config_error("cannot grow by a negative mode count");
        int old = modes_;
        int next = modes_ + count;
        std::vector<R> mean2(2 * static_cast<size_t>(next), R(0));
        std::vector<R> cov2(4 * static_cast<size_t>(next) * next, R(0));
        for (int q = 0; q < 2 * old; ++q) mean2[q] = mean_[q];
        for (int r = 0; r < 2 * old; ++r)
            for (int c = 0; c < 2 * old; ++c)
                cov2[static_cast<size_t>(r) * 2 * next + c] = cov_[static_cast<size_t>(r) * 2 * old + c];
        for (int q = 2 * old; q < 2 * next; ++q) cov2[static_cast<size_t>(q) * 2 * next + q] = R(1);
        modes_ = next;
        mean_ = std::move(mean2);
        cov_ = std::move(cov2);
    }

    void apply_one_mode(int i, const R S[2][2]) {
        int n2 = dim();
        R m0 = mean_[2 * i], m1 = mean_[2 * i + 1];
        mean_[2 * i] = S[0][0] * m0 + S[0][1] * m1;
        mean_[2 * i + 1] = S[1][0] * m0 + S[1][1] * m1;
        for (int c = 0; c < n2; ++c) {  // rows
            R a0 = cov_at(2 * i, c), a1 = cov_at(2 * i + 1, c);
            at(2 * i, c) = S[0][0] * a0 + S[0][1] * a1;
            at(2 * i + 1, c) = S[1][0] * a0 + S[1][1] * a1;
        }
        for (int r = 0; r < n2; ++r) {  // columns
            R a0 = cov_at(r, 2 * i), a1 = cov_at(r, 2 * i + 1);
            at(r, 2 * i) = a0 * S[0][0] + a1 * S[0][1];
            at(r, 2 * i + 1) = a0 * S[1][0] + a1 * S[1][1];
        }
    }

    void apply_two_mode(int i, int j, const R S[4][4]) {
        int q[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
        int n2 = dim();
        R m[4], t[4];
        for (int r = 0; r < 4; ++r) m[r] = mean_[q[r]];
        for (int r = 0; r < 4; ++r) {
            t[r] = R(0);
            for (int c = 0; c < 4; ++c) t[r] += S[r][c] * m[c];
        }
        for (int r = 0; r < 4; ++r) mean_[q[r]] = t[r];
        for (int c = 0; c < n2; ++c) {
            R a[4];
            for (int r = 0; r < 4; ++r) a[r] = cov_at(q[r], c);
            for (int r = 0; r < 4; ++r) {
                R sum = R(0);
                for (int k = 0; k < 4; ++k) sum += S[r][k] * a[k];
                at(q[r], c) = sum;
            }
        }
        for (int r = 0; r < n2; ++r) {
            R a[4];
            for (int c = 0; c < 4; ++c) a[c] = cov_at(r, q[c]);
            for (int c = 0; c < 4; ++c) {
                R sum = R(0);
                for (int k = 0; k < 4; ++k) sum += a[k] * S[c][k];
                at(r, q[c]) = sum;
            }
        }
    }
};

template <class R>
void apply_element_inplace(GaussianState<R>& state, const Element& e) {
    if (auto* c = std::get_if<CoherentSource>(&e)) {
        state.attach_coherent(c->mu, c->phase);
    } else if (auto* t = std::get_if<TmsvSource>(&e)) {
        state.attach_tmsv(t->mu);
    } else if (std::get_if<SinglePhotonQubitSource>(&e)) {
        throw config_error("single-photon source is non-Gaussian; use the Fock oracle");
    } else if (auto* v = std::get_if<VacuumSource>(&e)) {
        state.attach_vacuum(v->count);
    } else if (auto* b = std::get_if<BeamSplitter>(&e)) {
        state.beam_splitter(b->mode_a, b->mode_b, b->transmittance, b->phase);
    } else if (auto* p = std::get_if<PhaseShift>(&e)) {
        state.phase_shift(p->mode, p->phase);
    } else if (auto* l = std::get_if<Loss>(&e)) {
        state.loss(l->mode, l->efficiency);
    }
}

template <class R>
GaussianState<R> apply_element(GaussianState<R> state, const Element& e) {
    apply_element_inplace(state, e);
    return state;
}

template <class R = double>
GaussianState<R> evaluate_circuit(const OpticalCircuit& circuit) {
    circuit.validate();
    GaussianState<R> state;
    for (const auto& e : circuit.elements) apply_element_inplace(state, e);
    return state;
}

template <class R>
R vacuum_probability(const GaussianState<R>& state, const std::vector<int>& modes) {
    return state.vacuum_probability(modes);
}

// P(pattern) = sum over subsets T of required_click of
//   (-1)^|T| * prod_{d in T u N} (1 - dark_d) * P_vac(modes(T) u modes(N)).
// Detector efficiencies are folded in as loss on the monitored modes first.
template <class R>
R click_pattern_probability(const GaussianState<R>& state_in, const OpticalCircuit& circuit,
                            const ClickPattern& pattern) {
    validate_pattern(circuit, pattern);
    GaussianState<R> state = state_in;
    std::vector<const Detector*> clicks, no_clicks;
    for (const auto& id : pattern.required_click) clicks.push_back(&circuit.detector(id));
    for (const auto& id : pattern.required_no_click) no_clicks.push_back(&circuit.detector(id));
    for (const Detector* d : clicks)
        if (d->efficiency < 1.0)
            for (int m : d->modes) state.loss(m, d->efficiency);
    for (const Detector* d : no_clicks)
        if (d->efficiency < 1.0)
            for (int m : d->modes) state.loss(m, d->efficiency);

    std::vector<int> base_modes;
    R base_factor = R(1);
    for (const Detector* d : no_clicks) {
        base_modes.insert(base_modes.end(), d->modes.begin(), d->modes.end());
        base_factor *= R(1) - R(d->dark_prob);
    }

    const size_t nc = clicks.size();
    R prob = R(0);
    for (size_t mask = 0; mask < (size_t{1} << nc); ++mask) {
        std::vector<int> modes = base_modes;
        R factor = base_factor;
        int parity = 0;
        for (size_t b = 0; b < nc; ++b) {
            if (mask & (size_t{1} << b)) {
                modes.insert(modes.end(), clicks[b]->modes.begin(), clicks[b]->modes.end());
                factor *= R(1) - R(clicks[b]->dark_prob);
                parity ^= 1;
            }
        }
        R pv = modes.empty() ? R(1) : state.vacuum_probability(modes);
        prob += (parity ? -factor : factor) * pv;
    }
    return prob;
}

template <class R = double>
R click_pattern_probability(const OpticalCircuit& circuit, const ClickPattern& pattern) {
    GaussianState<R> state = evaluate_circuit<R>(circuit);
    return click_pattern_probability<R>(state, circuit, pattern);
}

}  // namespace tbsim

#endif
