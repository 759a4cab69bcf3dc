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

#ifndef TBSIM_RNG_HPP
#define TBSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace tbsim {

// splitmix64, used to decorrelate (seed, stream-index) pairs before feeding
// mt19937_64. Resampling trials and synthesis streams each get their own
// index, so results do not depend on evaluation order or thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with hand-rolled samplers. mt19937_64's sequence is fixed
// by the standard, and we avoid std distributions so byte-identical output
// does not depend on the standard library implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51db049257e1674fULL))) {}

    double uniform() {
        // 53-bit mantissa in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    // Poisson sampler: product-of-uniforms inversion for small means, PTRS
    // transformed rejection (Hormann 1993) otherwise.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            const double limit = std::exp(-mean);
            double prod = 1.0;
            std::uint64_t n = 0;
            do {
                prod *= uniform();
                if (prod <= limit) return n;
                ++n;
            } while (n < 10000000);
            return n;
        }
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            double u = uniform() - 0.5;
            double v = uniform();
            double us = 0.5 - std::fabs(u);
            double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
            if (k < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                k * log_mean - mean - std::lgamma(k + 1.0)) {
                return static_cast<std::uint64_t>(k);
            }
        }
    }

    // Cycle index of the next success of a Bernoulli(p) process, starting at
    // the current cycle (geometric skip, exact for p in (0,1]).
    std::uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        double u = 0.0;
        while (u == 0.0) u = uniform();
        return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tbsim

#endif
