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

#include "tbsim/resample.hpp"

#include <cmath>

#include "tbsim/rng.hpp"

namespace tbsim {

ResampleResult poisson_resample(const std::function<double(const std::vector<double>&)>& estimator,
                                const std::vector<double>& counts, int n_trials,
                                std::uint64_t seed) {
    if (n_trials < 100) throw config_error("poisson_resample needs at least 100 trials");
    for (double c : counts)
        if (c < 0) throw config_error("poisson_resample: negative count");

    std::vector<double> estimates;
    estimates.reserve(n_trials);
    int failures = 0;
    std::vector<double> resampled(counts.size());
    for (int trial = 0; trial < n_trials; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(trial));
        for (size_t j = 0; j < counts.size(); ++j)
            resampled[j] = static_cast<double>(rng.poisson(counts[j]));
        try {
            estimates.push_back(estimator(resampled));
        } catch (const std::exception&) {
            ++failures;
        }
    }
    if (failures * 10 > n_trials)
        throw numerical_error("poisson_resample: estimator failed on more than 10% of trials");

    ResampleResult out;
    out.trials_used = static_cast<int>(estimates.size());
    out.failures = failures;
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= std::max<size_t>(1, estimates.size());
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    if (estimates.size() > 1) var /= static_cast<double>(estimates.size() - 1);
    out.mean = mean;
    out.sigma = std::sqrt(var);
    return out;
}

}  // namespace tbsim
