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

#ifndef TBSIM_RESAMPLE_HPP
#define TBSIM_RESAMPLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "tbsim/common.hpp"

namespace tbsim {

struct ResampleResult {
    double sigma = 0.0;   // sample standard deviation of the estimator
    double mean = 0.0;
    int trials_used = 0;
    int failures = 0;
};

// Monte-Carlo Poisson uncertainty: each trial redraws every count from
// Poisson(count) and re-runs the estimator. Trials are keyed by (seed, trial
// index), so the result is independent of evaluation order. Estimator
// failures (exceptions) skip the trial; more than 10% failures is an error.
ResampleResult poisson_resample(const std::function<double(const std::vector<double>&)>& estimator,
                                const std::vector<double>& counts, int n_trials,
                                std::uint64_t seed);

}  // namespace tbsim

#endif
