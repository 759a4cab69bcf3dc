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

#ifndef TBSIM_COMMON_HPP
#define TBSIM_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

extern "C" {
__float128 expq(__float128);
__float128 sqrtq(__float128);
__float128 logq(__float128);
__float128 fabsq(__float128);
}

namespace tbsim {

// Invalid circuit/pattern/parameter descriptions.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Linear-algebra breakdown (non-physical covariance reaching a factorization).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude-map budget exceeded in the Fock oracle.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar shims so the Gaussian engine can run in double (default) or
// __float128 (used where inclusion-exclusion cancellation would otherwise
// swamp a tight equivalence tolerance).
inline double real_exp(double x) { return std::exp(x); }
inline double real_sqrt(double x) { return std::sqrt(x); }
inline double real_log(double x) { return std::log(x); }
inline double real_abs(double x) { return std::fabs(x); }

inline __float128 real_exp(__float128 x) { return expq(x); }
inline __float128 real_sqrt(__float128 x) { return sqrtq(x); }
inline __float128 real_log(__float128 x) { return logq(x); }
inline __float128 real_abs(__float128 x) { return fabsq(x); }

inline double to_double(double x) { return x; }
inline double to_double(__float128 x) { return static_cast<double>(x); }

}  // namespace tbsim

#endif
