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

#ifndef TBSIM_CLI_COMMANDS_HPP
#define TBSIM_CLI_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tbsim::cli {

struct SimulateOptions {
    std::string scenario;
    std::string preset = "paper";
    std::vector<std::string> sets;  // repeated name=value overrides
    std::string sweep;              // "name=lo:hi:log20" / "lin20"; empty = single point
    std::string out;                // empty = stdout
    std::uint64_t seed = 1;
    bool oracle_check = false;
};

struct ReproduceOptions {
    std::string id;  // fig2, fig3a, fig3b, fig4a, fig4b, fig7, table1, table2
    std::string outdir = ".";
    std::uint64_t seed = 1;
};

struct TomographyOptions {
    std::string counts_path;
    std::string target = "minus";  // expected teleported state
    std::string out;
    int trials = 1000;
    std::uint64_t seed = 1;
};

struct DecoyOptions {
    std::string data_path;
    std::string out;
};

struct TagsSynthesizeOptions {
    std::string out;
    double duration_s = 1.0;
    double clock_hz = 90e6;
    int channels = 4;
    std::vector<std::string> rates;          // "ch:bin:p"
    std::vector<std::string> joints;         // "chA:chB:bin:p"
    std::string pair;                        // shortcut "mu_b:eta_s:eta_i" on channels 1,2
    std::vector<std::int64_t> bin_offsets = {0, 2000};
    double jitter_fwhm_ps = 0.0;
    std::uint64_t seed = 1;
};

struct TagsCountOptions {
    std::string in;
    std::vector<int> channels;
    std::int64_t window_ps = 1000;
    int cycle_offset = 0;
    std::vector<std::string> delays;  // "ch:ps"
    std::string out;
};

struct SelfcheckOptions {
    double perturb = 0.0;  // test hook: scales the closed form by (1+perturb)
};

// Each command returns 0 on success and throws on failure; main maps
// config_error to exit 2 and other failures to exit 1.
int cmd_simulate(const SimulateOptions& opt);
int cmd_reproduce(const ReproduceOptions& opt);
int cmd_tomography(const TomographyOptions& opt);
int cmd_decoy(const DecoyOptions& opt);
int cmd_tags_synthesize(const TagsSynthesizeOptions& opt);
int cmd_tags_count(const TagsCountOptions& opt);
int cmd_selfcheck(const SelfcheckOptions& opt);

}  // namespace tbsim::cli

#endif
