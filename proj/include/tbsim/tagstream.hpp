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
// Time-tag stream synthesis and coincidence counting. Timestamps are integer
// picoseconds for bit-exact file round trips; per-cycle clicks are sampled
// sparsely with geometric skips, so synthesis cost scales with the number of
// events rather than clock cycles.

#ifndef TBSIM_TAGSTREAM_HPP
#define TBSIM_TAGSTREAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tbsim/common.hpp"

namespace tbsim::daq {

struct TimeTag {
    std::uint8_t channel = 0;
    std::int64_t timestamp_ps = 0;
};

struct TimeTagStream {
    double clock_hz = 90e6;
    double duration_s = 0.0;
    std::vector<TimeTag> events;  // sorted by timestamp, then channel
};

// Joint click of two channels in the same bin of the same clock cycle.
struct JointClickSpec {
    int channel_a = 1;
    int channel_b = 2;
    int bin = 0;
    double probability = 0.0;
};

struct StreamSpec {
    double clock_hz = 90e6;
    double duration_s = 1.0;
    int channel_count = 4;
    std::vector<std::int64_t> bin_offsets_ps = {0};  // bins within a clock cycle
    // marginal click probability per (channel-1, bin)
    std::vector<std::vector<double>> marginals;
    std::vector<JointClickSpec> joints;
    double jitter_fwhm_ps = 0.0;
    std::int64_t dead_time_ps = 50000;  // detector recovery
    std::uint64_t seed = 1;

    void validate() const;
};

TimeTagStream synthesize(const StreamSpec& spec);

struct CoincidenceConfig {
    double clock_hz = 90e6;
    std::int64_t window_ps = 1000;
    std::vector<std::int64_t> delays_ps;  // per channel number (1-based index into this-1)
    int cycle_offset = 0;                 // 0 = true coincidences, +-1 = accidentals

    void validate() const;
    std::int64_t delay_for(int channel) const {
        return channel - 1 < static_cast<int>(delays_ps.size()) ? delays_ps[channel - 1] : 0;
    }
};

// Number of anchor-channel events (channels[0]) with at least one partner
// event on every other channel inside the window around the configured cycle
// offset. Two-pointer sweep, O(total events).
std::uint64_t count_coincidences(const TimeTagStream& stream, const CoincidenceConfig& config,
                                 const std::vector<int>& channels);

std::uint64_t count_singles(const TimeTagStream& stream, int channel);

struct PairStats {
    double mu_b = 0.0;
    double mu_b_sigma = 0.0;
    double eta_s = 0.0;
    double eta_s_sigma = 0.0;
    double eta_i = 0.0;
    double eta_i_sigma = 0.0;
};

// mu_B ~ accidentals/coincidences; eta_s = coincidences/idler singles;
// eta_i = coincidences/signal singles; Poisson error propagation.
PairStats estimate_pair_stats(double singles_signal, double singles_idler, double coincidences,
                              double accidentals);

// Binary format: little-endian, header {magic "TTAG", version u16,
// clock_rate_hz u64, channel_count u8}, then repeated {channel u8,
// timestamp_ps u64}.
void write_ttag(const TimeTagStream& stream, const std::string& path, int channel_count = 4);
TimeTagStream read_ttag(const std::string& path);

// Text alternative: one "channel,timestamp_ps" line per event.
void write_tags_csv(const TimeTagStream& stream, const std::string& path);
TimeTagStream read_tags_csv(const std::string& path, double clock_hz = 90e6);

}  // namespace tbsim::daq

#endif
