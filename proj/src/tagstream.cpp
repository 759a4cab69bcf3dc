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

#include "tbsim/tagstream.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "tbsim/rng.hpp"

namespace tbsim::daq {

namespace {

constexpr char kMagic[4] = {'T', 'T', 'A', 'G'};
constexpr std::uint16_t kVersion = 1;

std::int64_t cycle_start_ps(std::uint64_t cycle, double clock_hz) {
    // integer picoseconds; truncation keeps the sequence monotone
    return static_cast<std::int64_t>(static_cast<double>(cycle) * (1e12 / clock_hz));
}

struct RawEvent {
    std::int64_t t;
    std::uint8_t ch;
};

}  // namespace

void StreamSpec::validate() const {
    if (clock_hz <= 0) throw config_error("stream spec: clock rate must be positive");
    if (duration_s <= 0) throw config_error("stream spec: duration must be positive");
    if (channel_count < 1 || channel_count > 64)
        throw config_error("stream spec: channel count outside [1,64]");
    if (bin_offsets_ps.empty()) throw config_error("stream spec: needs at least one bin");
    if (marginals.size() != static_cast<size_t>(channel_count))
        throw config_error("stream spec: marginals must have one row per channel");
    for (const auto& row : marginals) {
        if (row.size() != bin_offsets_ps.size())
            throw config_error("stream spec: marginal row size must match bin count");
        for (double p : row)
            if (!(p >= 0.0 && p <= 1.0))
                throw config_error("stream spec: marginal probability outside [0,1]");
    }
    std::vector<std::vector<bool>> in_joint(
        static_cast<size_t>(channel_count), std::vector<bool>(bin_offsets_ps.size(), false));
    for (const auto& j : joints) {
        if (j.channel_a < 1 || j.channel_a > channel_count || j.channel_b < 1 ||
            j.channel_b > channel_count || j.channel_a == j.channel_b)
            throw config_error("stream spec: joint channels invalid");
        if (j.bin < 0 || j.bin >= static_cast<int>(bin_offsets_ps.size()))
            throw config_error("stream spec: joint bin out of range");
        double pa = marginals[j.channel_a - 1][j.bin];
        double pb = marginals[j.channel_b - 1][j.bin];
        if (j.probability > std::min(pa, pb) + 1e-15 || j.probability < 0.0)
            throw config_error("stream spec: joint probability exceeds a marginal");
        if (pa + pb - j.probability > 1.0 + 1e-15)
            throw config_error("stream spec: joint/marginal combination is not a distribution");
        if (in_joint[j.channel_a - 1][j.bin] || in_joint[j.channel_b - 1][j.bin])
            throw config_error("stream spec: a channel appears in two joints for one bin");
        in_joint[j.channel_a - 1][j.bin] = true;
        in_joint[j.channel_b - 1][j.bin] = true;
    }
    if (jitter_fwhm_ps < 0) throw config_error("stream spec: jitter must be >= 0");
    if (dead_time_ps < 0) throw config_error("stream spec: dead time must be >= 0");
}

TimeTagStream synthesize(const StreamSpec& spec) {
    spec.validate();
    const auto n_cycles =
        static_cast<std::uint64_t>(spec.duration_s * spec.clock_hz);
    const double sigma_jitter = spec.jitter_fwhm_ps / 2.3548200450309493;

    std::vector<std::vector<bool>> in_joint(
        static_cast<size_t>(spec.channel_count), std::vector<bool>(spec.bin_offsets_ps.size(), false));
    for (const auto& j : spec.joints) {
        in_joint[j.channel_a - 1][j.bin] = true;
        in_joint[j.channel_b - 1][j.bin] = true;
    }

    std::vector<RawEvent> events;
    std::uint64_t stream_index = 0;

    // correlated pairs: one sparse stream per joint at rate P(any of the
    // pair clicks), category drawn conditionally
    for (const auto& j : spec.joints) {
        Rng rng(spec.seed, stream_index++);
        double pa = spec.marginals[j.channel_a - 1][j.bin];
        double pb = spec.marginals[j.channel_b - 1][j.bin];
        double p_any = pa + pb - j.probability;
        if (p_any <= 0.0) continue;
        std::int64_t offset = spec.bin_offsets_ps[j.bin];
        std::uint64_t cycle = rng.geometric_skip(p_any);
        while (cycle < n_cycles) {
            std::int64_t t = cycle_start_ps(cycle, spec.clock_hz) + offset;
            double u = rng.uniform() * p_any;
            bool hit_a = true, hit_b = true;
            if (u < j.probability) {
                // both
            } else if (u < pa) {
                hit_b = false;
            } else {
                hit_a = false;
            }
            if (hit_a) events.push_back({t, static_cast<std::uint8_t>(j.channel_a)});
            if (hit_b) events.push_back({t, static_cast<std::uint8_t>(j.channel_b)});
            cycle += 1 + rng.geometric_skip(p_any);
        }
    }

    // independent channel/bin streams
    for (int ch = 1; ch <= spec.channel_count; ++ch) {
        for (size_t bin = 0; bin < spec.bin_offsets_ps.size(); ++bin) {
            if (in_joint[ch - 1][bin]) continue;
            double p = spec.marginals[ch - 1][bin];
            if (p <= 0.0) continue;
            Rng rng(spec.seed, stream_index + (static_cast<std::uint64_t>(ch) << 8) + bin);
            std::int64_t offset = spec.bin_offsets_ps[bin];
            std::uint64_t cycle = rng.geometric_skip(p);
            while (cycle < n_cycles) {
                events.push_back(
                    {cycle_start_ps(cycle, spec.clock_hz) + offset, static_cast<std::uint8_t>(ch)});
                cycle += 1 + rng.geometric_skip(p);
            }
        }
    }

    // timestamp jitter
    if (sigma_jitter > 0.0) {
        Rng rng(spec.seed, 0xffffffffULL);
        for (auto& e : events) {
            e.t += static_cast<std::int64_t>(std::llround(rng.normal() * sigma_jitter));
            if (e.t < 0) e.t = 0;
        }
    }

    std::sort(events.begin(), events.end(), [](const RawEvent& a, const RawEvent& b) {
        return a.t != b.t ? a.t < b.t : a.ch < b.ch;
    });

    // per-channel dead time
    std::vector<std::int64_t> last(static_cast<size_t>(spec.channel_count) + 1,
                                   -(spec.dead_time_ps + 1));
    TimeTagStream out;
    out.clock_hz = spec.clock_hz;
    out.duration_s = spec.duration_s;
    out.events.reserve(events.size());
    for (const auto& e : events) {
        if (e.t - last[e.ch] <= spec.dead_time_ps) continue;
        last[e.ch] = e.t;
        out.events.push_back({e.ch, e.t});
    }
    return out;
}

void CoincidenceConfig::validate() const {
    if (clock_hz <= 0) throw config_error("coincidence config: clock rate must be positive");
    if (window_ps <= 0) throw config_error("coincidence config: window must be positive");
    if (static_cast<double>(window_ps) >= 1e12 / clock_hz)
        throw config_error("coincidence config: window must be below the clock period");
}

std::uint64_t count_singles(const TimeTagStream& stream, int channel) {
    std::uint64_t n = 0;
    for (const auto& e : stream.events) n += (e.channel == channel);
    return n;
}

std::uint64_t count_coincidences(const TimeTagStream& stream, const CoincidenceConfig& config,
                                 const std::vector<int>& channels) {
    config.validate();
    if (channels.size() < 2 || channels.size() > 3)
        throw config_error("count_coincidences takes a channel pair or triple");
    for (int ch : channels)
        if (ch < 1 || ch > 255) throw config_error("invalid channel number");

    // delay-corrected per-channel timestamp arrays (stream is time-sorted, and
    // a constant per-channel shift preserves order)
    std::vector<std::vector<std::int64_t>> ts(channels.size());
    for (const auto& e : stream.events) {
        for (size_t k = 0; k < channels.size(); ++k) {
            if (e.channel == channels[k]) {
                ts[k].push_back(e.timestamp_ps - config.delay_for(e.channel));
                break;
            }
        }
    }

    const std::int64_t shift = static_cast<std::int64_t>(
        std::llround(static_cast<double>(config.cycle_offset) * 1e12 / config.clock_hz));
    const std::int64_t half = config.window_ps / 2;

    std::uint64_t count = 0;
    std::vector<size_t> ptr(channels.size(), 0);
    for (std::int64_t t0 : ts[0]) {
        std::int64_t lo = t0 + shift - half;
        std::int64_t hi = t0 + shift + half;
        bool all = true;
        for (size_t k = 1; k < channels.size(); ++k) {
            auto& v = ts[k];
            size_t& i = ptr[k];
            while (i < v.size() && v[i] < lo) ++i;
            if (i >= v.size() || v[i] > hi) {
                all = false;
            }
        }
        count += all;
    }
    return count;
}

PairStats estimate_pair_stats(double singles_signal, double singles_idler, double coincidences,
                              double accidentals) {
    if (coincidences <= 0.0) throw config_error("pair statistics need coincidences > 0");
    if (singles_signal <= 0.0 || singles_idler <= 0.0)
        throw config_error("pair statistics need positive singles");
    if (accidentals < 0.0) throw config_error("accidentals must be >= 0");
    PairStats s;
    s.mu_b = accidentals / coincidences;
    s.mu_b_sigma = accidentals > 0.0
                       ? s.mu_b * std::sqrt(1.0 / accidentals + 1.0 / coincidences)
                       : std::sqrt(1.0) / coincidences;  // 1-count scale when no accidentals
    s.eta_s = coincidences / singles_idler;
    s.eta_s_sigma = s.eta_s * std::sqrt(1.0 / coincidences + 1.0 / singles_idler);
    s.eta_i = coincidences / singles_signal;
    s.eta_i_sigma = s.eta_i * std::sqrt(1.0 / coincidences + 1.0 / singles_signal);
    return s;
}

void write_ttag(const TimeTagStream& stream, const std::string& path, int channel_count) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open " + path + " for writing");
    auto put = [&](const void* p, size_t n) { f.write(static_cast<const char*>(p), n); };
    put(kMagic, 4);
    std::uint16_t version = kVersion;
    put(&version, 2);
    std::uint64_t clock = static_cast<std::uint64_t>(stream.clock_hz);
    put(&clock, 8);
    std::uint8_t nch = static_cast<std::uint8_t>(channel_count);
    put(&nch, 1);
    for (const auto& e : stream.events) {
        put(&e.channel, 1);
        std::uint64_t t = static_cast<std::uint64_t>(e.timestamp_ps);
        put(&t, 8);
    }
    if (!f) throw numerical_error("write failure on " + path);
}

TimeTagStream read_ttag(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw config_error(path + " is not a TTAG file");
    std::uint16_t version = 0;
    f.read(reinterpret_cast<char*>(&version), 2);
    if (version != kVersion) throw config_error("unsupported TTAG version");
    std::uint64_t clock = 0;
    f.read(reinterpret_cast<char*>(&clock), 8);
    std::uint8_t nch = 0;
    f.read(reinterpret_cast<char*>(&nch), 1);
    TimeTagStream s;
    s.clock_hz = static_cast<double>(clock);
    for (;;) {
        std::uint8_t ch;
        std::uint64_t t;
        f.read(reinterpret_cast<char*>(&ch), 1);
        if (!f) break;
        f.read(reinterpret_cast<char*>(&t), 8);
        if (!f) throw config_error(path + ": truncated event record");
        s.events.push_back({ch, static_cast<std::int64_t>(t)});
    }
    if (!s.events.empty())
        s.duration_s = static_cast<double>(s.events.back().timestamp_ps) * 1e-12;
    return s;
}

void write_tags_csv(const TimeTagStream& stream, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw config_error("cannot open " + path + " for writing");
    f << "channel,timestamp_ps\n";
    for (const auto& e : stream.events)
        f << static_cast<int>(e.channel) << ',' << e.timestamp_ps << '\n';
}

TimeTagStream read_tags_csv(const std::string& path, double clock_hz) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open " + path);
    TimeTagStream s;
    s.clock_hz = clock_hz;
    std::string line;
    size_t row = 0;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty() || line == "channel,timestamp_ps") continue;
        int ch;
        long long t;
        if (std::sscanf(line.c_str(), "%d,%lld", &ch, &t) != 2)
            throw config_error(path + ": malformed row " + std::to_string(row));
        s.events.push_back({static_cast<std::uint8_t>(ch), static_cast<std::int64_t>(t)});
    }
    if (!s.events.empty())
        s.duration_s = static_cast<double>(s.events.back().timestamp_ps) * 1e-12;
    return s;
}

}  // namespace tbsim::daq
