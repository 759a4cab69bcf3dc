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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "presets.hpp"
#include "tbsim/csv.hpp"
#include "tbsim/decoy.hpp"
#include "tbsim/fock.hpp"
#include "tbsim/gaussian.hpp"
#include "tbsim/resample.hpp"
#include "tbsim/scenarios.hpp"
#include "tbsim/tagstream.hpp"
#include "tbsim/tomography.hpp"
#include "tbsim/version.hpp"

namespace tbsim::cli {

namespace {

struct Sweep {
    std::string param;
    std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    auto eq = text.find('=');
    if (eq == std::string::npos) throw config_error("sweep must look like name=lo:hi:log20");
    s.param = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    double lo, hi;
    char kind[8] = {0};
    int count = 0;
    if (std::sscanf(rest.c_str(), "%lf:%lf:%3[a-z]%d", &lo, &hi, kind, &count) != 4)
        throw config_error("sweep grid must look like lo:hi:log20 or lo:hi:lin20");
    std::string k = kind;
    if (k != "log" && k != "lin") throw config_error("sweep scale must be log or lin");
    if (count < 1) throw config_error("sweep grid is empty");
    if (k == "log" && (lo <= 0 || hi <= 0))
        throw config_error("log sweep needs positive endpoints");
    for (int i = 0; i < count; ++i) {
        double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        s.values.push_back(k == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return s;
}

std::unique_ptr<std::ostream> open_out(const std::string& path, std::ostream*& os) {
    if (path.empty()) {
        os = &std::cout;
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw config_error("cannot open " + path + " for writing");
    os = f.get();
    return f;
}

// Fock cross-check of the point's primary click pattern (cutoff 5).
double oracle_deviation(const std::string& scenario, const ScenarioParams& p) {
    const int cutoff = 5;
    if (scenario == "hom") {
        OpticalCircuit c = hom_circuit(p, p.zeta);
        ClickPattern pat{{"D1", "D2", "D3"}, {}};
        double g = click_pattern_probability<double>(c, pat);
        double f = fock::evaluate_click_probability(c, pat, cutoff);
        return std::fabs(g - f) / std::max(g, 1e-300);
    }
    if (scenario == "teleport-z") {
        TeleportCircuit tc = teleportation_circuit(p);
        ClickPattern pat = tc.bsm;
        pat.required_click.push_back(tc.d3_correct);
        double g = click_pattern_probability<double>(tc.circuit, pat);
        double f = fock::evaluate_click_probability(tc.circuit, pat, cutoff);
        return std::fabs(g - f) / std::max(g, 1e-300);
    }
    if (scenario == "teleport-x") {
        ScenarioParams q = p;
        q.input_state = InputState::plus;
        TeleportCircuit tc = teleportation_circuit(q, 0.7);
        ClickPattern pat = tc.bsm;
        pat.required_click.push_back(tc.d3_port1);
        double g = click_pattern_probability<double>(tc.circuit, pat);
        double f = fock::evaluate_click_probability(tc.circuit, pat, cutoff);
        return std::fabs(g - f) / std::max(g, 1e-300);
    }
    OpticalCircuit c = entanglement_circuit(p, 0.7);
    ClickPattern pat{{"Ds1", "Di2"}, {}};
    double g = click_pattern_probability<double>(c, pat);
    double f = fock::evaluate_click_probability(c, pat, cutoff);
    return std::fabs(g - f) / std::max(g, 1e-300);
}

std::array<Cplx, 2> target_ket(const std::string& name) {
    if (name == "early" || name == "e") return ket_early();
    if (name == "late" || name == "l") return ket_late();
    if (name == "plus") return ket_plus();
    if (name == "minus") return ket_minus();
    if (name == "plus_i") return ket_plus_i();
    if (name == "minus_i") return ket_minus_i();
    throw config_error("unknown target state: " + name);
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt) {
    ScenarioParams base = preset_params(opt.preset, opt.scenario);
    for (const auto& kv : opt.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw config_error("--set needs name=value: " + kv);
        apply_param(base, kv.substr(0, eq), kv.substr(eq + 1));
    }

    Sweep sweep;
    if (!opt.sweep.empty()) {
        sweep = parse_sweep(opt.sweep);
    } else {
        sweep.param = "";
        sweep.values = {0.0};
    }

    std::ostream* os = nullptr;
    auto holder = open_out(opt.out, os);
    CsvWriter w(*os);
    std::string cfg = opt.scenario + ";" + canonical_string(base) + ";sweep=" + opt.sweep;
    w.metadata("simulate " + opt.scenario, fnv1a64(cfg), opt.seed);

    std::vector<std::string> cols;
    const std::string swept = sweep.param.empty() ? "point" : sweep.param;
    if (opt.scenario == "hom")
        cols = {swept, "v_hom", "p3f_zeta", "p3f_zeta0"};
    else if (opt.scenario == "teleport-z")
        cols = {swept, "fidelity", "p_bsm", "p_correct", "p_any"};
    else if (opt.scenario == "teleport-x")
        cols = {swept, "fidelity", "visibility", "rate_max", "rate_min"};
    else if (opt.scenario == "entanglement")
        cols = {swept, "v_ent"};
    else
        throw config_error("unknown scenario: " + opt.scenario);
    if (opt.oracle_check) cols.push_back("oracle_rel_dev");
    w.header(cols);

    for (double value : sweep.values) {
        ScenarioParams p = base;
        if (!sweep.param.empty()) apply_param(p, sweep.param, CsvWriter::format(value));
        std::vector<double> row;
        row.push_back(sweep.param.empty() ? 0.0 : value);
        if (opt.scenario == "hom") {
            row.push_back(hom_visibility(p));
            row.push_back(p3f_closed_form(p, p.zeta));
            row.push_back(p3f_closed_form(p, 0.0));
        } else if (opt.scenario == "teleport-z") {
            auto r = teleport_fidelity_z(p);
            row.insert(row.end(), {r.fidelity, r.p_bsm, r.p_correct, r.p_any});
        } else if (opt.scenario == "teleport-x") {
            auto r = teleport_fidelity_plus(p);
            row.insert(row.end(), {r.fidelity, r.visibility, r.rate_max, r.rate_min});
        } else {
            row.push_back(entanglement_fringe(p).visibility);
        }
        if (opt.oracle_check) row.push_back(oracle_deviation(opt.scenario, p));
        w.row(row);
    }
    return 0;
}

int cmd_tomography(const TomographyOptions& opt) {
    CsvTable t = read_csv(opt.counts_path);
    TomographyData data;
    bool seen[3] = {false, false, false};
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& cells = t.rows[r];
        if (cells.size() != 3)
            throw config_error(opt.counts_path + ": row " + std::to_string(r + 1) +
                               " needs basis,outcome,count");
        int b;
        if (cells[0] == "z")
            b = 0;
        else if (cells[0] == "x")
            b = 1;
        else if (cells[0] == "y")
            b = 2;
        else
            throw config_error(opt.counts_path + ": row " + std::to_string(r + 1) +
                               " has unknown basis '" + cells[0] + "'");
        double oc = parse_double_cell(t, r, 1, opt.counts_path);
        if (oc != 0.0 && oc != 1.0)
            throw config_error(opt.counts_path + ": row " + std::to_string(r + 1) +
                               " outcome must be 0 or 1");
        double n = parse_double_cell(t, r, 2, opt.counts_path);
        if (n < 0) throw config_error(opt.counts_path + ": negative count in row " +
                                      std::to_string(r + 1));
        data.counts[b][static_cast<int>(oc)] += static_cast<std::uint64_t>(n);
        seen[b] = true;
    }
    for (int b = 0; b < 3; ++b)
        if (!seen[b])
            throw config_error(opt.counts_path + ": missing basis " +
                               std::string(b == 0 ? "z" : b == 1 ? "x" : "y"));

    MleResult mle = qst_mle(data);
    auto target = target_ket(opt.target);
    double fid = state_fidelity(mle.rho, target);

    // Monte-Carlo Poisson uncertainty on the fidelity
    std::vector<double> counts;
    for (int b = 0; b < 3; ++b)
        for (int o = 0; o < 2; ++o) counts.push_back(static_cast<double>(data.counts[b][o]));
    auto estimator = [&target](const std::vector<double>& c) {
        TomographyData d;
        for (int b = 0; b < 3; ++b)
            for (int o = 0; o < 2; ++o)
                d.counts[b][o] = static_cast<std::uint64_t>(std::llround(c[2 * b + o]));
        return state_fidelity(qst_mle(d).rho, target);
    };
    ResampleResult unc = poisson_resample(estimator, counts, opt.trials, opt.seed);

    std::ostream* os = nullptr;
    auto holder = open_out(opt.out, os);
    CsvWriter w(*os);
    w.metadata("tomography", fnv1a64(opt.counts_path + ";" + opt.target), opt.seed);
    w.comment("maximum-likelihood reconstruction; element row/col in the e/l basis");
    w.header({"element", "real", "imag"});
    const char* names[4] = {"rho_ee", "rho_el", "rho_le", "rho_ll"};
    for (int k = 0; k < 4; ++k)
        w.row_mixed({names[k], CsvWriter::format(mle.rho.m[k].real()),
                     CsvWriter::format(mle.rho.m[k].imag())});
    w.row_mixed({"fidelity_vs_" + opt.target, CsvWriter::format(fid), CsvWriter::format(unc.sigma)});
    return 0;
}

int cmd_decoy(const DecoyOptions& opt) {
    CsvTable t = read_csv(opt.data_path);
    DecoyDataset data;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        if (t.rows[r].size() != 4)
            throw config_error(opt.data_path + ": row " + std::to_string(r + 1) +
                               " needs state,mu,gain,fidelity");
        DecoyRow row;
        row.mu = parse_double_cell(t, r, 1, opt.data_path);
        row.gain = parse_double_cell(t, r, 2, opt.data_path);
        row.fidelity = parse_double_cell(t, r, 3, opt.data_path);
        data.states[t.rows[r][0]].push_back(row);
    }
    DecoyBound bound = decoy_bound(data);

    std::ostream* os = nullptr;
    auto holder = open_out(opt.out, os);
    CsvWriter w(*os);
    w.metadata("decoy", fnv1a64(opt.data_path), 0);
    w.comment("lower bounds on the single-photon teleportation fidelity");
    w.header({"state", "mu", "nu", "y1_lower", "e1_upper", "fidelity_lower"});
    for (const auto& [name, sb] : bound.per_state)
        w.row_mixed({name, CsvWriter::format(sb.mu), CsvWriter::format(sb.nu),
                     CsvWriter::format(sb.y1_lower), CsvWriter::format(sb.e1_upper),
                     CsvWriter::format(sb.fidelity_lower)});
    if (bound.has_avg)
        w.row_mixed({"avg", "", "", "", "", CsvWriter::format(bound.f_avg_lower)});
    return 0;
}

int cmd_tags_synthesize(const TagsSynthesizeOptions& opt) {
    if (opt.out.empty()) throw config_error("tags synthesize needs --out");
    daq::StreamSpec spec;
    spec.clock_hz = opt.clock_hz;
    spec.duration_s = opt.duration_s;
    spec.channel_count = opt.channels;
    spec.bin_offsets_ps = opt.bin_offsets;
    spec.jitter_fwhm_ps = opt.jitter_fwhm_ps;
    spec.seed = opt.seed;
    spec.marginals.assign(opt.channels, std::vector<double>(opt.bin_offsets.size(), 0.0));

    if (!opt.pair.empty()) {
        double mu_b, eta_s, eta_i;
        if (std::sscanf(opt.pair.c_str(), "%lf:%lf:%lf", &mu_b, &eta_s, &eta_i) != 3)
            throw config_error("--pair needs mu_b:eta_s:eta_i");
        spec.marginals[0][0] = mu_b * eta_s;
        spec.marginals[1][0] = mu_b * eta_i;
        spec.joints.push_back({1, 2, 0, mu_b * eta_s * eta_i});
    }
    for (const auto& s : opt.rates) {
        int ch, bin;
        double p;
        if (std::sscanf(s.c_str(), "%d:%d:%lf", &ch, &bin, &p) != 3)
            throw config_error("--rate needs ch:bin:p, got " + s);
        if (ch < 1 || ch > opt.channels || bin < 0 ||
            bin >= static_cast<int>(opt.bin_offsets.size()))
            throw config_error("--rate channel/bin out of range: " + s);
        spec.marginals[ch - 1][bin] = p;
    }
    for (const auto& s : opt.joints) {
        daq::JointClickSpec j;
        if (std::sscanf(s.c_str(), "%d:%d:%d:%lf", &j.channel_a, &j.channel_b, &j.bin,
                        &j.probability) != 4)
            throw config_error("--joint needs chA:chB:bin:p, got " + s);
        spec.joints.push_back(j);
    }

    daq::TimeTagStream stream = daq::synthesize(spec);
    if (opt.out.size() > 4 && opt.out.substr(opt.out.size() - 4) == ".csv")
        daq::write_tags_csv(stream, opt.out);
    else
        daq::write_ttag(stream, opt.out, opt.channels);
    std::cout << stream.events.size() << " events -> " << opt.out << "\n";
    return 0;
}

int cmd_tags_count(const TagsCountOptions& opt) {
    if (opt.in.empty()) throw config_error("tags count needs --in");
    if (opt.channels.size() < 2 || opt.channels.size() > 3)
        throw config_error("tags count needs 2 or 3 channels");
    daq::TimeTagStream stream;
    if (opt.in.size() > 4 && opt.in.substr(opt.in.size() - 4) == ".csv")
        stream = daq::read_tags_csv(opt.in);
    else
        stream = daq::read_ttag(opt.in);

    daq::CoincidenceConfig cfg;
    cfg.clock_hz = stream.clock_hz;
    cfg.window_ps = opt.window_ps;
    cfg.cycle_offset = opt.cycle_offset;
    for (const auto& s : opt.delays) {
        int ch;
        long long d;
        if (std::sscanf(s.c_str(), "%d:%lld", &ch, &d) != 2)
            throw config_error("--delay needs ch:ps, got " + s);
        if (ch < 1 || ch > 255) throw config_error("--delay channel out of range");
        if (cfg.delays_ps.size() < static_cast<size_t>(ch)) cfg.delays_ps.resize(ch, 0);
        cfg.delays_ps[ch - 1] = d;
    }

    std::uint64_t n = daq::count_coincidences(stream, cfg, opt.channels);
    std::ostream* os = nullptr;
    auto holder = open_out(opt.out, os);
    CsvWriter w(*os);
    w.header({"coincidences", "cycle_offset", "window_ps", "events"});
    w.row_mixed({std::to_string(n), std::to_string(opt.cycle_offset),
                 std::to_string(opt.window_ps), std::to_string(stream.events.size())});
    return 0;
}

int cmd_selfcheck(const SelfcheckOptions& opt) {
    using Q = __float128;
    bool ok = true;

    // closed form vs engine on a fixed grid, extended precision
    Rng rng(20260810, 0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        ScenarioParams p = ScenarioParams::ideal();
        p.mu_a = 1e-3 * std::pow(100.0, rng.uniform());
        p.mu_b = 1e-3 * std::pow(20.0, rng.uniform());
        p.eta_i = std::pow(10.0, -3.0 * rng.uniform());
        p.eta_s = std::pow(10.0, -3.0 * rng.uniform());
        double zeta = rng.uniform();
        Q closed = p3f_closed_form<Q>(Q(p.mu_a), Q(p.mu_b), Q(p.eta_i), Q(p.eta_s), Q(zeta));
        closed *= Q(1) + Q(opt.perturb);
        Q engine = p3f_engine<Q>(p, zeta);
        double rel = static_cast<double>(fabsq(closed - engine) / fabsq(engine));
        worst = std::max(worst, rel);
    }
    std::printf("closed-form vs engine (50 pts): max rel dev %.3e  %s\n", worst,
                worst < 1e-9 ? "PASS" : "FAIL");
    ok = ok && worst < 1e-9;

    // Gaussian engine vs Fock oracle, cutoff 6
    {
        ScenarioParams p = ScenarioParams::ideal();
        p.mu_a = 0.01;
        p.mu_b = 0.01;
        p.eta_i = 0.5;
        p.eta_s = 0.5;
        p.zeta = 0.8;
        OpticalCircuit c = hom_circuit(p, p.zeta);
        ClickPattern pat{{"D1", "D2", "D3"}, {}};
        double g = click_pattern_probability<double>(c, pat);
        double f = fock::evaluate_click_probability(c, pat, 6);
        double rel = std::fabs(g - f) / g;

        p.input_state = InputState::plus;
        TeleportCircuit tc = teleportation_circuit(p, 0.9);
        ClickPattern pat3 = tc.bsm;
        pat3.required_click.push_back(tc.d3_port1);
        double g3 = click_pattern_probability<double>(tc.circuit, pat3);
        // the ten-mode circuit carries an extra-undetected-pair tail of order
        // 2 mu_B in the seventh photon shell, so it needs one more shell
        double f3 = fock::evaluate_click_probability(tc.circuit, pat3, 7);
        double rel3 = std::fabs(g3 - f3) / g3;
        double worst_fock = std::max(rel, rel3);
        std::printf("engine vs Fock oracle (HOM cutoff 6, teleport cutoff 7): max rel dev "
                    "%.3e  %s\n",
                    worst_fock, worst_fock < 1e-3 ? "PASS" : "FAIL");
        ok = ok && worst_fock < 1e-3;
    }

    // exact conversions
    {
        double d1 = std::fabs(entanglement_fidelity_from_visibility(0.964) - 0.973);
        double d2 = std::fabs(plus_fidelity_from_visibility(0.697) - 0.8485);
        double worst_conv = std::max(d1, d2);
        std::printf("fidelity conversions: max dev %.3e  %s\n", worst_conv,
                    worst_conv < 1e-12 ? "PASS" : "FAIL");
        ok = ok && worst_conv < 1e-12;
    }

    std::printf("selfcheck: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

}  // namespace tbsim::cli
