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
// tbsim: simulator and analysis toolkit for time-bin-qubit teleportation
// with realistic imperfections.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage/configuration error.

#include <CLI11.hpp>
#include <iostream>

#include "../src/cli/commands.hpp"
#include "tbsim/common.hpp"
#include "tbsim/version.hpp"

int main(int argc, char** argv) {
    using namespace tbsim::cli;
    CLI::App app{"time-bin qubit teleportation simulator and analysis toolkit"};
    app.set_version_flag("--version", tbsim::kVersion);
    app.set_config("--config", "", "key=value configuration file; flags win on conflict");
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* csim = app.add_subcommand("simulate", "evaluate a scenario, optionally over a sweep");
    csim->add_option("--scenario", sim.scenario,
                     "hom | teleport-z | teleport-x | entanglement")->required();
    csim->add_option("--preset", sim.preset, "parameter preset (default: paper)");
    csim->add_option("--set", sim.sets, "override, name=value (repeatable)");
    csim->add_option("--sweep", sim.sweep, "sweep grid, name=lo:hi:log20 or lo:hi:lin20");
    csim->add_option("--out", sim.out, "output CSV path (default: stdout)");
    csim->add_option("--seed", sim.seed, "random seed for stochastic stages");
    csim->add_flag("--oracle-check", sim.oracle_check,
                   "cross-check each point against the Fock oracle");

    ReproduceOptions rep;
    auto* crep = app.add_subcommand("reproduce", "emit a bundled dataset recipe");
    crep->add_option("id", rep.id,
                     "fig2 | fig3a | fig3b | fig4a | fig4b | fig7 | table1 | table2")->required();
    crep->add_option("--outdir", rep.outdir, "output directory (default: .)");
    crep->add_option("--seed", rep.seed, "random seed");

    TomographyOptions tomo;
    auto* ctomo = app.add_subcommand("tomography", "maximum-likelihood state reconstruction");
    ctomo->add_option("--counts", tomo.counts_path, "counts CSV (basis,outcome,count)")
        ->required();
    ctomo->add_option("--target", tomo.target,
                      "expected state: early|late|plus|minus|plus_i|minus_i");
    ctomo->add_option("--out", tomo.out, "output CSV path (default: stdout)");
    ctomo->add_option("--trials", tomo.trials, "Monte-Carlo uncertainty trials");
    ctomo->add_option("--seed", tomo.seed, "random seed");

    DecoyOptions dec;
    auto* cdec = app.add_subcommand("decoy", "single-photon fidelity bounds from decoy data");
    cdec->add_option("--data", dec.data_path, "dataset CSV (state,mu,gain,fidelity)")->required();
    cdec->add_option("--out", dec.out, "output CSV path (default: stdout)");

    auto* ctags = app.add_subcommand("tags", "time-tag stream utilities");
    ctags->require_subcommand(1);
    TagsSynthesizeOptions tsyn;
    auto* csyn = ctags->add_subcommand("synthesize", "generate a synthetic time-tag stream");
    csyn->add_option("--out", tsyn.out, "output path (.ttag binary or .csv)")->required();
    csyn->add_option("--duration", tsyn.duration_s, "stream duration in seconds");
    csyn->add_option("--clock", tsyn.clock_hz, "clock rate in Hz");
    csyn->add_option("--channels", tsyn.channels, "number of channels");
    csyn->add_option("--rate", tsyn.rates, "per-bin click probability, ch:bin:p (repeatable)");
    csyn->add_option("--joint", tsyn.joints, "joint click probability, chA:chB:bin:p");
    csyn->add_option("--pair", tsyn.pair, "pair source shortcut on channels 1,2: mu_b:eta_s:eta_i");
    csyn->add_option("--jitter", tsyn.jitter_fwhm_ps, "timestamp jitter FWHM in ps");
    csyn->add_option("--seed", tsyn.seed, "random seed");

    TagsCountOptions tcnt;
    auto* ccnt = ctags->add_subcommand("count", "count coincidences in a stream");
    ccnt->add_option("--in", tcnt.in, "input stream (.ttag or .csv)")->required();
    ccnt->add_option("--channels", tcnt.channels, "two or three channel numbers")->required();
    ccnt->add_option("--window", tcnt.window_ps, "coincidence window in ps");
    ccnt->add_option("--cycle-offset", tcnt.cycle_offset,
                     "clock-cycle offset (0 true, +-1 accidentals)");
    ccnt->add_option("--delay", tcnt.delays, "per-channel delay, ch:ps (repeatable)");
    ccnt->add_option("--out", tcnt.out, "output CSV path (default: stdout)");

    SelfcheckOptions self;
    auto* cself = app.add_subcommand("selfcheck", "run the built-in equivalence suites");
    cself->add_option("--perturb", self.perturb, "")->group("");  // test hook, hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (csim->parsed()) return cmd_simulate(sim);
        if (crep->parsed()) return cmd_reproduce(rep);
        if (ctomo->parsed()) return cmd_tomography(tomo);
        if (cdec->parsed()) return cmd_decoy(dec);
        if (ctags->parsed()) {
            if (csyn->parsed()) return cmd_tags_synthesize(tsyn);
            if (ccnt->parsed()) return cmd_tags_count(tcnt);
        }
        if (cself->parsed()) return cmd_selfcheck(self);
    } catch (const tbsim::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
