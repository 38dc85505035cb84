// SPDX-License-Identifier: Apache-2.0
//
// dmsim: multimode-antenna beam synthesis and directional-modulation link simulator
// Copyright (C) 2026 dmsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dmsim/commands.hpp"
#include "dmsim/errors.hpp"
#include "dmsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"multimode-antenna beam synthesis and directional-modulation "
                 "link simulator"};
    app.set_version_flag("--version", std::string(dmsim::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool have_seed = false;
    bool quiet = false;
    app.add_option("--config", config_path, "configuration file (key = value sections)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "override the [dm] seed")
        ->each([&](const std::string &) { have_seed = true; });
    app.add_flag("--quiet", quiet, "suppress progress output");

    auto *patterns = app.add_subcommand("patterns", "export per-port pattern grids and cuts");
    auto *steer = app.add_subcommand("steer", "synthesize a steered beam and report metrics");
    auto *dm = app.add_subcommand("dm", "run BER sweeps of the directionally modulated link");
    auto *report = app.add_subcommand("report", "aggregate prior run outputs into one table");
    for (auto *sub : {patterns, steer, dm, report}) {
        sub->fallthrough(); // accept the global flags after the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        dmsim::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = dmsim::load_run_config(config_path);
        }
        dmsim::CommandContext ctx;
        ctx.out_dir = out_dir;
        if (have_seed) ctx.seed_override = seed;
        ctx.quiet = quiet;

        if (patterns->parsed()) dmsim::cmd_patterns(cfg, ctx);
        else if (steer->parsed()) dmsim::cmd_steer(cfg, ctx);
        else if (dm->parsed()) dmsim::cmd_dm(cfg, ctx);
        else if (report->parsed()) dmsim::cmd_report(ctx);
        return kExitOk;
    } catch (const dmsim::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dmsim::SchemaError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dmsim::MissingInputError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
