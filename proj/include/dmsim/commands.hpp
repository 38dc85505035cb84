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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "dmsim/run_config.hpp"

namespace dmsim {

struct CommandContext {
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
};

/// Every command writes its data files plus one `<command>_manifest.txt`
/// into ctx.out_dir; the manifest echoes the resolved configuration and
/// lists every emitted file. Errors are reported by exception (ConfigError
/// for bad inputs, others for runtime failures).
void cmd_patterns(const RunConfig &cfg, const CommandContext &ctx);
void cmd_steer(const RunConfig &cfg, const CommandContext &ctx);
void cmd_dm(const RunConfig &cfg, const CommandContext &ctx);

/// Aggregates the manifests (and any known-schema data files they left
/// behind) in ctx.out_dir into report.csv, rows sorted by kind. Throws
/// MissingInputError when the directory holds no recognizable outputs.
void cmd_report(const CommandContext &ctx);

} // namespace dmsim
