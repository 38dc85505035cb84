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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dmsim/link.hpp"
#include "dmsim/synthesis.hpp"

namespace dmsim {

/// [pattern] section: the shared far-field model.
struct PatternConfig {
    double theta_step_deg = 1.0;
    double phi_step_deg = 1.0;
    bool efficiency_scaling = false;
    Tm21Kind tm21 = Tm21Kind::traveling;
    std::string pattern_csv; // load external samples instead of the analytic model
};

/// [steer] section: beam synthesis requests.
struct SteerConfig {
    std::string mode = "azimuth"; // azimuth | enhance | elevation
    double phi0_deg = 45.0;
    double ratio = 0.6;
    CutPlane plane = CutPlane::xz;
    TiltSign sign = TiltSign::plus;
    double beamwidth_threshold_db = -3.0;
};

/// [dm] section: link simulation requests. bob_phi_deg lists one azimuth
/// sweep per entry; bob_theta_deg lists elevation sweeps on the
/// cut_phi_deg plane.
struct DmConfig {
    double snr_db = 12.0;
    bool snr_per_bit = false;
    std::uint64_t n_symbols = 100000;
    double an_ratio = 1.0;
    std::string sweep = "azimuth"; // azimuth | elevation
    std::vector<double> bob_phi_deg = {50.0};
    std::vector<double> bob_theta_deg = {50.0};
    double cut_phi_deg = 0.0;
    double angle_step_deg = 1.0;
    std::uint64_t seed = 1;
    std::string tx_mode = "all"; // all | trio | enhanced
    double enhance_ratio = 0.6;
    double ber_threshold = 1e-2;
    unsigned threads = 0;
};

struct RunConfig {
    PatternConfig pattern;
    SteerConfig steer;
    DmConfig dm;
};

/// Parses the flat key=value config format with [pattern], [steer] and
/// [dm] sections. Unknown sections or keys raise ConfigError; omitted
/// keys keep their defaults.
RunConfig parse_run_config(const std::string &text);
RunConfig load_run_config(const std::filesystem::path &path);

/// Serializes every resolved value back to the config format (used to
/// echo the configuration into run manifests).
std::string serialize_run_config(const RunConfig &cfg);

/// Minimal section/key accessor for manifest files written by the tool.
struct KvFile {
    // section -> key -> values (repeated keys accumulate in order)
    std::map<std::string, std::map<std::string, std::vector<std::string>>> sections;

    static KvFile parse(const std::string &text);
    static KvFile load(const std::filesystem::path &path);
    const std::string *get(const std::string &section, const std::string &key) const;
};

} // namespace dmsim
