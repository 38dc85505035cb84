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

#include "dmsim/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dmsim/errors.hpp"

namespace dmsim {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string &v, const std::string &key) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_double(const std::string &v, const std::string &key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception &) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string &v, const std::string &key) {
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception &) {
        throw ConfigError("key '" + key + "': expected an unsigned integer, got '" +
                          v + "'");
    }
}

std::vector<double> parse_double_list(const std::string &v, const std::string &key) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

void apply_pattern_key(PatternConfig &cfg, const std::string &key,
                       const std::string &value) {
    if (key == "theta_step_deg") cfg.theta_step_deg = parse_double(value, key);
    else if (key == "phi_step_deg") cfg.phi_step_deg = parse_double(value, key);
    else if (key == "efficiency_scaling") cfg.efficiency_scaling = parse_bool(value, key);
    else if (key == "tm21") {
        if (value == "traveling") cfg.tm21 = Tm21Kind::traveling;
        else if (value == "standing") cfg.tm21 = Tm21Kind::standing;
        else throw ConfigError("key 'tm21': expected traveling|standing, got '" + value + "'");
    } else if (key == "pattern_csv") cfg.pattern_csv = value;
    else throw ConfigError("unknown key '" + key + "' in section [pattern]");
}

void apply_steer_key(SteerConfig &cfg, const std::string &key,
                     const std::string &value) {
    if (key == "mode") {
        if (value != "azimuth" && value != "enhance" && value != "elevation") {
            throw ConfigError("key 'mode': expected azimuth|enhance|elevation, got '" +
                              value + "'");
        }
        cfg.mode = value;
    } else if (key == "phi0_deg") cfg.phi0_deg = parse_double(value, key);
    else if (key == "ratio") cfg.ratio = parse_double(value, key);
    else if (key == "plane") {
        if (value == "xz") cfg.plane = CutPlane::xz;
        else if (value == "yz") cfg.plane = CutPlane::yz;
        else throw ConfigError("key 'plane': expected xz|yz, got '" + value + "'");
    } else if (key == "sign") {
        if (value == "+" || value == "plus") cfg.sign = TiltSign::plus;
        else if (value == "-" || value == "minus") cfg.sign = TiltSign::minus;
        else throw ConfigError("key 'sign': expected +|-, got '" + value + "'");
    } else if (key == "beamwidth_threshold_db") {
        cfg.beamwidth_threshold_db = parse_double(value, key);
    } else throw ConfigError("unknown key '" + key + "' in section [steer]");
}

void apply_dm_key(DmConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "snr_db") cfg.snr_db = parse_double(value, key);
    else if (key == "snr_per_bit") cfg.snr_per_bit = parse_bool(value, key);
    else if (key == "n_symbols") cfg.n_symbols = parse_u64(value, key);
    else if (key == "an_ratio") cfg.an_ratio = parse_double(value, key);
    else if (key == "sweep") {
        if (value != "azimuth" && value != "elevation") {
            throw ConfigError("key 'sweep': expected azimuth|elevation, got '" + value + "'");
        }
        cfg.sweep = value;
    } else if (key == "bob_phi_deg") cfg.bob_phi_deg = parse_double_list(value, key);
    else if (key == "bob_theta_deg") cfg.bob_theta_deg = parse_double_list(value, key);
    else if (key == "cut_phi_deg") cfg.cut_phi_deg = parse_double(value, key);
    else if (key == "angle_step_deg") cfg.angle_step_deg = parse_double(value, key);
    else if (key == "seed") cfg.seed = parse_u64(value, key);
    else if (key == "tx_mode") {
        if (value != "all" && value != "trio" && value != "enhanced") {
            throw ConfigError("key 'tx_mode': expected all|trio|enhanced, got '" + value + "'");
        }
        cfg.tx_mode = value;
    } else if (key == "enhance_ratio") cfg.enhance_ratio = parse_double(value, key);
    else if (key == "ber_threshold") cfg.ber_threshold = parse_double(value, key);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_u64(value, key));
    else throw ConfigError("unknown key '" + key + "' in section [dm]");
}

} // namespace

RunConfig parse_run_config(const std::string &text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "pattern" && section != "steer" && section != "dm") {
                throw ConfigError("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError("key '" + key + "' appears before any section header");
        }
        if (section == "pattern") apply_pattern_key(cfg.pattern, key, value);
        else if (section == "steer") apply_steer_key(cfg.steer, key, value);
        else apply_dm_key(cfg.dm, key, value);
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

namespace {

std::string join(const std::vector<double> &values) {
    std::ostringstream ss;
    ss.precision(12);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) ss << ',';
        ss << values[i];
    }
    return ss.str();
}

} // namespace

std::string serialize_run_config(const RunConfig &cfg) {
    std::ostringstream out;
    out.precision(12);
    out << "[pattern]\n";
    out << "theta_step_deg = " << cfg.pattern.theta_step_deg << "\n";
    out << "phi_step_deg = " << cfg.pattern.phi_step_deg << "\n";
    out << "efficiency_scaling = " << (cfg.pattern.efficiency_scaling ? "true" : "false")
        << "\n";
    out << "tm21 = " << (cfg.pattern.tm21 == Tm21Kind::traveling ? "traveling" : "standing")
        << "\n";
    if (!cfg.pattern.pattern_csv.empty()) {
        out << "pattern_csv = " << cfg.pattern.pattern_csv << "\n";
    }
    out << "[steer]\n";
    out << "mode = " << cfg.steer.mode << "\n";
    out << "phi0_deg = " << cfg.steer.phi0_deg << "\n";
    out << "ratio = " << cfg.steer.ratio << "\n";
    out << "plane = " << (cfg.steer.plane == CutPlane::xz ? "xz" : "yz") << "\n";
    out << "sign = " << (cfg.steer.sign == TiltSign::plus ? "+" : "-") << "\n";
    out << "beamwidth_threshold_db = " << cfg.steer.beamwidth_threshold_db << "\n";
    out << "[dm]\n";
    out << "snr_db = " << cfg.dm.snr_db << "\n";
    out << "snr_per_bit = " << (cfg.dm.snr_per_bit ? "true" : "false") << "\n";
    out << "n_symbols = " << cfg.dm.n_symbols << "\n";
    out << "an_ratio = " << cfg.dm.an_ratio << "\n";
    out << "sweep = " << cfg.dm.sweep << "\n";
    out << "bob_phi_deg = " << join(cfg.dm.bob_phi_deg) << "\n";
    out << "bob_theta_deg = " << join(cfg.dm.bob_theta_deg) << "\n";
    out << "cut_phi_deg = " << cfg.dm.cut_phi_deg << "\n";
    out << "angle_step_deg = " << cfg.dm.angle_step_deg << "\n";
    out << "seed = " << cfg.dm.seed << "\n";
    out << "tx_mode = " << cfg.dm.tx_mode << "\n";
    out << "enhance_ratio = " << cfg.dm.enhance_ratio << "\n";
    out << "ber_threshold = " << cfg.dm.ber_threshold << "\n";
    out << "threads = " << cfg.dm.threads << "\n";
    return out.str();
}

KvFile KvFile::parse(const std::string &text) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            kv.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv.sections[section][trim(line.substr(0, eq))].push_back(trim(line.substr(eq + 1)));
    }
    return kv;
}

KvFile KvFile::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const std::string *KvFile::get(const std::string &section, const std::string &key) const {
    auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end() || k->second.empty()) return nullptr;
    return &k->second.front();
}

} // namespace dmsim
