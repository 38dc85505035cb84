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

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dmsim/commands.hpp"
#include "dmsim/errors.hpp"

using namespace dmsim;

namespace {

std::filesystem::path fresh_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "dmsim_cli_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CommandContext quiet_ctx(const std::filesystem::path &dir) {
    CommandContext ctx;
    ctx.out_dir = dir;
    ctx.quiet = true;
    return ctx;
}

// Unwrapped phase slope (degrees of phase per degree of angle) by least
// squares over the first quarter of the cut.
double phase_slope(const std::vector<BeamCutRow> &rows) {
    std::vector<double> phase;
    double offset = 0.0;
    double prev = rows[0].phase_deg;
    for (std::size_t i = 0; i < rows.size() / 4; ++i) {
        double ph = rows[i].phase_deg + offset;
        while (ph - prev > 180.0) {
            ph -= 360.0;
            offset -= 360.0;
        }
        while (ph - prev < -180.0) {
            ph += 360.0;
            offset += 360.0;
        }
        phase.push_back(ph);
        prev = ph;
    }
    const double n = static_cast<double>(phase.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < phase.size(); ++i) {
        const double x = rows[i].angle_deg;
        sx += x;
        sy += phase[i];
        sxx += x * x;
        sxy += x * phase[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("config parsing applies sections and rejects unknowns") {
    const std::string text = R"(# comment
[pattern]
theta_step_deg = 2
efficiency_scaling = true

[dm]
snr_db = 9.5
bob_phi_deg = 0, 45, 90
tx_mode = enhanced
)";
    auto cfg = parse_run_config(text);
    CHECK(cfg.pattern.theta_step_deg == 2.0);
    CHECK(cfg.pattern.efficiency_scaling);
    CHECK(cfg.pattern.phi_step_deg == 1.0); // untouched default
    CHECK(cfg.dm.snr_db == 9.5);
    CHECK(cfg.dm.bob_phi_deg == std::vector<double>{0.0, 45.0, 90.0});
    CHECK(cfg.dm.tx_mode == "enhanced");

    CHECK_THROWS_AS(parse_run_config("[pattern]\nbogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[nonsense]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("key_without_section = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[dm]\nsnr_db = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[dm]\ntx_mode = loud\n"), ConfigError);
}

TEST_CASE("config serialization round trips") {
    RunConfig cfg;
    cfg.pattern.theta_step_deg = 5.0;
    cfg.pattern.tm21 = Tm21Kind::standing;
    cfg.steer.mode = "enhance";
    cfg.steer.phi0_deg = 135.0;
    cfg.dm.n_symbols = 5000;
    cfg.dm.bob_phi_deg = {10.0, 20.0};
    cfg.dm.tx_mode = "trio";
    auto text = serialize_run_config(cfg);
    auto back = parse_run_config(text);
    CHECK(back.pattern.theta_step_deg == cfg.pattern.theta_step_deg);
    CHECK(back.pattern.tm21 == cfg.pattern.tm21);
    CHECK(back.steer.mode == cfg.steer.mode);
    CHECK(back.steer.phi0_deg == cfg.steer.phi0_deg);
    CHECK(back.dm.n_symbols == cfg.dm.n_symbols);
    CHECK(back.dm.bob_phi_deg == cfg.dm.bob_phi_deg);
    CHECK(back.dm.tx_mode == cfg.dm.tx_mode);
}

TEST_CASE("cmd_patterns emits grids, cuts and a complete manifest") {
    auto dir = fresh_dir("patterns");
    RunConfig cfg;
    cfg.pattern.theta_step_deg = 5.0;
    cfg.pattern.phi_step_deg = 5.0;
    cmd_patterns(cfg, quiet_ctx(dir));

    CHECK(std::filesystem::exists(dir / "patterns_grid.csv"));
    for (const char *port : {"P1", "P2", "P3", "P4", "P5"}) {
        CHECK(std::filesystem::exists(dir / ("cut_" + std::string(port) + ".csv")));
    }

    // The grid file loads back through the pattern reader.
    auto loaded = load_pattern_csv(dir / "patterns_grid.csv");
    REQUIRE(loaded.grid() != nullptr);
    CHECK(loaded.grid()->theta_step_deg() == 5.0);
    for (auto p : kAllPorts) {
        Direction d(90.0, 45.0);
        CHECK(std::abs(loaded.eval(p, d) - eval_mode(p, d)) < 1e-9);
    }

    // P3 phase is flat on the horizon cut.
    auto p3 = read_beam_cut_csv(dir / "cut_P3.csv");
    for (const auto &row : p3) {
        CHECK(std::abs(row.phase_deg) < 1e-9);
        CHECK(std::abs(row.mag_db) < 1e-9); // omnidirectional: flat at the peak
    }

    // Order-2 cut phases are linear with slopes +/- 2.
    auto p4 = read_beam_cut_csv(dir / "cut_P4.csv");
    auto p5 = read_beam_cut_csv(dir / "cut_P5.csv");
    CHECK(phase_slope(p4) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(phase_slope(p5) == doctest::Approx(-2.0).epsilon(1e-6));

    // Manifest references every emitted data file exactly once.
    auto kv = KvFile::load(dir / "patterns_manifest.txt");
    REQUIRE(kv.get("run", "command") != nullptr);
    CHECK(*kv.get("run", "command") == "patterns");
    auto outputs = kv.sections.at("outputs").at("file");
    std::set<std::string> listed(outputs.begin(), outputs.end());
    CHECK(listed.size() == outputs.size()); // exactly once each
    std::set<std::string> present;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name != "patterns_manifest.txt") present.insert(name);
    }
    CHECK(listed == present);
}

TEST_CASE("cmd_steer azimuth cut peaks at phi0 and its mirror") {
    auto dir = fresh_dir("steer_az");
    RunConfig cfg;
    cfg.steer.mode = "azimuth";
    cfg.steer.phi0_deg = 45.0;
    cmd_steer(cfg, quiet_ctx(dir));

    auto rows = read_beam_cut_csv(dir / "beam_cut_azimuth.csv");
    REQUIRE(rows.size() == 360);
    for (const auto &row : rows) {
        CHECK(row.mag_db <= 1e-9);
    }
    CHECK(std::abs(rows[45].mag_db) < 1e-9);
    CHECK(std::abs(rows[225].mag_db) < 1e-9);

    auto kv = KvFile::load(dir / "steer_azimuth_manifest.txt");
    CHECK(*kv.get("run", "kind") == "02-steer-azimuth");
    CHECK(std::filesystem::exists(dir / "steer_azimuth_report.txt"));
}

TEST_CASE("cmd_steer enhance reports the front-to-back gain") {
    auto dir = fresh_dir("steer_enh");
    RunConfig cfg;
    cfg.steer.mode = "enhance";
    cfg.steer.phi0_deg = 90.0;
    cfg.steer.ratio = 0.6;
    cmd_steer(cfg, quiet_ctx(dir));

    auto report = KvFile::load(dir / "steer_enhance_report.txt");
    REQUIRE(report.get("beam", "front_to_back_db") != nullptr);
    CHECK(std::stod(*report.get("beam", "front_to_back_db")) > 0.5);
    CHECK(*report.get("beam", "broadside_port") == "P2");

    auto dir0 = fresh_dir("steer_enh0");
    cfg.steer.ratio = 0.0;
    cmd_steer(cfg, quiet_ctx(dir0));
    auto report0 = KvFile::load(dir0 / "steer_enhance_report.txt");
    CHECK(std::abs(std::stod(*report0.get("beam", "front_to_back_db"))) < 0.01);
}

TEST_CASE("cmd_steer elevation emits a plane cut") {
    auto dir = fresh_dir("steer_el");
    RunConfig cfg;
    cfg.steer.mode = "elevation";
    cfg.steer.plane = CutPlane::xz;
    cfg.steer.sign = TiltSign::plus;
    cmd_steer(cfg, quiet_ctx(dir));
    auto rows = read_beam_cut_csv(dir / "beam_cut_elevation.csv");
    REQUIRE(rows.size() == 360);
    // Peak of the cut sits on the + side (angle < 90 in cut coordinates).
    double best_angle = 0.0, best = -1e9;
    for (const auto &r : rows) {
        if (r.mag_db > best) {
            best = r.mag_db;
            best_angle = r.angle_deg;
        }
    }
    CHECK(best_angle > 0.0);
    CHECK(best_angle < 90.0);
}

TEST_CASE("cmd_dm writes curves, summary and a deterministic manifest set") {
    auto dir = fresh_dir("dm");
    RunConfig cfg;
    cfg.dm.n_symbols = 1000;
    cfg.dm.angle_step_deg = 15.0;
    cfg.dm.bob_phi_deg = {50.0};
    cfg.dm.seed = 7;
    cmd_dm(cfg, quiet_ctx(dir));

    const auto curve_path = dir / "ber_az_bob50.csv";
    REQUIRE(std::filesystem::exists(curve_path));
    auto rows = read_ber_csv(curve_path);
    CHECK(rows.size() == 24);
    CHECK(std::filesystem::exists(dir / "dm_azimuth_summary.csv"));

    auto kv = KvFile::load(dir / "dm_azimuth_manifest.txt");
    CHECK(*kv.get("run", "kind") == "05-dm-azimuth");
    CHECK(*kv.get("run", "seed") == "7");
    auto outputs = kv.sections.at("outputs").at("file");
    std::set<std::string> listed(outputs.begin(), outputs.end());
    CHECK(listed.count("ber_az_bob50.csv") == 1);
    CHECK(listed.count("dm_azimuth_summary.csv") == 1);

    // Same seed, byte-identical curve; the seed override changes it.
    auto first = slurp(curve_path);
    cmd_dm(cfg, quiet_ctx(dir));
    CHECK(slurp(curve_path) == first);

    auto ctx = quiet_ctx(dir);
    ctx.seed_override = 8;
    cmd_dm(cfg, ctx);
    CHECK(slurp(curve_path) != first);
    auto kv2 = KvFile::load(dir / "dm_azimuth_manifest.txt");
    CHECK(*kv2.get("run", "seed") == "8");
}

TEST_CASE("cmd_dm runs a batch of bob directions") {
    auto dir = fresh_dir("dm_batch");
    RunConfig cfg;
    cfg.dm.n_symbols = 2000;
    cfg.dm.angle_step_deg = 15.0;
    cfg.dm.bob_phi_deg = {0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0};
    cmd_dm(cfg, quiet_ctx(dir));

    std::size_t curves = 0;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("ber_az_bob", 0) == 0) ++curves;
    }
    CHECK(curves == 8);

    // One summary row per curve, each with a usable secure lobe.
    std::ifstream in(dir / "dm_azimuth_summary.csv");
    std::string line;
    std::getline(in, line); // header
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ss(line);
        std::string bob_angle, min_ber, min_angle, width, empty;
        std::getline(ss, bob_angle, ',');
        std::getline(ss, min_ber, ',');
        std::getline(ss, min_angle, ',');
        std::getline(ss, width, ',');
        std::getline(ss, empty, ',');
        CHECK(std::stod(min_ber) < 1e-2);
        CHECK(std::stod(width) > 0.0);
        CHECK(empty == "false");
        // The curve minimum sits at the steered direction (one step slack).
        double diff = std::abs(std::stod(min_angle) - std::stod(bob_angle));
        diff = std::min(diff, 360.0 - diff);
        CHECK(diff <= 15.0);
    }
    CHECK(rows == 8);
}

TEST_CASE("cmd_report aggregates manifests and orphans") {
    SUBCASE("empty directory is an explicit error") {
        auto dir = fresh_dir("report_empty");
        CHECK_THROWS_AS(cmd_report(quiet_ctx(dir)), MissingInputError);
    }

    SUBCASE("single bare BER CSV produces a single row") {
        auto dir = fresh_dir("report_orphan");
        {
            BerCurve curve;
            curve.config.n_symbols = 1000;
            curve.records.push_back({0.0, 10, 2000, 0.005, 1});
            write_ber_csv(dir / "ber_az_bob0.csv", curve);
        }
        cmd_report(quiet_ctx(dir));
        auto text = slurp(dir / "report.csv");
        std::size_t lines = std::count(text.begin(), text.end(), '\n');
        CHECK(lines == 2); // header + one row
        CHECK(text.find("unmanifested") != std::string::npos);
    }

    SUBCASE("mixed runs sort by kind") {
        auto dir = fresh_dir("report_mixed");
        RunConfig cfg;
        cfg.dm.n_symbols = 1000;
        cfg.dm.angle_step_deg = 30.0;
        cfg.dm.bob_phi_deg = {0.0};
        cmd_dm(cfg, quiet_ctx(dir));
        cfg.steer.mode = "azimuth";
        cmd_steer(cfg, quiet_ctx(dir));
        cmd_patterns(cfg, quiet_ctx(dir));
        cmd_report(quiet_ctx(dir));

        std::ifstream in(dir / "report.csv");
        std::string line;
        std::getline(in, line); // header
        std::vector<std::string> kinds;
        while (std::getline(in, line)) {
            kinds.push_back(line.substr(0, line.find(',')));
        }
        REQUIRE(!kinds.empty());
        CHECK(std::is_sorted(kinds.begin(), kinds.end()));
        CHECK(kinds.front().rfind("01-", 0) == 0);
    }
}
