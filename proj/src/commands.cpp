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

#include "dmsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "dmsim/errors.hpp"
#include "dmsim/version.hpp"

namespace dmsim {

namespace {

PatternSet build_pattern_set(const PatternConfig &cfg) {
    if (!cfg.pattern_csv.empty()) {
        return load_pattern_csv(cfg.pattern_csv);
    }
    return PatternSet::analytic(cfg.efficiency_scaling, cfg.tm21);
}

std::string format_angle(double deg) {
    std::ostringstream ss;
    ss.precision(10);
    ss << deg;
    auto s = ss.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

void note(const CommandContext &ctx, const std::string &msg) {
    if (!ctx.quiet) std::cout << msg << "\n";
}

// One manifest per (command, variant); rerunning the same variant into the
// same directory replaces its own outputs and manifest.
class ManifestWriter {
  public:
    ManifestWriter(const CommandContext &ctx, std::string command, std::string kind,
                   const RunConfig &resolved)
        : ctx_(ctx), command_(std::move(command)), kind_(std::move(kind)),
          config_echo_(serialize_run_config(resolved)),
          start_(std::chrono::steady_clock::now()) {}

    void add_file(const std::filesystem::path &p) {
        files_.push_back(p.filename().string());
    }

    std::filesystem::path write(std::uint64_t seed) const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        const auto path = ctx_.out_dir / (command_ + "_manifest.txt");
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write manifest: " + path.string());
        out << "[run]\n";
        out << "command = " << command_ << "\n";
        out << "kind = " << kind_ << "\n";
        out << "version = " << kVersion << "\n";
        out << "seed = " << seed << "\n";
        out.precision(6);
        out << "wall_seconds = " << wall << "\n";
        out << config_echo_;
        out << "[outputs]\n";
        for (const auto &f : files_) out << "file = " << f << "\n";
        if (!out) throw ConfigError("manifest write failed: " + path.string());
        return path;
    }

  private:
    const CommandContext &ctx_;
    std::string command_;
    std::string kind_;
    std::string config_echo_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> files_;
};

void ensure_out_dir(const CommandContext &ctx) {
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + ctx.out_dir.string() +
                          ": " + ec.message());
    }
}

} // namespace

void cmd_patterns(const RunConfig &cfg, const CommandContext &ctx) {
    ensure_out_dir(ctx);
    const AngularGrid grid(cfg.pattern.theta_step_deg, cfg.pattern.phi_step_deg);
    const PatternSet set = build_pattern_set(cfg.pattern);
    const PatternSet sampled =
        set.is_analytic()
            ? sample_pattern_set(grid, cfg.pattern.efficiency_scaling, cfg.pattern.tm21)
            : set;

    ManifestWriter manifest(ctx, "patterns", "01-port-patterns", cfg);

    const auto grid_path = ctx.out_dir / "patterns_grid.csv";
    export_pattern_csv(sampled, grid_path);
    manifest.add_file(grid_path);
    note(ctx, "wrote " + grid_path.string());

    for (auto p : kAllPorts) {
        Excitation exc;
        exc.set_weight(p, {1.0, 0.0});
        auto cut = azimuth_cut(set, exc, 90.0, cfg.pattern.phi_step_deg);
        const auto cut_path =
            ctx.out_dir / ("cut_" + std::string(port_name(p)) + ".csv");
        write_beam_cut_csv(cut_path, cut);
        manifest.add_file(cut_path);
        note(ctx, "wrote " + cut_path.string());
    }

    manifest.write(cfg.dm.seed);
}

void cmd_steer(const RunConfig &cfg, const CommandContext &ctx) {
    ensure_out_dir(ctx);
    const PatternSet set = build_pattern_set(cfg.pattern);
    const AngularGrid grid(cfg.pattern.theta_step_deg, cfg.pattern.phi_step_deg);
    const auto &sc = cfg.steer;

    std::string kind;
    Excitation exc;
    std::ostringstream meta;
    std::string cut_name;
    std::vector<CutSample> cut;

    if (sc.mode == "azimuth") {
        kind = "02-steer-azimuth";
        exc = steer_azimuth(set, sc.phi0_deg);
        cut = azimuth_cut(set, exc, 90.0, cfg.pattern.phi_step_deg);
        cut_name = "beam_cut_azimuth.csv";
        meta << "phi0_deg = " << sc.phi0_deg << "\n";
    } else if (sc.mode == "enhance") {
        kind = "04-enhance-azimuth";
        auto beam = enhance_unidirectional(set, sc.phi0_deg, sc.ratio);
        exc = beam.excitation;
        cut = azimuth_cut(set, exc, 90.0, cfg.pattern.phi_step_deg);
        cut_name = "beam_cut_enhanced.csv";
        meta << "phi0_deg = " << sc.phi0_deg << "\n";
        meta << "ratio = " << sc.ratio << "\n";
        meta << "broadside_port = " << port_name(beam.broadside_port) << "\n";
        meta << "tie_broken = " << (beam.tie_broken ? "true" : "false") << "\n";
    } else if (sc.mode == "elevation") {
        kind = "03-steer-elevation";
        auto beam = steer_elevation(set, sc.plane, sc.sign);
        exc = beam.excitation;
        const double plane_phi = sc.plane == CutPlane::xz ? 0.0 : 90.0;
        cut = plane_cut(set, exc, plane_phi, cfg.pattern.theta_step_deg);
        cut_name = "beam_cut_elevation.csv";
        meta << "plane = " << (sc.plane == CutPlane::xz ? "xz" : "yz") << "\n";
        meta << "sign = " << (sc.sign == TiltSign::plus ? "+" : "-") << "\n";
        meta << "pair = " << port_name(beam.ports[0]) << "," << port_name(beam.ports[1])
             << "\n";
        meta << "target_theta_deg = " << beam.target.theta_deg() << "\n";
        meta << "target_phi_deg = " << beam.target.phi_deg() << "\n";
    } else {
        throw ConfigError("unknown steer mode '" + sc.mode + "'");
    }

    ManifestWriter manifest(ctx, "steer_" + sc.mode, kind, cfg);

    const auto cut_path = ctx.out_dir / cut_name;
    write_beam_cut_csv(cut_path, cut);
    manifest.add_file(cut_path);
    note(ctx, "wrote " + cut_path.string());

    const BeamReport report = beam_report(set, exc, grid, sc.beamwidth_threshold_db);
    const auto report_path = ctx.out_dir / ("steer_" + sc.mode + "_report.txt");
    {
        std::ofstream out(report_path);
        if (!out) throw ConfigError("cannot write " + report_path.string());
        out.precision(12);
        out << "[beam]\n";
        out << "mode = " << sc.mode << "\n";
        out << meta.str();
        out << "peak_theta_deg = " << report.peak_direction.theta_deg() << "\n";
        out << "peak_phi_deg = " << report.peak_direction.phi_deg() << "\n";
        out << "peak_gain_db = " << report.peak_gain_db << "\n";
        out << "front_to_back_db = " << report.front_to_back_db << "\n";
        out << "beamwidth_deg = " << report.beamwidth_deg << "\n";
        out << "directivity_dbi = " << report.directivity_dbi << "\n";
        out << "elevation_leakage_db = " << report.elevation_leakage_db << "\n";
        out << "weights =";
        for (auto p : kAllPorts) {
            const auto w = exc.weight(p);
            out << " " << port_name(p) << ":" << std::abs(w) << "/"
                << rad2deg(std::arg(w)) << "deg";
        }
        out << "\n";
    }
    manifest.add_file(report_path);
    note(ctx, "wrote " + report_path.string());

    manifest.write(cfg.dm.seed);
}

namespace {

LinkConfig link_config_for(const DmConfig &dm, const Direction &bob) {
    LinkConfig link;
    link.snr_db = dm.snr_db;
    link.snr_per_bit = dm.snr_per_bit;
    link.n_symbols = dm.n_symbols;
    link.an_ratio = dm.an_ratio;
    link.bob = bob;
    link.sweep_plane =
        dm.sweep == "azimuth" ? SweepPlane::azimuth : SweepPlane::elevation;
    link.cut_phi_deg = dm.cut_phi_deg;
    link.angle_step_deg = dm.angle_step_deg;
    link.seed = dm.seed;
    if (dm.tx_mode == "trio") link.tx_mode = DmTxMode::trio;
    else if (dm.tx_mode == "enhanced") link.tx_mode = DmTxMode::enhanced;
    else link.tx_mode = DmTxMode::all;
    link.enhance_ratio = dm.enhance_ratio;
    link.threads = dm.threads;
    return link;
}

} // namespace

void cmd_dm(const RunConfig &cfg_in, const CommandContext &ctx) {
    ensure_out_dir(ctx);
    RunConfig cfg = cfg_in;
    if (ctx.seed_override) cfg.dm.seed = *ctx.seed_override;
    const PatternSet set = build_pattern_set(cfg.pattern);
    const bool azimuth = cfg.dm.sweep == "azimuth";
    const std::string kind = azimuth ? "05-dm-azimuth" : "06-dm-elevation";

    ManifestWriter manifest(ctx, "dm_" + cfg.dm.sweep, kind, cfg);

    struct SummaryRow {
        double bob_angle;
        double min_ber;
        double min_angle;
        double width;
        bool empty;
        std::string file;
    };
    std::vector<SummaryRow> summary;

    const auto &bob_angles = azimuth ? cfg.dm.bob_phi_deg : cfg.dm.bob_theta_deg;
    for (double bob_angle : bob_angles) {
        const Direction bob = azimuth ? Direction(90.0, bob_angle)
                                      : Direction(bob_angle, cfg.dm.cut_phi_deg);
        const LinkConfig link = link_config_for(cfg.dm, bob);
        const BerCurve curve = ber_sweep(link, set);

        const std::string name = std::string("ber_") + (azimuth ? "az" : "el") +
                                 "_bob" + format_angle(bob_angle) + ".csv";
        const auto path = ctx.out_dir / name;
        write_ber_csv(path, curve);
        manifest.add_file(path);
        note(ctx, "wrote " + path.string() + "  (" +
                      std::to_string(curve.records.size()) + " angles, " +
                      std::to_string(curve.wall_seconds) + " s)");

        const auto width = ber_beamwidth(curve, cfg.dm.ber_threshold);
        std::size_t min_idx = 0;
        for (std::size_t i = 1; i < curve.records.size(); ++i) {
            if (curve.records[i].ber < curve.records[min_idx].ber) min_idx = i;
        }
        summary.push_back({bob_angle, curve.records[min_idx].ber,
                           curve.records[min_idx].angle_deg, width.width_deg,
                           width.empty, name});
    }

    const auto summary_path = ctx.out_dir / ("dm_" + cfg.dm.sweep + "_summary.csv");
    {
        std::ofstream out(summary_path);
        if (!out) throw ConfigError("cannot write " + summary_path.string());
        out.precision(12);
        out << "bob_angle_deg,min_ber,min_angle_deg,beamwidth_deg,empty,file\n";
        for (const auto &row : summary) {
            out << row.bob_angle << ',' << row.min_ber << ',' << row.min_angle << ','
                << row.width << ',' << (row.empty ? "true" : "false") << ','
                << row.file << "\n";
        }
    }
    manifest.add_file(summary_path);
    note(ctx, "wrote " + summary_path.string());

    manifest.write(cfg.dm.seed);
}

void cmd_report(const CommandContext &ctx) {
    if (!std::filesystem::is_directory(ctx.out_dir)) {
        throw MissingInputError("report: directory does not exist: " +
                                ctx.out_dir.string());
    }

    struct Row {
        std::string kind;
        std::string command;
        std::string file;
        std::string status;
        std::string detail;
        bool operator<(const Row &o) const {
            return std::tie(kind, file) < std::tie(o.kind, o.file);
        }
    };
    std::vector<Row> rows;
    std::set<std::string> referenced;

    for (const auto &entry : std::filesystem::directory_iterator(ctx.out_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (name.size() < 13 || name.substr(name.size() - 13) != "_manifest.txt") {
            continue;
        }
        const KvFile kv = KvFile::parse([&] {
            std::ifstream in(entry.path());
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }());
        const std::string *command = kv.get("run", "command");
        const std::string *kind = kv.get("run", "kind");
        auto run = kv.sections.find("outputs");
        if (!command || !kind || run == kv.sections.end()) {
            rows.push_back({"98-malformed", "?", name, "malformed-manifest", ""});
            continue;
        }
        auto files = run->second.find("file");
        if (files == run->second.end()) continue;
        for (const auto &f : files->second) {
            referenced.insert(f);
            const auto data = ctx.out_dir / f;
            Row row{*kind, *command, f, "ok", ""};
            if (!std::filesystem::exists(data)) {
                row.status = "missing";
            } else {
                std::ifstream in(data);
                std::size_t lines = 0;
                std::string l;
                while (std::getline(in, l)) ++lines;
                row.detail = "rows=" + std::to_string(lines > 0 ? lines - 1 : 0);
            }
            rows.push_back(std::move(row));
        }
    }

    // Recognizable data files nobody claimed (for example hand-copied curves).
    for (const auto &entry : std::filesystem::directory_iterator(ctx.out_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (referenced.count(name) != 0 || name == "report.csv") continue;
        const bool known = name.size() > 4 && name.substr(name.size() - 4) == ".csv" &&
                           (name.rfind("ber_", 0) == 0 || name.rfind("cut_", 0) == 0 ||
                            name.rfind("beam_cut_", 0) == 0 ||
                            name.rfind("patterns_", 0) == 0);
        if (!known) continue;
        std::ifstream in(entry.path());
        std::size_t lines = 0;
        std::string l;
        while (std::getline(in, l)) ++lines;
        rows.push_back({"90-unmanifested", "?", name, "unmanifested",
                        "rows=" + std::to_string(lines > 0 ? lines - 1 : 0)});
    }

    if (rows.empty()) {
        throw MissingInputError("report: no run manifests or recognizable data files in " +
                                ctx.out_dir.string());
    }
    std::sort(rows.begin(), rows.end());

    const auto report_path = ctx.out_dir / "report.csv";
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write " + report_path.string());
    out << "kind,command,file,status,detail\n";
    for (const auto &row : rows) {
        out << row.kind << ',' << row.command << ',' << row.file << ',' << row.status
            << ',' << row.detail << "\n";
    }
    note(ctx, "wrote " + report_path.string() + "  (" + std::to_string(rows.size()) +
                  " rows)");
}

} // namespace dmsim
