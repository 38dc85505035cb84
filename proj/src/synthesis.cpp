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

#include "dmsim/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "dmsim/errors.hpp"

namespace dmsim {

namespace {

constexpr double kDbFloor = -120.0;

double to_db(double magnitude) {
    if (magnitude <= 0.0) return kDbFloor;
    return std::max(20.0 * std::log10(magnitude), kDbFloor);
}

} // namespace

std::vector<PortId> Excitation::driven_ports(double eps) const {
    std::vector<PortId> out;
    for (auto p : kAllPorts) {
        if (std::abs(w_[port_index(p)]) > eps) out.push_back(p);
    }
    return out;
}

ComplexGain array_factor(const PatternSet &set, const Excitation &exc,
                         const Direction &dir) {
    ComplexGain acc = 0.0;
    for (auto p : kAllPorts) {
        const auto w = exc.weight(p);
        if (w != ComplexGain{0.0, 0.0}) {
            acc += w * set.eval(p, dir);
        }
    }
    return acc;
}

Excitation phase_align(const PatternSet &set, std::span<const PortId> ports,
                       const Direction &target, PortId reference) {
    if (ports.empty()) throw ConfigError("phase_align: empty port list");
    if (std::find(ports.begin(), ports.end(), reference) == ports.end()) {
        throw ConfigError("phase_align: reference port " +
                          std::string(port_name(reference)) +
                          " is not in the port list");
    }
    for (auto p : ports) {
        if (std::abs(set.eval(p, target)) < set.null_threshold(p)) {
            throw NullPortError(std::string(port_name(p)),
                                "port " + std::string(port_name(p)) +
                                    " is nulled at the target angle; drop it or "
                                    "move the target");
        }
    }
    const double ref_phase = std::arg(set.eval(reference, target));
    Excitation exc;
    for (auto p : ports) {
        if (p == reference) {
            exc.set_weight(p, {1.0, 0.0});
        } else {
            exc.set_weight(p, std::polar(1.0, ref_phase - std::arg(set.eval(p, target))));
        }
    }
    return exc;
}

Excitation steer_azimuth(const PatternSet &set, double phi0_deg) {
    const std::array<PortId, 3> trio{PortId::P3, PortId::P4, PortId::P5};
    return phase_align(set, trio, Direction(90.0, phi0_deg), PortId::P3);
}

EnhancedBeam enhance_unidirectional(const PatternSet &set, double phi0_deg,
                                    double ratio) {
    if (ratio < 0.0 || ratio > 1.5) {
        throw ConfigError("enhance ratio " + std::to_string(ratio) +
                          " out of [0, 1.5]");
    }
    EnhancedBeam beam;
    beam.excitation = steer_azimuth(set, phi0_deg);

    const Direction target(90.0, phi0_deg);
    const double m1 = std::abs(set.eval(PortId::P1, target));
    const double m2 = std::abs(set.eval(PortId::P2, target));
    beam.tie_broken = std::abs(m1 - m2) < 1e-12;
    beam.broadside_port = (m2 > m1 && !beam.tie_broken) ? PortId::P2 : PortId::P1;

    if (ratio == 0.0) return beam;

    const auto e_b = set.eval(beam.broadside_port, target);
    if (std::abs(e_b) < set.null_threshold(beam.broadside_port)) {
        throw NullPortError(std::string(port_name(beam.broadside_port)),
                            "selected broadside port is nulled toward phi0");
    }
    // Align the broadside contribution with the trio's in-phase state (the
    // reference P3 pattern is real positive on the horizon ring).
    const double trio_phase =
        std::arg(static_cast<ComplexGain>(set.eval(PortId::P3, target)));
    beam.excitation.set_weight(beam.broadside_port,
                               std::polar(ratio, trio_phase - std::arg(e_b)));
    return beam;
}

ElevationBeam steer_elevation(const PatternSet &set, CutPlane plane, TiltSign sign) {
    ElevationBeam beam;
    double phi_side = 0.0;
    if (plane == CutPlane::xz) {
        beam.ports = {PortId::P1,
                      sign == TiltSign::plus ? PortId::P4 : PortId::P5};
        phi_side = sign == TiltSign::plus ? 0.0 : 180.0;
    } else {
        beam.ports = {PortId::P2,
                      sign == TiltSign::plus ? PortId::P5 : PortId::P4};
        phi_side = sign == TiltSign::plus ? 90.0 : 270.0;
    }

    // Coarse 1-degree scan of the aligned pair gain, off broadside, on the
    // requested side of the cut plane.
    double best_gain = -1.0;
    double best_theta = 45.0;
    for (int t = 1; t < 90; ++t) {
        const Direction d(static_cast<double>(t), phi_side);
        const double g = std::abs(set.eval(beam.ports[0], d)) +
                         std::abs(set.eval(beam.ports[1], d));
        if (g > best_gain) {
            best_gain = g;
            best_theta = static_cast<double>(t);
        }
    }
    beam.target = Direction(best_theta, phi_side);
    beam.excitation = phase_align(set, beam.ports, beam.target, beam.ports[0]);
    return beam;
}

BeamReport beam_report(const PatternSet &set, const Excitation &exc,
                       const AngularGrid &grid, double beamwidth_threshold_db) {
    std::vector<double> mag(grid.size());
    double peak = 0.0;
    std::size_t peak_i = 0, peak_j = 0;
    for (std::size_t i = 0; i < grid.n_theta(); ++i) {
        for (std::size_t j = 0; j < grid.n_phi(); ++j) {
            const double m = std::abs(array_factor(
                set, exc, Direction(grid.theta_deg(i), grid.phi_deg(j))));
            mag[grid.node(i, j)] = m;
            if (m > peak) {
                peak = m;
                peak_i = i;
                peak_j = j;
            }
        }
    }
    if (peak <= 0.0) {
        throw DegeneratePatternError("pattern is identically zero on the grid");
    }

    BeamReport report;
    report.peak_direction = Direction(grid.theta_deg(peak_i), grid.phi_deg(peak_j));
    report.peak_gain_db = to_db(peak);

    const std::size_t mirror_j = (peak_j + grid.n_phi() / 2) % grid.n_phi();
    report.front_to_back_db = report.peak_gain_db - to_db(mag[grid.node(peak_i, mirror_j)]);

    // Beamwidth above threshold on the azimuth ring through the peak.
    const double thr = peak * std::pow(10.0, beamwidth_threshold_db / 20.0);
    const std::size_t np = grid.n_phi();
    std::size_t count = 1;
    for (std::size_t step = 1; step < np; ++step) { // forward from the peak
        if (mag[grid.node(peak_i, (peak_j + step) % np)] >= thr) ++count;
        else break;
    }
    for (std::size_t step = 1; step < np; ++step) { // backward
        if (mag[grid.node(peak_i, (peak_j + np - step) % np)] >= thr) ++count;
        else break;
    }
    report.beamwidth_deg = std::min<double>(static_cast<double>(count), np) *
                           grid.phi_step_deg();

    // Directivity via trapezoidal solid-angle integration of |F|^2
    // (interior theta rows weight 1, pole rows 1/2; phi is periodic).
    double p_rad = 0.0;
    for (std::size_t i = 0; i < grid.n_theta(); ++i) {
        const double wt = (i == 0 || i + 1 == grid.n_theta()) ? 0.5 : 1.0;
        const double s = std::sin(deg2rad(grid.theta_deg(i)));
        double row = 0.0;
        for (std::size_t j = 0; j < grid.n_phi(); ++j) {
            const double m = mag[grid.node(i, j)];
            row += m * m;
        }
        p_rad += wt * s * row;
    }
    p_rad *= deg2rad(grid.theta_step_deg()) * deg2rad(grid.phi_step_deg());
    report.directivity_dbi = 10.0 * std::log10(4.0 * kPi * peak * peak / p_rad);

    // Strongest sample more than 10 degrees off the horizon ring.
    double off = 0.0;
    for (std::size_t i = 0; i < grid.n_theta(); ++i) {
        if (std::abs(grid.theta_deg(i) - 90.0) <= 10.0) continue;
        for (std::size_t j = 0; j < grid.n_phi(); ++j) {
            off = std::max(off, mag[grid.node(i, j)]);
        }
    }
    report.elevation_leakage_db = to_db(off) - report.peak_gain_db;
    return report;
}

std::vector<CutSample> azimuth_cut(const PatternSet &set, const Excitation &exc,
                                   double theta_deg, double step_deg) {
    std::vector<CutSample> cut;
    const auto n = static_cast<std::size_t>(std::llround(360.0 / step_deg));
    cut.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phi = static_cast<double>(k) * step_deg;
        cut.push_back({phi, array_factor(set, exc, Direction(theta_deg, phi))});
    }
    return cut;
}

std::vector<CutSample> plane_cut(const PatternSet &set, const Excitation &exc,
                                 double phi_plane_deg, double step_deg) {
    std::vector<CutSample> cut;
    const auto n = static_cast<std::size_t>(std::llround(360.0 / step_deg));
    cut.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * step_deg;
        const Direction d = t <= 180.0
                                ? Direction(t, phi_plane_deg)
                                : Direction(360.0 - t, phi_plane_deg + 180.0);
        cut.push_back({t, array_factor(set, exc, d)});
    }
    return cut;
}

void write_beam_cut_csv(const std::filesystem::path &path,
                        const std::vector<CutSample> &cut) {
    double peak = 0.0;
    for (const auto &s : cut) peak = std::max(peak, std::abs(s.value));
    if (peak <= 0.0) {
        throw DegeneratePatternError("cut is identically zero");
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write beam cut CSV: " + path.string());
    out << "angle_deg,mag_db,phase_deg\n";
    out.precision(12);
    for (const auto &s : cut) {
        out << s.angle_deg << ',' << to_db(std::abs(s.value) / peak) << ','
            << rad2deg(std::arg(s.value)) << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<BeamCutRow> read_beam_cut_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open beam cut CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty beam cut CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "angle_deg,mag_db,phase_deg") {
        throw SchemaError("bad beam cut header: '" + line + "'");
    }
    std::vector<BeamCutRow> rows;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        BeamCutRow row{};
        char c1 = 0, c2 = 0;
        if (!(ss >> row.angle_deg >> c1 >> row.mag_db >> c2 >> row.phase_deg) ||
            c1 != ',' || c2 != ',') {
            throw SchemaError("bad beam cut row " + std::to_string(n));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace dmsim
