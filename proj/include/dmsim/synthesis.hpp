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

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "dmsim/pattern.hpp"

namespace dmsim {

/// Per-port complex excitation weights. A port that was never set carries
/// zero weight (not driven).
class Excitation {
  public:
    ComplexGain weight(PortId p) const { return w_[port_index(p)]; }
    void set_weight(PortId p, ComplexGain w) { w_[port_index(p)] = w; }

    /// Ports with |w| > eps, in P1..P5 order.
    std::vector<PortId> driven_ports(double eps = 0.0) const;

    bool any_nonzero() const { return !driven_ports().empty(); }

    const std::array<ComplexGain, kNumPorts> &weights() const { return w_; }

  private:
    std::array<ComplexGain, kNumPorts> w_{};
};

/// Pattern metrics computed on a sampled |field|^2 grid. Gains are in dB
/// relative to unit field magnitude; beamwidth is measured on the azimuth
/// ring through the peak; elevation_leakage_db is the strongest sample
/// more than 10 degrees off the horizon ring, relative to the peak
/// (negative = below peak).
struct BeamReport {
    Direction peak_direction{90.0, 0.0};
    double peak_gain_db = 0.0;
    double front_to_back_db = 0.0;
    double beamwidth_deg = 0.0;
    double directivity_dbi = 0.0;
    double elevation_leakage_db = 0.0;
};

/// Superposition of the driven ports: sum_n w_n * E_n(dir).
ComplexGain array_factor(const PatternSet &set, const Excitation &exc,
                         const Direction &dir);

/// Phase-conjugate alignment: the reference port keeps unit weight at
/// zero phase and every other port gets
///   w_n = exp(j (arg E_ref(target) - arg E_n(target)))
/// so all contributions at the target share the reference phase. Any port
/// whose magnitude at the target is below the set's null threshold makes
/// the alignment ill-defined and raises NullPortError naming the port.
Excitation phase_align(const PatternSet &set, std::span<const PortId> ports,
                       const Direction &target, PortId reference);

/// Phase-aligns {P3, P4, P5} at (theta=90, phi0). Under the default
/// analytic model the resulting field is sin(theta) * (1 + 2 cos 2(phi -
/// phi0)), a bidirectional beam with equal lobes at phi0 and phi0 + 180.
Excitation steer_azimuth(const PatternSet &set, double phi0_deg);

struct EnhancedBeam {
    Excitation excitation;
    PortId broadside_port = PortId::P1;
    bool tie_broken = false;
};

/// Adds one broadside port on top of steer_azimuth(phi0) to suppress the
/// mirror lobe: picks the port of {P1, P2} with the larger magnitude
/// toward phi0 (ties broken toward P1 and flagged), drives it with
/// amplitude `ratio` aligned to the trio's in-phase state. ratio must lie
/// in [0, 1.5].
EnhancedBeam enhance_unidirectional(const PatternSet &set, double phi0_deg,
                                    double ratio = 0.6);

enum class CutPlane { xz, yz };
enum class TiltSign { plus, minus };

struct ElevationBeam {
    Excitation excitation;
    Direction target{90.0, 0.0};
    std::array<PortId, 2> ports{PortId::P1, PortId::P4};
};

/// Tilted-beam synthesis from one broadside port and one order-2 port:
///   (xz, +) -> {P1, P4} on the phi=0 side    (xz, -) -> {P1, P5} at phi=180
///   (yz, +) -> {P2, P5} on the phi=90 side   (yz, -) -> {P2, P4} at phi=270
/// The target elevation is found by a 1-degree scan of the aligned pair
/// gain over theta in (0, 90) on the requested side; the pair is then
/// phase-aligned there (broadside port as reference).
ElevationBeam steer_elevation(const PatternSet &set, CutPlane plane, TiltSign sign);

/// Metrics over the sampled pattern. Throws DegeneratePatternError if the
/// pattern is identically zero on the grid. Directivity uses trapezoidal
/// solid-angle integration.
BeamReport beam_report(const PatternSet &set, const Excitation &exc,
                       const AngularGrid &grid = AngularGrid{},
                       double beamwidth_threshold_db = -3.0);

/// One sample of a pattern cut.
struct CutSample {
    double angle_deg;
    ComplexGain value;
};

/// Azimuth-ring cut at fixed theta (default the horizon ring).
std::vector<CutSample> azimuth_cut(const PatternSet &set, const Excitation &exc,
                                   double theta_deg = 90.0, double step_deg = 1.0);

/// Great-circle cut through the poles in the plane at azimuth phi_plane:
/// angle t in [0, 360) maps to theta=t at phi_plane for t <= 180 and to
/// theta=360-t at phi_plane+180 beyond.
std::vector<CutSample> plane_cut(const PatternSet &set, const Excitation &exc,
                                 double phi_plane_deg, double step_deg = 1.0);

struct BeamCutRow {
    double angle_deg;
    double mag_db;
    double phase_deg;
};

/// Beam cut CSV schema: `angle_deg,mag_db,phase_deg`, magnitudes
/// normalized to 0 dB at the cut peak and floored at -120 dB.
void write_beam_cut_csv(const std::filesystem::path &path,
                        const std::vector<CutSample> &cut);
std::vector<BeamCutRow> read_beam_cut_csv(const std::filesystem::path &path);

} // namespace dmsim
