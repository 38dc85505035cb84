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
#include <complex>
#include <filesystem>
#include <vector>

#include "dmsim/direction.hpp"
#include "dmsim/ports.hpp"

namespace dmsim {

/// Complex far-field voltage gain (dimensionless).
using ComplexGain = std::complex<double>;

/// Functional form used for the two azimuthal-order-2 ports: a traveling
/// harmonic exp(+/- j 2 phi) (default) or the standing pair cos(2 phi),
/// -sin(2 phi) obtained from the 135-degree port rotation.
enum class Tm21Kind { traveling, standing };

/// Closed-form far-field surrogate of a single port:
///   P1 = cos(theta/2) cos(phi)        P2 = cos(theta/2) sin(phi)
///   P3 = sin(theta)
///   P4 = sin(theta) exp(+j 2 phi)     P5 = sin(theta) exp(-j 2 phi)
/// scaled by sqrt(port efficiency) when efficiency_scaling is set.
ComplexGain eval_mode(PortId port, const Direction &dir,
                      bool efficiency_scaling = false,
                      Tm21Kind tm21 = Tm21Kind::traveling);

/// Five-port complex far-field model. Analytic sets evaluate the closed
/// forms above; grid sets hold samples on an AngularGrid and interpolate
/// bilinearly (periodic in phi). Immutable after construction.
class PatternSet {
  public:
    /// Relative magnitude below which a port is treated as nulled at an
    /// angle (phase undefined there).
    static constexpr double kEpsNullRel = 1e-6;

    static PatternSet analytic(bool efficiency_scaling = false,
                               Tm21Kind tm21 = Tm21Kind::traveling);

    /// Wraps externally supplied samples (one row-major theta x phi grid
    /// per port). efficiency_scaling records whether the samples already
    /// include the per-port efficiency factors.
    static PatternSet from_grids(const AngularGrid &grid,
                                 std::array<std::vector<ComplexGain>, kNumPorts> samples,
                                 bool efficiency_scaling = false);

    ComplexGain eval(PortId port, const Direction &dir) const;

    bool is_analytic() const { return analytic_; }
    bool efficiency_scaling() const { return efficiency_scaling_; }
    Tm21Kind tm21() const { return tm21_; }

    /// Grid of a sampled set; nullptr for analytic sets.
    const AngularGrid *grid() const { return analytic_ ? nullptr : &grid_; }

    /// Peak |gain| of one port (analytic: 1 or sqrt(efficiency); grid:
    /// max over samples). Used to scale the null threshold.
    double port_peak_magnitude(PortId port) const;

    /// Absolute null threshold for a port: kEpsNullRel * peak magnitude.
    double null_threshold(PortId port) const {
        return kEpsNullRel * port_peak_magnitude(port);
    }

  private:
    PatternSet() = default;

    bool analytic_ = true;
    bool efficiency_scaling_ = false;
    Tm21Kind tm21_ = Tm21Kind::traveling;
    AngularGrid grid_{};
    std::array<std::vector<ComplexGain>, kNumPorts> samples_{};
    std::array<double, kNumPorts> peaks_{};
};

/// Samples the analytic model onto a grid. Values at every node equal
/// eval_mode there.
PatternSet sample_pattern_set(const AngularGrid &grid,
                              bool efficiency_scaling = false,
                              Tm21Kind tm21 = Tm21Kind::traveling);

/// Pattern CSV schema: header `port,theta_deg,phi_deg,re,im`, one row per
/// grid node per port, rows sorted by (port, theta, phi). Load validates
/// that all five ports are present, share one uniform grid, and carry
/// finite values; violations raise SchemaError naming the row.
PatternSet load_pattern_csv(const std::filesystem::path &path);
void export_pattern_csv(const PatternSet &set, const std::filesystem::path &path);

} // namespace dmsim
