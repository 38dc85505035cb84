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

#include <cstddef>

namespace dmsim {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Spherical look angle. theta is measured from the +z axis (0 = zenith,
/// 90 = horizon, 180 = nadir); phi is the azimuth from the +x axis.
/// phi is wrapped into [0, 360) on construction; theta must lie in
/// [0, 180] or the constructor throws.
class Direction {
  public:
    Direction(double theta_deg, double phi_deg);

    double theta_deg() const { return theta_deg_; }
    double phi_deg() const { return phi_deg_; }
    double theta_rad() const { return deg2rad(theta_deg_); }
    double phi_rad() const { return deg2rad(phi_deg_); }

    bool operator==(const Direction &) const = default;

  private:
    double theta_deg_;
    double phi_deg_;
};

/// Regular full-sphere sampling grid: theta in {0, step, ..., 180} and
/// phi in {0, step, ..., 360 - step}. Both steps must evenly divide their
/// ranges (the default 1 x 1 degree grid gives 181 x 360 nodes).
class AngularGrid {
  public:
    explicit AngularGrid(double theta_step_deg = 1.0, double phi_step_deg = 1.0);

    double theta_step_deg() const { return theta_step_; }
    double phi_step_deg() const { return phi_step_; }

    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_phi() const { return n_phi_; }
    std::size_t size() const { return n_theta_ * n_phi_; }

    double theta_deg(std::size_t i) const { return static_cast<double>(i) * theta_step_; }
    double phi_deg(std::size_t j) const { return static_cast<double>(j) * phi_step_; }

    /// Row-major node index (theta outer, phi inner).
    std::size_t node(std::size_t i_theta, std::size_t j_phi) const {
        return i_theta * n_phi_ + j_phi;
    }

    bool operator==(const AngularGrid &) const = default;

  private:
    double theta_step_;
    double phi_step_;
    std::size_t n_theta_;
    std::size_t n_phi_;
};

} // namespace dmsim
