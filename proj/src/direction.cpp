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

#include "dmsim/direction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dmsim/errors.hpp"

namespace dmsim {

Direction::Direction(double theta_deg, double phi_deg) {
    if (!std::isfinite(theta_deg) || !std::isfinite(phi_deg)) {
        throw std::invalid_argument("direction angles must be finite");
    }
    if (theta_deg < 0.0 || theta_deg > 180.0) {
        throw std::invalid_argument("theta_deg out of [0, 180]: " +
                                    std::to_string(theta_deg));
    }
    double phi = std::fmod(phi_deg, 360.0);
    if (phi < 0.0) phi += 360.0;
    if (phi >= 360.0) phi -= 360.0; // fmod can round up to 360 for tiny negatives
    theta_deg_ = theta_deg;
    phi_deg_ = phi + 0.0; // normalize -0.0
}

namespace {

std::size_t checked_steps(double step, double range, const char *what) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError(std::string(what) + " step must be positive");
    }
    const double n = range / step;
    const double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-9 || rounded < 1.0) {
        throw ConfigError(std::string(what) + " step " + std::to_string(step) +
                          " does not divide " + std::to_string(range));
    }
    return static_cast<std::size_t>(rounded);
}

} // namespace

AngularGrid::AngularGrid(double theta_step_deg, double phi_step_deg)
    : theta_step_(theta_step_deg), phi_step_(phi_step_deg) {
    n_theta_ = checked_steps(theta_step_deg, 180.0, "theta") + 1;
    n_phi_ = checked_steps(phi_step_deg, 360.0, "phi");
}

} // namespace dmsim
