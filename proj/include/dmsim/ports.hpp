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
#include <cstddef>
#include <optional>
#include <string_view>

namespace dmsim {

/// The five feed ports of the multimode antenna model.
enum class PortId : int { P1 = 0, P2 = 1, P3 = 2, P4 = 3, P5 = 4 };

inline constexpr std::size_t kNumPorts = 5;

inline constexpr std::array<PortId, kNumPorts> kAllPorts = {
    PortId::P1, PortId::P2, PortId::P3, PortId::P4, PortId::P5};

constexpr std::size_t port_index(PortId p) { return static_cast<std::size_t>(p); }

enum class HarmonicKind { standing, traveling };
enum class ElevationTaper { broadside, conical };

/// Static per-port mode metadata. The azimuthal order is the number of
/// field periods around the azimuth ring; the taper selects the elevation
/// envelope; efficiency is the radiated power fraction used when
/// efficiency scaling is enabled.
struct PortTraits {
    int azimuthal_order;
    HarmonicKind harmonic;
    ElevationTaper taper;
    double efficiency;
};

const PortTraits &port_traits(PortId p);

std::string_view port_name(PortId p);
std::optional<PortId> parse_port(std::string_view name);

} // namespace dmsim
