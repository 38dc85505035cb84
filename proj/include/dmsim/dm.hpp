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
#include <cstdint>
#include <span>
#include <vector>

#include "dmsim/pattern.hpp"
#include "dmsim/rng.hpp"

namespace dmsim {

/// Gray-coded unit-energy QPSK. Bit pair (b0, b1) maps to quadrants
/// counter-clockwise: 00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2,
/// 11 -> (-1-j)/sqrt2, 10 -> (+1-j)/sqrt2.
ComplexGain qpsk_symbol(std::uint8_t b0, std::uint8_t b1);

/// Minimum-distance (quadrant) decision; boundaries resolve toward the
/// non-negative half-planes.
void qpsk_demap_symbol(ComplexGain sample, std::uint8_t &b0, std::uint8_t &b1);

/// Maps a bit stream (values 0/1) to symbols; throws FramingError on an
/// odd bit count.
std::vector<ComplexGain> qpsk_map(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> qpsk_demap(std::span<const ComplexGain> samples);

/// Zero-sum artificial noise across the five ports: sum_n z_n = 0 by
/// construction, total power sum |z_n|^2 = an_ratio.
struct AnVector {
    std::array<ComplexGain, kNumPorts> z{};
    double an_ratio = 0.0;
};

/// Draws i.i.d. circular Gaussians, projects out their mean and rescales
/// the result to total power an_ratio (exactly zero for an_ratio = 0).
AnVector gen_an(Rng &rng, double an_ratio);

/// Relative symbol share per port; zero entries exclude a port from the
/// transmission. Shares are normalized over the surviving ports inside
/// dm_excite.
struct TxShares {
    std::array<double, kNumPorts> share{};

    /// All five ports, equal shares.
    static TxShares all();
    /// The three azimuthally omnidirectional ports {P3, P4, P5}.
    static TxShares trio();
    /// Trio plus both broadside ports at relative amplitude `ratio`
    /// (ratio 1 recovers all(), ratio 0 recovers trio()).
    static TxShares enhanced(double ratio);
};

enum class SweepPlane { azimuth, elevation };

/// Per-port transmit samples encoding one symbol plus artificial noise.
/// Ports below the null threshold at the intended direction (or excluded
/// by the shares) transmit zero and are cleared in `active`.
struct DmFrame {
    std::array<ComplexGain, kNumPorts> tx{};
    std::array<bool, kNumPorts> active{};
    Direction bob{90.0, 0.0};
    SweepPlane plane = SweepPlane::azimuth;

    std::size_t n_active() const;
    double transmit_power() const; // sum |tx_n|^2
};

/// Directional-modulation excitation: each active port transmits its
/// share of the symbol plus its artificial-noise sample, divided by the
/// port's complex pattern toward `bob`:
///   tx_n = (a_n * symbol + z_n) / E_n(bob),  sum_n a_n = 1.
/// The noise of dropped ports is redistributed over the active ones
/// (zero-sum preserved, total AN power rescaled to an_ratio), so the
/// field observed at `bob` is exactly `symbol` for every noise draw.
/// Throws InsecureConfigError when fewer than two ports remain active.
DmFrame dm_excite(ComplexGain symbol, const AnVector &an, const PatternSet &set,
                  const Direction &bob, const TxShares &shares = TxShares::all(),
                  SweepPlane plane = SweepPlane::azimuth);

/// Field observed at an arbitrary angle: sum_n tx_n * E_n(dir).
ComplexGain observe_at(const DmFrame &frame, const Direction &dir,
                       const PatternSet &set);

} // namespace dmsim
