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

#include "dmsim/dm.hpp"

#include <cmath>
#include <string>

#include "dmsim/errors.hpp"

namespace dmsim {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
}

ComplexGain qpsk_symbol(std::uint8_t b0, std::uint8_t b1) {
    // Quadrants counter-clockwise 00 -> 01 -> 11 -> 10 (Gray).
    const double re = (b1 == 0) ? kInvSqrt2 : -kInvSqrt2;
    const double im = (b0 == 0) ? kInvSqrt2 : -kInvSqrt2;
    return {re, im};
}

void qpsk_demap_symbol(ComplexGain sample, std::uint8_t &b0, std::uint8_t &b1) {
    b0 = sample.imag() < 0.0 ? 1 : 0;
    b1 = sample.real() < 0.0 ? 1 : 0;
}

std::vector<ComplexGain> qpsk_map(std::span<const std::uint8_t> bits) {
    if (bits.size() % 2 != 0) {
        throw FramingError("bit count " + std::to_string(bits.size()) +
                           " is odd; QPSK frames two bits per symbol");
    }
    std::vector<ComplexGain> symbols;
    symbols.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        symbols.push_back(qpsk_symbol(bits[i], bits[i + 1]));
    }
    return symbols;
}

std::vector<std::uint8_t> qpsk_demap(std::span<const ComplexGain> samples) {
    std::vector<std::uint8_t> bits;
    bits.reserve(samples.size() * 2);
    for (const auto &s : samples) {
        std::uint8_t b0 = 0, b1 = 0;
        qpsk_demap_symbol(s, b0, b1);
        bits.push_back(b0);
        bits.push_back(b1);
    }
    return bits;
}

AnVector gen_an(Rng &rng, double an_ratio) {
    if (!(an_ratio >= 0.0) || !std::isfinite(an_ratio)) {
        throw ConfigError("an_ratio must be finite and non-negative");
    }
    AnVector v;
    v.an_ratio = an_ratio;
    if (an_ratio == 0.0) return v;

    double power = 0.0;
    do {
        ComplexGain mean = 0.0;
        for (auto &z : v.z) {
            z = rng.circular_normal();
            mean += z;
        }
        mean /= static_cast<double>(kNumPorts);
        power = 0.0;
        for (auto &z : v.z) {
            z -= mean;
            power += std::norm(z);
        }
    } while (power < 1e-300); // all-equal draw; vanishing probability

    const double scale = std::sqrt(an_ratio / power);
    for (auto &z : v.z) z *= scale;
    return v;
}

TxShares TxShares::all() {
    TxShares s;
    s.share.fill(1.0);
    return s;
}

TxShares TxShares::trio() {
    TxShares s;
    s.share[port_index(PortId::P3)] = 1.0;
    s.share[port_index(PortId::P4)] = 1.0;
    s.share[port_index(PortId::P5)] = 1.0;
    return s;
}

TxShares TxShares::enhanced(double ratio) {
    if (ratio < 0.0 || !std::isfinite(ratio)) {
        throw ConfigError("enhanced share ratio must be non-negative");
    }
    TxShares s = trio();
    s.share[port_index(PortId::P1)] = ratio;
    s.share[port_index(PortId::P2)] = ratio;
    return s;
}

std::size_t DmFrame::n_active() const {
    std::size_t n = 0;
    for (bool a : active) n += a ? 1 : 0;
    return n;
}

double DmFrame::transmit_power() const {
    double p = 0.0;
    for (const auto &s : tx) p += std::norm(s);
    return p;
}

DmFrame dm_excite(ComplexGain symbol, const AnVector &an, const PatternSet &set,
                  const Direction &bob, const TxShares &shares, SweepPlane plane) {
    DmFrame frame;
    frame.bob = bob;
    frame.plane = plane;

    std::array<ComplexGain, kNumPorts> field{};
    double share_sum = 0.0;
    std::size_t n_active = 0;
    for (auto p : kAllPorts) {
        const auto i = port_index(p);
        if (shares.share[i] <= 0.0) continue;
        field[i] = set.eval(p, bob);
        if (std::abs(field[i]) < set.null_threshold(p)) continue; // nulled: flagged off
        frame.active[i] = true;
        share_sum += shares.share[i];
        ++n_active;
    }
    if (n_active < 2) {
        throw InsecureConfigError(
            "only " + std::to_string(n_active) +
            " port(s) carry signal toward the intended direction; directional "
            "modulation needs at least 2");
    }

    // Redistribute the noise of dropped ports over the active set and
    // restore the configured AN power, keeping the zero sum.
    std::array<ComplexGain, kNumPorts> z{};
    ComplexGain active_sum = 0.0;
    for (std::size_t i = 0; i < kNumPorts; ++i) {
        if (frame.active[i]) active_sum += an.z[i];
    }
    const ComplexGain mean = active_sum / static_cast<double>(n_active);
    double power = 0.0;
    for (std::size_t i = 0; i < kNumPorts; ++i) {
        if (!frame.active[i]) continue;
        z[i] = an.z[i] - mean;
        power += std::norm(z[i]);
    }
    if (an.an_ratio > 0.0 && power > 1e-300) {
        const double scale = std::sqrt(an.an_ratio / power);
        for (std::size_t i = 0; i < kNumPorts; ++i) z[i] *= scale;
    }

    for (std::size_t i = 0; i < kNumPorts; ++i) {
        if (!frame.active[i]) continue;
        const double a = shares.share[i] / share_sum;
        frame.tx[i] = (a * symbol + z[i]) / field[i];
    }
    return frame;
}

ComplexGain observe_at(const DmFrame &frame, const Direction &dir,
                       const PatternSet &set) {
    ComplexGain acc = 0.0;
    for (auto p : kAllPorts) {
        const auto i = port_index(p);
        if (frame.active[i]) {
            acc += frame.tx[i] * set.eval(p, dir);
        }
    }
    return acc;
}

} // namespace dmsim
