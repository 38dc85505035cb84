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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dmsim/dm.hpp"

namespace dmsim {

/// Which ports carry the directional modulation.
enum class DmTxMode { all, trio, enhanced };

/// Monte Carlo link parameters. SNR is referenced to the intended
/// receiver (unit symbol energy there); the same noise variance applies
/// at every observation angle.
struct LinkConfig {
    double snr_db = 12.0;
    bool snr_per_bit = false; // interpret snr_db as Eb/N0 instead of Es/N0
    std::uint64_t n_symbols = 100000;
    double an_ratio = 1.0;
    Direction bob{90.0, 0.0};
    SweepPlane sweep_plane = SweepPlane::azimuth;
    double cut_phi_deg = 0.0; // azimuth of the elevation cut plane
    double angle_step_deg = 1.0;
    std::uint64_t seed = 1;
    DmTxMode tx_mode = DmTxMode::all;
    double enhance_ratio = 0.6;
    unsigned threads = 0; // sweep parallelism; 0 = hardware concurrency

    double es_n0_db() const;
    /// Complex noise variance sigma^2 = 10^(-EsN0_dB / 10).
    double noise_variance() const;
    TxShares tx_shares() const;
    /// Throws ConfigError on out-of-range parameters.
    void validate() const;
};

struct BerRecord {
    double angle_deg = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
    std::uint64_t substream_seed = 0;
};

struct BerCurve {
    std::vector<BerRecord> records;
    LinkConfig config;
    double wall_seconds = 0.0;
};

/// Transmits n_symbols DM frames toward config.bob and measures BER at a
/// single observation angle on the configured sweep plane. AWGN with the
/// Bob-referenced variance is added to each observed sample before
/// quadrant detection. Deterministic: the RNG substream depends only on
/// (seed, angle).
BerRecord ber_at(const LinkConfig &config, const PatternSet &set,
                 double eavesdropper_angle_deg);

/// ber_at across the whole plane: azimuth angles {0, step, ..., 360-step}
/// or elevation angles {0, step, ..., 180}. Angles are evaluated
/// concurrently; results are schedule-independent because every angle
/// derives its own substream.
BerCurve ber_sweep(const LinkConfig &config, const PatternSet &set);

struct BerBeamwidth {
    double width_deg = 0.0;
    bool empty = false; // no angle below threshold
};

/// Width of the maximal contiguous below-threshold interval containing
/// the curve minimum. Azimuth curves are treated as periodic (wrap-aware,
/// width = count * step); elevation curves are linear (width =
/// (count - 1) * step).
BerBeamwidth ber_beamwidth(const BerCurve &curve, double threshold = 1e-2);

/// BER CSV schema: `angle_deg,ber,bit_errors,bits,seed` with the per-angle
/// substream seed in the last column. Identical configs reproduce files
/// byte-for-byte.
void write_ber_csv(const std::filesystem::path &path, const BerCurve &curve);
std::vector<BerRecord> read_ber_csv(const std::filesystem::path &path);

} // namespace dmsim
