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

#include "dmsim/link.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "dmsim/errors.hpp"

namespace dmsim {

double LinkConfig::es_n0_db() const {
    // QPSK carries 2 bits per symbol: Es/N0 = Eb/N0 + 10 log10(2).
    return snr_per_bit ? snr_db + 10.0 * std::log10(2.0) : snr_db;
}

double LinkConfig::noise_variance() const {
    return std::pow(10.0, -es_n0_db() / 10.0);
}

TxShares LinkConfig::tx_shares() const {
    switch (tx_mode) {
    case DmTxMode::trio:
        return TxShares::trio();
    case DmTxMode::enhanced:
        return TxShares::enhanced(enhance_ratio);
    case DmTxMode::all:
    default:
        return TxShares::all();
    }
}

void LinkConfig::validate() const {
    if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite");
    if (n_symbols < 1000) {
        throw ConfigError("n_symbols must be at least 1000, got " +
                          std::to_string(n_symbols));
    }
    if (!(an_ratio >= 0.0) || !std::isfinite(an_ratio)) {
        throw ConfigError("an_ratio must be finite and non-negative");
    }
    if (!(enhance_ratio >= 0.0)) throw ConfigError("enhance_ratio must be non-negative");
    if (!(angle_step_deg > 0.0)) throw ConfigError("angle_step_deg must be positive");
    const double range = sweep_plane == SweepPlane::azimuth ? 360.0 : 180.0;
    const double n = range / angle_step_deg;
    if (std::abs(n - std::round(n)) > 1e-9) {
        throw ConfigError("angle_step_deg must divide " + std::to_string(range));
    }
    if (sweep_plane == SweepPlane::azimuth &&
        std::abs(bob.theta_deg() - 90.0) > 1e-9) {
        throw ConfigError("azimuth sweeps run on the horizon ring; bob theta must be 90");
    }
}

namespace {

Direction observation_direction(const LinkConfig &config, double angle_deg) {
    if (config.sweep_plane == SweepPlane::azimuth) {
        return {90.0, angle_deg};
    }
    if (angle_deg < 0.0 || angle_deg > 180.0) {
        throw ConfigError("elevation angle out of [0, 180]: " +
                          std::to_string(angle_deg));
    }
    return {angle_deg, config.cut_phi_deg};
}

std::uint64_t angle_substream_key(double angle_deg) {
    return static_cast<std::uint64_t>(std::llround(angle_deg * 1e6));
}

} // namespace

BerRecord ber_at(const LinkConfig &config, const PatternSet &set,
                 double eavesdropper_angle_deg) {
    config.validate();
    const Direction eve = observation_direction(config, eavesdropper_angle_deg);
    const TxShares shares = config.tx_shares();
    const double sigma = std::sqrt(config.noise_variance());

    BerRecord rec;
    rec.angle_deg = eavesdropper_angle_deg;
    rec.substream_seed =
        Rng::substream(config.seed, angle_substream_key(eavesdropper_angle_deg));
    Rng rng(rec.substream_seed);

    std::uint64_t errors = 0;
    for (std::uint64_t k = 0; k < config.n_symbols; ++k) {
        const std::uint64_t word = rng.next_u64();
        const auto b0 = static_cast<std::uint8_t>(word & 1u);
        const auto b1 = static_cast<std::uint8_t>((word >> 1) & 1u);
        const ComplexGain symbol = qpsk_symbol(b0, b1);

        const AnVector an = gen_an(rng, config.an_ratio);
        const DmFrame frame =
            dm_excite(symbol, an, set, config.bob, shares, config.sweep_plane);
        const ComplexGain received =
            observe_at(frame, eve, set) + sigma * rng.circular_normal();

        std::uint8_t r0 = 0, r1 = 0;
        qpsk_demap_symbol(received, r0, r1);
        errors += (r0 != b0) + (r1 != b1);
    }
    rec.bit_errors = errors;
    rec.bits = 2 * config.n_symbols;
    rec.ber = static_cast<double>(errors) / static_cast<double>(rec.bits);
    return rec;
}

BerCurve ber_sweep(const LinkConfig &config, const PatternSet &set) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> angles;
    if (config.sweep_plane == SweepPlane::azimuth) {
        const auto n = static_cast<std::size_t>(std::llround(360.0 / config.angle_step_deg));
        for (std::size_t k = 0; k < n; ++k) {
            angles.push_back(static_cast<double>(k) * config.angle_step_deg);
        }
    } else {
        const auto n = static_cast<std::size_t>(std::llround(180.0 / config.angle_step_deg));
        for (std::size_t k = 0; k <= n; ++k) {
            angles.push_back(static_cast<double>(k) * config.angle_step_deg);
        }
    }

    BerCurve curve;
    curve.config = config;
    curve.records.resize(angles.size());

    unsigned n_threads = config.threads != 0 ? config.threads
                                             : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(angles.size()));

    // Each angle owns an RNG substream keyed by (seed, angle), so the
    // result does not depend on how angles are distributed over threads.
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= angles.size()) return;
            try {
                curve.records[i] = ber_at(config, set, angles[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    curve.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return curve;
}

BerBeamwidth ber_beamwidth(const BerCurve &curve, double threshold) {
    const auto &recs = curve.records;
    if (recs.empty()) return {0.0, true};

    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].ber < recs[min_idx].ber) min_idx = i;
    }
    if (!(recs[min_idx].ber < threshold)) return {0.0, true};

    const bool periodic = curve.config.sweep_plane == SweepPlane::azimuth;
    const std::size_t n = recs.size();
    std::size_t count = 1;
    if (periodic) {
        for (std::size_t step = 1; step < n; ++step) {
            if (recs[(min_idx + step) % n].ber < threshold) ++count;
            else break;
        }
        for (std::size_t step = 1; step < n; ++step) {
            if (recs[(min_idx + n - step) % n].ber < threshold) ++count;
            else break;
        }
        count = std::min(count, n);
        return {static_cast<double>(count) * curve.config.angle_step_deg, false};
    }
    for (std::size_t i = min_idx + 1; i < n && recs[i].ber < threshold; ++i) ++count;
    for (std::size_t i = min_idx; i-- > 0 && recs[i].ber < threshold;) ++count;
    return {static_cast<double>(count - 1) * curve.config.angle_step_deg, false};
}

void write_ber_csv(const std::filesystem::path &path, const BerCurve &curve) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write BER CSV: " + path.string());
    out << "angle_deg,ber,bit_errors,bits,seed\n";
    out.precision(12);
    for (const auto &r : curve.records) {
        out << r.angle_deg << ',' << r.ber << ',' << r.bit_errors << ','
            << r.bits << ',' << r.substream_seed << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<BerRecord> read_ber_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open BER CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty BER CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "angle_deg,ber,bit_errors,bits,seed") {
        throw SchemaError("bad BER CSV header: '" + line + "'");
    }
    std::vector<BerRecord> rows;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        BerRecord r{};
        char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
        if (!(ss >> r.angle_deg >> c1 >> r.ber >> c2 >> r.bit_errors >> c3 >>
              r.bits >> c4 >> r.substream_seed) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',') {
            throw SchemaError("bad BER CSV row " + std::to_string(n));
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace dmsim
