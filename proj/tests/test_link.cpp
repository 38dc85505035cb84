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

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmsim/errors.hpp"
#include "dmsim/link.hpp"

using namespace dmsim;

namespace {

const PatternSet &model() {
    static PatternSet set = PatternSet::analytic();
    return set;
}

LinkConfig quick_config() {
    LinkConfig cfg;
    cfg.n_symbols = 10000;
    cfg.bob = Direction(90.0, 50.0);
    cfg.seed = 99;
    return cfg;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config validation") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 10;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = quick_config();
    cfg.angle_step_deg = 7.0; // does not divide 360
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = quick_config();
    cfg.bob = Direction(45.0, 50.0); // off the horizon ring for an azimuth sweep
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = quick_config();
    cfg.sweep_plane = SweepPlane::elevation;
    cfg.bob = Direction(45.0, 0.0);
    cfg.angle_step_deg = 5.0;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("per-bit SNR convention adds 3 dB of symbol energy") {
    LinkConfig cfg = quick_config();
    cfg.snr_db = 12.0;
    const double es = cfg.noise_variance();
    cfg.snr_per_bit = true;
    CHECK(cfg.es_n0_db() == doctest::Approx(12.0 + 10.0 * std::log10(2.0)));
    CHECK(cfg.noise_variance() < es);
}

TEST_CASE("ber_at bob is near the theoretical QPSK floor") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 100000;
    auto rec = ber_at(cfg, model(), 50.0);
    CHECK(rec.bits == 2 * cfg.n_symbols);
    CHECK(rec.ber == doctest::Approx(static_cast<double>(rec.bit_errors) /
                                     static_cast<double>(rec.bits)));
    // Theoretical floor 3.43e-5; with 2e5 bits expect a handful of errors.
    CHECK(rec.ber < 1e-3);
}

TEST_CASE("ber_at 90 degrees off bob is close to guessing") {
    LinkConfig cfg = quick_config();
    auto rec = ber_at(cfg, model(), 140.0);
    CHECK(rec.ber > 0.3);
    CHECK(rec.ber < 0.7);
}

TEST_CASE("BER at bob is monotone in SNR") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 100000;
    double prev = 1.0;
    bool first = true;
    for (double snr : {6.0, 12.0, 18.0}) {
        cfg.snr_db = snr;
        auto rec = ber_at(cfg, model(), 50.0);
        if (!first) CHECK(rec.ber < prev);
        first = false;
        prev = rec.ber;
    }
}

TEST_CASE("ber_at is deterministic for a fixed seed") {
    LinkConfig cfg = quick_config();
    auto a = ber_at(cfg, model(), 120.0);
    auto b = ber_at(cfg, model(), 120.0);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.substream_seed == b.substream_seed);
    cfg.seed = 100;
    auto c = ber_at(cfg, model(), 120.0);
    CHECK(c.substream_seed != a.substream_seed);
}

TEST_CASE("azimuth sweep dips at bob and wraps correctly") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 20000;
    cfg.angle_step_deg = 5.0;
    auto curve = ber_sweep(cfg, model());
    REQUIRE(curve.records.size() == 72);
    CHECK(curve.records.front().angle_deg == 0.0);
    CHECK(curve.records.back().angle_deg == 355.0);

    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < curve.records.size(); ++i) {
        if (curve.records[i].ber < curve.records[min_idx].ber) min_idx = i;
    }
    CHECK(std::abs(curve.records[min_idx].angle_deg - 50.0) <= 5.0);
}

TEST_CASE("elevation sweep keeps bob secure and far angles scrambled") {
    // In an elevation cut the per-port azimuth factors cancel between any
    // two angles, leaving only the two elevation tapers to scramble with;
    // the low-BER region is therefore a basin around bob rather than a
    // sharp notch, and the basin must contain bob.
    LinkConfig cfg = quick_config();
    cfg.sweep_plane = SweepPlane::elevation;
    cfg.bob = Direction(120.0, 0.0);
    cfg.cut_phi_deg = 0.0;
    cfg.n_symbols = 20000;
    cfg.angle_step_deg = 5.0;
    auto curve = ber_sweep(cfg, model());
    REQUIRE(curve.records.size() == 37); // 0..180 inclusive

    const auto &recs = curve.records;
    const std::size_t bob_idx = 24; // 120 / 5
    CHECK(recs[bob_idx].angle_deg == 120.0);
    CHECK(recs[bob_idx].ber < 1e-2);

    // The contiguous below-threshold region around the minimum contains bob.
    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].ber < recs[min_idx].ber) min_idx = i;
    }
    std::size_t lo = min_idx, hi = min_idx;
    while (lo > 0 && recs[lo - 1].ber < 1e-2) --lo;
    while (hi + 1 < recs.size() && recs[hi + 1].ber < 1e-2) ++hi;
    CHECK(lo <= bob_idx);
    CHECK(bob_idx <= hi);

    // Far off the basin the constellation is scrambled.
    CHECK(recs[2].ber > 0.08);   // theta = 10
    CHECK(recs[4].ber > 0.08);   // theta = 20
    CHECK(recs[34].ber > 0.08);  // theta = 170
}

TEST_CASE("sweep results do not depend on the thread count") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 2000;
    cfg.angle_step_deg = 30.0;
    cfg.threads = 1;
    auto serial = ber_sweep(cfg, model());
    cfg.threads = 4;
    auto parallel = ber_sweep(cfg, model());
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].bit_errors == parallel.records[i].bit_errors);
    }
}

TEST_CASE("ber_beamwidth conventions") {
    BerCurve curve;
    curve.config = quick_config();
    curve.config.angle_step_deg = 1.0;

    SUBCASE("uniformly bad curve is empty") {
        for (int a = 0; a < 360; ++a) {
            curve.records.push_back({static_cast<double>(a), 1000, 2000, 0.5, 0});
        }
        auto bw = ber_beamwidth(curve);
        CHECK(bw.empty);
        CHECK(bw.width_deg == 0.0);
    }

    SUBCASE("degenerate threshold covers the whole sweep") {
        for (int a = 0; a < 360; ++a) {
            curve.records.push_back({static_cast<double>(a), 1000, 2000, 0.5, 0});
        }
        auto bw = ber_beamwidth(curve, 1.0);
        CHECK_FALSE(bw.empty);
        CHECK(bw.width_deg == doctest::Approx(360.0));
    }

    SUBCASE("wrap-around lobe across 0") {
        for (int a = 0; a < 360; ++a) {
            const bool low = a <= 10 || a >= 350;
            curve.records.push_back({static_cast<double>(a),
                                     static_cast<std::uint64_t>(low ? 0 : 900), 2000,
                                     low ? 0.0 : 0.45, 0});
        }
        auto bw = ber_beamwidth(curve);
        CHECK_FALSE(bw.empty);
        CHECK(bw.width_deg == doctest::Approx(21.0)); // 10 samples 350..359 plus 11 samples 0..10
    }

    SUBCASE("elevation curves are linear") {
        curve.config.sweep_plane = SweepPlane::elevation;
        curve.config.bob = Direction(90.0, 0.0);
        for (int a = 0; a <= 180; ++a) {
            const bool low = a >= 80 && a <= 100;
            curve.records.push_back({static_cast<double>(a),
                                     static_cast<std::uint64_t>(low ? 0 : 900), 2000,
                                     low ? 0.0 : 0.45, 0});
        }
        auto bw = ber_beamwidth(curve);
        CHECK_FALSE(bw.empty);
        CHECK(bw.width_deg == doctest::Approx(20.0));
    }
}

TEST_CASE("BER CSV round trip and byte determinism") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 1000;
    cfg.angle_step_deg = 30.0;
    auto curve = ber_sweep(cfg, model());

    auto dir = std::filesystem::temp_directory_path() / "dmsim_link_tests";
    std::filesystem::create_directories(dir);
    auto p1 = dir / "curve1.csv";
    auto p2 = dir / "curve2.csv";
    write_ber_csv(p1, curve);

    auto rows = read_ber_csv(p1);
    REQUIRE(rows.size() == curve.records.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].angle_deg == doctest::Approx(curve.records[i].angle_deg));
        CHECK(rows[i].bit_errors == curve.records[i].bit_errors);
        CHECK(rows[i].bits == curve.records[i].bits);
        CHECK(rows[i].substream_seed == curve.records[i].substream_seed);
    }

    auto again = ber_sweep(cfg, model());
    write_ber_csv(p2, again);
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("different seeds stay within binomial scatter") {
    LinkConfig cfg = quick_config();
    cfg.n_symbols = 20000;
    std::vector<double> errors;
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        cfg.seed = seed;
        errors.push_back(static_cast<double>(ber_at(cfg, model(), 120.0).bit_errors));
    }
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(errors.size());
    const double bits = 2.0 * static_cast<double>(cfg.n_symbols);
    const double p = mean / bits;
    const double sigma = std::sqrt(bits * p * (1.0 - p));
    for (double e : errors) {
        CHECK(std::abs(e - mean) <= 4.0 * sigma);
    }
}
