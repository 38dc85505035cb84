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

#include "dmsim/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dmsim/errors.hpp"

namespace dmsim {

namespace {

constexpr std::array<PortTraits, kNumPorts> kTraits = {{
    {1, HarmonicKind::standing, ElevationTaper::broadside, 0.30}, // P1
    {1, HarmonicKind::standing, ElevationTaper::broadside, 0.30}, // P2
    {0, HarmonicKind::standing, ElevationTaper::conical, 0.55},   // P3
    {2, HarmonicKind::traveling, ElevationTaper::conical, 0.15},  // P4
    {2, HarmonicKind::traveling, ElevationTaper::conical, 0.15},  // P5
}};

constexpr std::array<std::string_view, kNumPorts> kPortNames = {"P1", "P2", "P3",
                                                                "P4", "P5"};

} // namespace

const PortTraits &port_traits(PortId p) { return kTraits[port_index(p)]; }

std::string_view port_name(PortId p) { return kPortNames[port_index(p)]; }

std::optional<PortId> parse_port(std::string_view name) {
    for (std::size_t i = 0; i < kNumPorts; ++i) {
        if (kPortNames[i] == name) return static_cast<PortId>(i);
    }
    return std::nullopt;
}

ComplexGain eval_mode(PortId port, const Direction &dir, bool efficiency_scaling,
                      Tm21Kind tm21) {
    const double theta = dir.theta_rad();
    const double phi = dir.phi_rad();
    ComplexGain value;
    switch (port) {
    case PortId::P1:
        value = {std::cos(theta * 0.5) * std::cos(phi), 0.0};
        break;
    case PortId::P2:
        value = {std::cos(theta * 0.5) * std::sin(phi), 0.0};
        break;
    case PortId::P3:
        value = {std::sin(theta), 0.0};
        break;
    case PortId::P4:
        if (tm21 == Tm21Kind::traveling) {
            value = std::sin(theta) * std::polar(1.0, 2.0 * phi);
        } else {
            value = {std::sin(theta) * std::cos(2.0 * phi), 0.0};
        }
        break;
    case PortId::P5:
        if (tm21 == Tm21Kind::traveling) {
            value = std::sin(theta) * std::polar(1.0, -2.0 * phi);
        } else {
            // Standing counterpart from the 135-degree port rotation.
            value = {-std::sin(theta) * std::sin(2.0 * phi), 0.0};
        }
        break;
    }
    if (efficiency_scaling) {
        value *= std::sqrt(port_traits(port).efficiency);
    }
    return value;
}

PatternSet PatternSet::analytic(bool efficiency_scaling, Tm21Kind tm21) {
    PatternSet set;
    set.analytic_ = true;
    set.efficiency_scaling_ = efficiency_scaling;
    set.tm21_ = tm21;
    for (std::size_t i = 0; i < kNumPorts; ++i) {
        set.peaks_[i] =
            efficiency_scaling ? std::sqrt(kTraits[i].efficiency) : 1.0;
    }
    return set;
}

PatternSet PatternSet::from_grids(const AngularGrid &grid,
                                  std::array<std::vector<ComplexGain>, kNumPorts> samples,
                                  bool efficiency_scaling) {
    PatternSet set;
    set.analytic_ = false;
    set.efficiency_scaling_ = efficiency_scaling;
    set.grid_ = grid;
    for (std::size_t i = 0; i < kNumPorts; ++i) {
        if (samples[i].size() != grid.size()) {
            throw SchemaError("port " + std::string(kPortNames[i]) + " has " +
                              std::to_string(samples[i].size()) +
                              " samples, expected " + std::to_string(grid.size()));
        }
        double peak = 0.0;
        for (const auto &v : samples[i]) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw SchemaError("non-finite sample for port " +
                                  std::string(kPortNames[i]));
            }
            peak = std::max(peak, std::abs(v));
        }
        set.peaks_[i] = peak;
    }
    set.samples_ = std::move(samples);
    return set;
}

ComplexGain PatternSet::eval(PortId port, const Direction &dir) const {
    if (analytic_) {
        return eval_mode(port, dir, efficiency_scaling_, tm21_);
    }
    // Bilinear interpolation, periodic in phi.
    const auto &vals = samples_[port_index(port)];
    const double ti = dir.theta_deg() / grid_.theta_step_deg();
    const double pj = dir.phi_deg() / grid_.phi_step_deg();
    const std::size_t nt = grid_.n_theta();
    const std::size_t np = grid_.n_phi();
    std::size_t i0 = static_cast<std::size_t>(std::min(std::floor(ti),
                                                       static_cast<double>(nt - 1)));
    std::size_t i1 = std::min(i0 + 1, nt - 1);
    const double ft = ti - static_cast<double>(i0);
    std::size_t j0 = static_cast<std::size_t>(std::floor(pj)) % np;
    std::size_t j1 = (j0 + 1) % np;
    const double fp = pj - std::floor(pj);
    const ComplexGain a = vals[grid_.node(i0, j0)] * (1.0 - fp) +
                          vals[grid_.node(i0, j1)] * fp;
    const ComplexGain b = vals[grid_.node(i1, j0)] * (1.0 - fp) +
                          vals[grid_.node(i1, j1)] * fp;
    return a * (1.0 - ft) + b * ft;
}

double PatternSet::port_peak_magnitude(PortId port) const {
    return peaks_[port_index(port)];
}

PatternSet sample_pattern_set(const AngularGrid &grid, bool efficiency_scaling,
                              Tm21Kind tm21) {
    std::array<std::vector<ComplexGain>, kNumPorts> samples;
    for (auto p : kAllPorts) {
        auto &vals = samples[port_index(p)];
        vals.resize(grid.size());
        for (std::size_t i = 0; i < grid.n_theta(); ++i) {
            for (std::size_t j = 0; j < grid.n_phi(); ++j) {
                vals[grid.node(i, j)] = eval_mode(
                    p, Direction(grid.theta_deg(i), grid.phi_deg(j)),
                    efficiency_scaling, tm21);
            }
        }
    }
    return PatternSet::from_grids(grid, std::move(samples), efficiency_scaling);
}

namespace {

double parse_double_field(const std::string &field, std::size_t row, const char *name) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        if (!std::isfinite(v)) {
            throw SchemaError("non-finite " + std::string(name) + " at row " +
                              std::to_string(row));
        }
        return v;
    } catch (const SchemaError &) {
        throw;
    } catch (const std::exception &) {
        throw SchemaError("unparsable " + std::string(name) + " '" + field +
                          "' at row " + std::to_string(row));
    }
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Angles are keyed in microdegrees so lookups tolerate decimal roundoff.
long long quantized(double deg) { return std::llround(deg * 1e6); }

// Checks that the sorted unique coordinates form {0, step, ..., last}.
double infer_step(const std::set<double> &coords, double last, const char *what) {
    if (coords.size() < 2 || *coords.begin() != 0.0) {
        throw SchemaError(std::string(what) + " coordinates must start at 0");
    }
    const double step = *std::next(coords.begin());
    std::size_t k = 0;
    for (double c : coords) {
        if (std::abs(c - step * static_cast<double>(k)) > 1e-9) {
            throw SchemaError(std::string(what) + " coordinates are not uniform near " +
                              std::to_string(c));
        }
        ++k;
    }
    if (std::abs(*coords.rbegin() - last) > 1e-9) {
        throw SchemaError(std::string(what) + " coordinates do not reach " +
                          std::to_string(last));
    }
    return step;
}

} // namespace

PatternSet load_pattern_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open pattern CSV: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty pattern CSV: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "port,theta_deg,phi_deg,re,im") {
        throw SchemaError("bad pattern CSV header: '" + line + "'");
    }

    std::array<std::map<std::pair<long long, long long>, ComplexGain>, kNumPorts> nodes;
    std::set<double> thetas, phis;
    std::size_t row = 0; // header is row 0
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw SchemaError("expected 5 fields at row " + std::to_string(row));
        }
        auto port = parse_port(fields[0]);
        if (!port) {
            throw SchemaError("unknown port '" + fields[0] + "' at row " +
                              std::to_string(row));
        }
        const double theta = parse_double_field(fields[1], row, "theta_deg");
        const double phi = parse_double_field(fields[2], row, "phi_deg");
        const double re = parse_double_field(fields[3], row, "re");
        const double im = parse_double_field(fields[4], row, "im");
        if (theta < 0.0 || theta > 180.0 || phi < 0.0 || phi >= 360.0) {
            throw SchemaError("angle out of range at row " + std::to_string(row));
        }
        auto [it, inserted] = nodes[port_index(*port)].try_emplace(
            {quantized(theta), quantized(phi)}, ComplexGain{re, im});
        if (!inserted) {
            throw SchemaError("duplicate node for " + fields[0] + " at row " +
                              std::to_string(row));
        }
        thetas.insert(theta);
        phis.insert(phi);
    }

    for (auto p : kAllPorts) {
        if (nodes[port_index(p)].empty()) {
            throw SchemaError("missing port " + std::string(port_name(p)) +
                              " in " + path.string());
        }
    }

    const double theta_step = infer_step(thetas, 180.0, "theta");
    const double phi_step = infer_step(phis, 360.0 - *std::next(phis.begin()), "phi");
    AngularGrid grid(theta_step, phi_step);

    std::array<std::vector<ComplexGain>, kNumPorts> samples;
    for (auto p : kAllPorts) {
        const auto &map = nodes[port_index(p)];
        if (map.size() != grid.size()) {
            throw SchemaError("port " + std::string(port_name(p)) + " has " +
                              std::to_string(map.size()) + " nodes, expected " +
                              std::to_string(grid.size()));
        }
        auto &vals = samples[port_index(p)];
        vals.resize(grid.size());
        for (std::size_t i = 0; i < grid.n_theta(); ++i) {
            for (std::size_t j = 0; j < grid.n_phi(); ++j) {
                auto it = map.find({quantized(grid.theta_deg(i)),
                                    quantized(grid.phi_deg(j))});
                if (it == map.end()) {
                    throw SchemaError("port " + std::string(port_name(p)) +
                                      " is missing node (" +
                                      std::to_string(grid.theta_deg(i)) + ", " +
                                      std::to_string(grid.phi_deg(j)) + ")");
                }
                vals[grid.node(i, j)] = it->second;
            }
        }
    }
    return PatternSet::from_grids(grid, std::move(samples));
}

void export_pattern_csv(const PatternSet &set, const std::filesystem::path &path) {
    const AngularGrid grid = set.grid() ? *set.grid() : AngularGrid{};
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write pattern CSV: " + path.string());
    out << "port,theta_deg,phi_deg,re,im\n";
    out.precision(17);
    for (auto p : kAllPorts) {
        for (std::size_t i = 0; i < grid.n_theta(); ++i) {
            for (std::size_t j = 0; j < grid.n_phi(); ++j) {
                const Direction d(grid.theta_deg(i), grid.phi_deg(j));
                const auto v = set.eval(p, d);
                out << port_name(p) << ',' << grid.theta_deg(i) << ','
                    << grid.phi_deg(j) << ',' << v.real() << ',' << v.imag() << '\n';
            }
        }
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

} // namespace dmsim
