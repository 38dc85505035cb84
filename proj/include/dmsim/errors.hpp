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

#include <stdexcept>
#include <string>

namespace dmsim {

/// Bad user-facing configuration (CLI options, config files, parameter
/// ranges). Maps to exit code 2 in the command-line tool.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed data file: wrong header, missing rows, inconsistent grid,
/// non-finite values. The message names the offending row where known.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A port's pattern magnitude falls below the null threshold at the
/// requested angle, so its phase is meaningless for alignment.
class NullPortError : public std::runtime_error {
  public:
    NullPortError(std::string port, const std::string &msg)
        : std::runtime_error(msg), port_(std::move(port)) {}
    const std::string &port() const { return port_; }

  private:
    std::string port_;
};

/// Fewer than two ports carry signal toward the intended receiver; the
/// transmission would degenerate to a single-port broadcast.
class InsecureConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A pattern is identically zero on the evaluation grid.
class DegeneratePatternError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bit stream cannot be framed into symbols (odd bit count).
class FramingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An aggregation step found none of the inputs it needs.
class MissingInputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace dmsim
