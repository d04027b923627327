// Copyright 2026 The qsw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsw/graphs.hpp"

namespace qsw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// @brief Parses "start:step:stop" (inclusive of stop within half a step) or
/// a comma-separated list. Throws std::invalid_argument on malformed or empty
/// input.
std::vector<double> parse_time_grid(const std::string& spec);

/// @brief Graph spec mini-language. Undirected: path:N, complete:N, star:N,
/// complete-plus-leaf:N. Directed: dpath:N, circulant2:N, moral-triangle,
/// premature, period, oriented-k12. Any: file:<path> with graph JSON.
AnyGraph parse_graph_spec(const std::string& spec);

/// @brief Entry point shared by the executable and the tests. Returns the
/// process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace qsw::cli
