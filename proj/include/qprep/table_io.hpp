// Copyright 2026 The qprep Authors
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

#include <cstdint>
#include <string>

#include "qprep/oracle.hpp"

namespace qprep {

/// Loads an oracle table. Two formats are accepted, sniffed from content:
/// a JSON object {"n": int, "m": int, "values": [int, ...]}, or plain text
/// with one signed decimal integer per line (the line count must be a power
/// of two). For the text form the value width is `value_width_hint`, or the
/// smallest width that fits when the hint is zero; for the JSON form a
/// nonzero hint must match the file.
OracleTable load_oracle_file(const std::string& path, int value_width_hint = 0);

OracleTable parse_oracle_json(const std::string& text, int value_width_hint = 0);
OracleTable parse_oracle_text(const std::string& text, int value_width_hint = 0);

/// Uniform random values in [-(2^(m-1)-1), 2^(m-1)-1], redrawn while all
/// zero. Deterministic per seed, independent of the standard library's
/// distribution implementations.
OracleTable random_oracle(int index_width, int value_width, std::uint64_t seed);

}  // namespace qprep
