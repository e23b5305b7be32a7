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

#include "qprep/table_io.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "qprep/error.hpp"

namespace qprep {

namespace {

int minimal_value_width(const std::vector<std::int64_t>& values) {
  std::int64_t f_max = 0;
  for (std::int64_t v : values) f_max = std::max(f_max, std::abs(v));
  int m = 2;
  while (((std::int64_t{1} << (m - 1)) - 1) < f_max) ++m;
  return m;
}

int index_width_for(std::size_t count) {
  int n = 0;
  while ((std::size_t{1} << n) < count) ++n;
  if ((std::size_t{1} << n) != count) {
    throw ConfigError("oracle value count " + std::to_string(count) +
                      " is not a power of two");
  }
  return n;
}

}  // namespace

OracleTable parse_oracle_json(const std::string& text, int value_width_hint) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("oracle file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("m") ||
      !j.contains("values") || !j["values"].is_array()) {
    throw IoError("oracle JSON needs the fields n, m and values");
  }
  const int n = j["n"].get<int>();
  const int m = j["m"].get<int>();
  if (value_width_hint != 0 && value_width_hint != m) {
    throw ConfigError("configured value width " +
                      std::to_string(value_width_hint) +
                      " conflicts with the file's m = " + std::to_string(m));
  }
  std::vector<std::int64_t> values;
  values.reserve(j["values"].size());
  for (const auto& v : j["values"]) {
    if (!v.is_number_integer()) {
      throw IoError("oracle values must be integers");
    }
    values.push_back(v.get<std::int64_t>());
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw ConfigError("oracle JSON declares n = " + std::to_string(n) +
                      " but carries " + std::to_string(values.size()) +
                      " values");
  }
  return OracleTable::make(n, m, std::move(values));
}

OracleTable parse_oracle_text(const std::string& text, int value_width_hint) {
  std::vector<std::int64_t> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(a, b - a + 1);
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw IoError("oracle text line is not a signed integer: " + token);
    }
  }
  if (values.empty()) throw IoError("oracle text file holds no values");
  const int n = index_width_for(values.size());
  const int m =
      value_width_hint != 0 ? value_width_hint : minimal_value_width(values);
  return OracleTable::make(n, m, std::move(values));
}

OracleTable load_oracle_file(const std::string& path, int value_width_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open oracle file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_oracle_json(text, value_width_hint)
                     : parse_oracle_text(text, value_width_hint);
  }
  throw IoError("oracle file is empty: " + path);
}

OracleTable random_oracle(int index_width, int value_width,
                          std::uint64_t seed) {
  if (index_width < 1) throw ConfigError("random oracle needs n >= 1");
  if (value_width < 2) throw ConfigError("random oracle needs m >= 2");
  const std::int64_t bound = (std::int64_t{1} << (value_width - 1)) - 1;
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
  // Rejection sampling keeps the draw uniform and independent of the
  // standard library's distribution internals.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::mt19937_64 rng(seed);
  const auto draw = [&] {
    std::uint64_t u;
    do {
      u = rng();
    } while (u >= limit);
    return static_cast<std::int64_t>(u % span) - bound;
  };
  std::vector<std::int64_t> values(std::size_t{1} << index_width);
  while (true) {
    bool all_zero = true;
    for (std::int64_t& v : values) {
      v = draw();
      all_zero &= v == 0;
    }
    if (!all_zero) break;
  }
  return OracleTable::make(index_width, value_width, std::move(values));
}

}  // namespace qprep
