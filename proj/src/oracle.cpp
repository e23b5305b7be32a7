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

#include "qprep/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qprep/error.hpp"

namespace qprep {

namespace {

std::int64_t value_bound(int value_width) {
  return (std::int64_t{1} << (value_width - 1)) - 1;
}

}  // namespace

OracleTable OracleTable::make(int index_width, int value_width,
                              std::vector<std::int64_t> values) {
  if (index_width < 0 || index_width > 32) {
    throw ConfigError("oracle index width out of range");
  }
  if (value_width < 1 || value_width > 62) {
    throw ConfigError("oracle value width out of range");
  }
  const std::uint64_t n_entries = std::uint64_t{1} << index_width;
  if (values.size() != n_entries) {
    throw ConfigError("oracle table needs " + std::to_string(n_entries) +
                      " entries, got " + std::to_string(values.size()));
  }
  const std::int64_t bound = value_bound(value_width);
  std::int64_t f_max = 0;
  for (std::int64_t v : values) {
    if (v > bound || v < -bound) {
      throw ConfigError("oracle value " + std::to_string(v) +
                        " exceeds the signed " + std::to_string(value_width) +
                        "-bit range [-" + std::to_string(bound) + ", " +
                        std::to_string(bound) + "]");
    }
    f_max = std::max(f_max, std::abs(v));
  }
  if (f_max == 0) {
    throw ConfigError("oracle table is all zero");
  }
  return OracleTable(index_width, value_width, std::move(values), f_max);
}

std::int64_t OracleTable::decode(std::uint64_t bits) const {
  const std::int64_t half = std::int64_t{1} << (m_ - 1);
  const std::int64_t v = static_cast<std::int64_t>(bits);
  return v < half ? v : v - (half << 1);
}

AngleProfile angles(const OracleTable& table) {
  AngleProfile out;
  out.phis.reserve(table.size());
  const double f_max = static_cast<double>(table.max_abs());
  double sum = 0.0;
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    const double phi =
        std::numbers::pi * static_cast<double>(table.value(i)) / (2.0 * f_max);
    out.phis.push_back(phi);
    const double s = std::sin(phi);
    sum += s * s;
  }
  out.theta = std::asin(std::sqrt(sum / static_cast<double>(table.size())));
  return out;
}

namespace {

void add_into_register(StateVector& state, Reg target,
                       const std::function<std::int64_t(std::uint64_t)>& delta,
                       Direction dir) {
  const RegisterLayout& layout = state.layout();
  const int lo = layout.offset(target);
  const int w = layout.width(target);
  const std::uint64_t reg_values = std::uint64_t{1} << w;
  const std::uint64_t reg_mask = layout.mask(target);
  const int idx_lo = layout.offset(Reg::Index);
  const std::uint64_t idx_mask = (std::uint64_t{1} << layout.width(Reg::Index)) - 1;
  const std::int64_t sign = dir == Direction::Forward ? 1 : -1;
  state.permute_basis([&](std::uint64_t basis) {
    const std::uint64_t x = (basis >> idx_lo) & idx_mask;
    const std::uint64_t y = (basis >> lo) & (reg_values - 1);
    const std::uint64_t shifted = static_cast<std::uint64_t>(
        static_cast<std::int64_t>(y) + sign * delta(x));
    return (basis & ~reg_mask) | ((shifted & (reg_values - 1)) << lo);
  });
}

}  // namespace

void apply_uf(StateVector& state, const OracleTable& table, Direction dir,
              Reg target, QueryLedger& ledger) {
  if (state.layout().width(target) != table.value_width()) {
    throw ValidationError(std::string("register ") + reg_name(target) +
                          " has width " +
                          std::to_string(state.layout().width(target)) +
                          ", oracle expects " +
                          std::to_string(table.value_width()));
  }
  if (state.layout().width(Reg::Index) != table.index_width()) {
    throw ValidationError("index register width does not match the oracle");
  }
  add_into_register(
      state, target, [&](std::uint64_t x) { return table.value(x); }, dir);
  ledger.record(dir);
}

std::int64_t scaled_code(double scale, std::int64_t f, int value_width,
                         int target_width) {
  const double raw = scale * static_cast<double>(f) *
                     std::exp2(static_cast<double>(target_width - value_width));
  return std::llround(raw);
}

namespace {

void check_scaled_query(const StateVector& state, const OracleTable& table,
                        double scale, Reg target) {
  if (scale <= 0.0) {
    throw ConfigError("oracle query scale must be positive");
  }
  if (state.layout().width(target) < 1) {
    throw ValidationError(std::string("register ") + reg_name(target) +
                          " is empty; a scaled query needs at least one qubit");
  }
  if (state.layout().width(Reg::Index) != table.index_width()) {
    throw ValidationError("index register width does not match the oracle");
  }
}

}  // namespace

void apply_uf_scaled(StateVector& state, const OracleTable& table, double scale,
                     Direction dir, Reg target, QueryLedger& ledger) {
  check_scaled_query(state, table, scale, target);
  const int w = state.layout().width(target);
  add_into_register(
      state, target,
      [&](std::uint64_t x) {
        return scaled_code(scale, table.value(x), table.value_width(), w);
      },
      dir);
  ledger.record(dir);
}

void apply_uf_scaled_addsub(StateVector& state, const OracleTable& table,
                            double scale, Reg target, int direction_qubit,
                            QueryLedger& ledger) {
  check_scaled_query(state, table, scale, target);
  const RegisterLayout& layout = state.layout();
  if (direction_qubit < 0 || direction_qubit >= layout.total_width() ||
      (layout.mask(target) >> direction_qubit) & 1) {
    throw ValidationError("direction qubit must lie outside the target register");
  }
  const int w = layout.width(target);
  const int lo = layout.offset(target);
  const std::uint64_t reg_mask = layout.mask(target);
  const std::uint64_t reg_values = std::uint64_t{1} << w;
  const int idx_lo = layout.offset(Reg::Index);
  const std::uint64_t idx_mask =
      (std::uint64_t{1} << layout.width(Reg::Index)) - 1;
  const std::uint64_t dir_bit = std::uint64_t{1} << direction_qubit;
  state.permute_basis([&](std::uint64_t basis) {
    const std::uint64_t x = (basis >> idx_lo) & idx_mask;
    const std::int64_t code =
        scaled_code(scale, table.value(x), table.value_width(), w);
    const std::int64_t sign = (basis & dir_bit) ? 1 : -1;
    const std::uint64_t y = (basis >> lo) & (reg_values - 1);
    const std::uint64_t shifted =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(y) + sign * code);
    return (basis & ~reg_mask) | ((shifted & (reg_values - 1)) << lo);
  });
  ledger.record(Direction::Forward);
}

double kickback_scale(const OracleTable& table, double angle_scale) {
  // One query through a Fourier-basis w-bit register kicks the phase
  // 2*pi * scale * f / 2^m; the wanted phase is angle_scale * pi * f / F.
  return angle_scale * std::exp2(static_cast<double>(table.value_width() - 1)) /
         static_cast<double>(table.max_abs());
}

std::vector<double> target_state(const OracleTable& table) {
  return scaled_target_state(table, 1.0);
}

std::vector<double> scaled_target_state(const OracleTable& table, double scale) {
  const AngleProfile prof = angles(table);
  std::vector<double> out(prof.phis.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::sin(scale * prof.phis[i]);
    norm2 += out[i] * out[i];
  }
  if (norm2 <= 0.0) {
    throw ConfigError("target state vanishes at this scale");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& a : out) a *= inv;
  return out;
}

OracleTable arcsin_encode(std::span<const double> alphas, int value_width) {
  if (alphas.empty()) {
    throw ConfigError("cannot encode an empty amplitude vector");
  }
  double a_max = 0.0;
  for (double a : alphas) a_max = std::max(a_max, std::abs(a));
  if (a_max == 0.0) {
    throw ConfigError("cannot encode the zero amplitude vector");
  }
  int index_width = 0;
  while ((std::size_t{1} << index_width) < alphas.size()) ++index_width;
  if ((std::size_t{1} << index_width) != alphas.size()) {
    throw ConfigError("amplitude vector length must be a power of two");
  }
  const double f_code = static_cast<double>(value_bound(value_width));
  std::vector<std::int64_t> values(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    values[i] = std::llround(2.0 * f_code / std::numbers::pi *
                             std::asin(alphas[i] / a_max));
  }
  return OracleTable::make(index_width, value_width, std::move(values));
}

}  // namespace qprep
