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
#include <span>
#include <vector>

#include "qprep/statevector.hpp"

namespace qprep {

enum class Direction { Forward, Inverse };

/// Exact tally of oracle applications; the performance metric of every run.
class QueryLedger {
 public:
  void record(Direction d) { (d == Direction::Forward ? forward_ : inverse_)++; }
  std::uint64_t forward_count() const { return forward_; }
  std::uint64_t inverse_count() const { return inverse_; }
  std::uint64_t total() const { return forward_ + inverse_; }

 private:
  std::uint64_t forward_ = 0;
  std::uint64_t inverse_ = 0;
};

/// Integer-valued function table f: [0, 2^n) -> signed m-bit values.
/// Entries satisfy |f_i| <= 2^(m-1)-1 and at least one entry is nonzero.
class OracleTable {
 public:
  static OracleTable make(int index_width, int value_width,
                          std::vector<std::int64_t> values);

  int index_width() const { return n_; }
  int value_width() const { return m_; }
  std::uint64_t size() const { return values_.size(); }  // N = 2^n
  std::int64_t value(std::uint64_t i) const { return values_[i]; }
  std::span<const std::int64_t> values() const { return values_; }
  /// F = max_i |f_i| (always > 0).
  std::int64_t max_abs() const { return f_max_; }

  /// Two's-complement decode of an m-bit register content.
  std::int64_t decode(std::uint64_t bits) const;

  bool operator==(const OracleTable&) const = default;

 private:
  OracleTable(int n, int m, std::vector<std::int64_t> values, std::int64_t f_max)
      : n_(n), m_(m), values_(std::move(values)), f_max_(f_max) {}

  int n_;
  int m_;
  std::vector<std::int64_t> values_;
  std::int64_t f_max_;
};

/// Rotation angles phi_i = pi*f_i / (2F) and the amplification angle
/// theta = arcsin(sqrt(sum_i sin^2(phi_i) / N)).
struct AngleProfile {
  std::vector<double> phis;
  double theta;
};

AngleProfile angles(const OracleTable& table);

/// U_f |x>|y> = |x>|y + f(x) mod 2^w> on the named target register (forward),
/// or subtraction (inverse). The target register width must equal the table's
/// value width. Records exactly one query.
void apply_uf(StateVector& state, const OracleTable& table, Direction dir,
              Reg target, QueryLedger& ledger);

/// Fixed-point code added by one scaled oracle query into a w-bit register:
/// round(scale * f * 2^(w - m)) reduced mod 2^w.
std::int64_t scaled_code(double scale, std::int64_t f, int value_width,
                         int target_width);

/// Scaled oracle query: adds scaled_code(scale, f_i, m, w) into the named
/// target register (the phase register in the kickback pipeline). One query.
void apply_uf_scaled(StateVector& state, const OracleTable& table, double scale,
                     Direction dir, Reg target, QueryLedger& ledger);

/// Scaled query whose direction is selected per branch by a qubit: the code
/// is added where `direction_qubit` is one and subtracted where it is zero.
/// Still a single oracle query.
void apply_uf_scaled_addsub(StateVector& state, const OracleTable& table,
                            double scale, Reg target, int direction_qubit,
                            QueryLedger& ledger);

/// Scale to hand apply_uf_scaled so one query through a Fourier-basis
/// register kicks the phase exp(+/- i * angle_scale * 2*phi_i) per branch,
/// quantized to the register grid with error at most pi/2^q.
double kickback_scale(const OracleTable& table, double angle_scale);

/// The analog-encoded target: amplitudes proportional to sin(phi_i),
/// L2-normalized, carrying the sign of f_i.
std::vector<double> target_state(const OracleTable& table);

/// Target with amplitudes proportional to sin(scale * phi_i) instead.
std::vector<double> scaled_target_state(const OracleTable& table, double scale);

/// Builds a table whose target_state reproduces `alphas` (up to quantization):
/// f_i = round((2*F_code/pi) * arcsin(alpha_i / max|alpha|)) with
/// F_code = 2^(m-1)-1.
OracleTable arcsin_encode(std::span<const double> alphas, int value_width);

}  // namespace qprep
