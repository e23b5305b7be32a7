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

#include <optional>

#include "qprep/oracle.hpp"
#include "qprep/report.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// Value-conditioned ancilla rotation: with phi decoded from the value
/// register, |0> -> sin(phi)|0> + cos(phi)|1> and |1> -> cos(phi)|0> -
/// sin(phi)|1>. Self-inverse. Meaningful between an oracle query and its
/// uncompute, when the value register holds f_i.
void conditioned_ry(StateVector& state, const OracleTable& table);

/// The four-query amplification pipeline: state preparation through
/// U_r = U_f^-1 R_y U_f H^n, reflection U_s = U_r R_0 U_r^-1 (four queries)
/// and the ancilla flip U_omega = XZX (none). With `extra_zero_amp` set, the
/// pipeline carries an extra ancilla prepared in a|0> + sqrt(1-a^2)|1> and
/// U_omega becomes the reflection about both ancillas being zero.
class BaselinePipeline {
 public:
  explicit BaselinePipeline(const OracleTable& table,
                            std::optional<double> extra_zero_amp = std::nullopt);

  const RegisterLayout& layout() const { return layout_; }
  bool has_extra() const { return extra_zero_amp_.has_value(); }

  /// U_r applied to the all-zeros state; two queries.
  StateVector prepare(QueryLedger& ledger) const;
  void u_omega(StateVector& state) const;
  /// U_r R_0 U_r^-1; four queries, R_0 over all registers.
  void u_s(StateVector& state, QueryLedger& ledger) const;
  /// One step U = U_s U_omega.
  void iterate(StateVector& state, QueryLedger& ledger) const;

  /// Probability that post-selecting all non-index registers at zero succeeds.
  double success_probability(const StateVector& state) const;
  /// The target extended to the pipeline layout (all other registers zero).
  StateVector target_in_layout() const;

 private:
  void apply_ur(StateVector& state, QueryLedger& ledger, bool inverse) const;

  const OracleTable& table_;
  std::optional<double> extra_zero_amp_;
  RegisterLayout layout_;
};

/// Iteration count maximizing sin^2((2k+1)*theta); ties go to the smaller k.
int iterations_auto(double theta);

/// Full run: prepare, iterate, post-select value and ancilla(s) at zero.
/// Vanishing post-selection probability is reported, not thrown.
RunOutput run_baseline(const OracleTable& table,
                       std::optional<int> iterations = std::nullopt);

/// Run loop shared with the exact variant that augments this pipeline.
RunOutput run_baseline_pipeline(const OracleTable& table,
                                const BaselinePipeline& ops, int iterations,
                                std::string method);

}  // namespace qprep
