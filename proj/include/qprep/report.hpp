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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprep/statevector.hpp"

namespace qprep {

/// State of a run after `iteration` amplification steps, as if stopped there:
/// `queries` includes the cost of extracting the output at that point, so the
/// column follows the closed-form totals (2+4k, 2k+2, k+1).
struct IterationRecord {
  int iteration = 0;
  std::uint64_t queries = 0;
  double p_success = 0.0;
  double overlap_omega = 0.0;
  double fidelity = 0.0;
};

struct RunReport {
  std::string method;
  std::string engine = "dense";
  int index_width = 0;
  int value_width = 0;
  int phase_width = 0;
  std::optional<std::uint64_t> seed;
  int iterations = 0;
  std::vector<IterationRecord> trace;
  std::uint64_t total_queries = 0;
  double final_p_success = 0.0;
  double final_overlap = 0.0;
  double final_fidelity = 0.0;
  bool postselect_failed = false;
  double wall_ms = 0.0;
  /// Method-specific scalars (exact variants report their angles, the solved
  /// scale, and the literal-scale comparison here). Order is deterministic.
  std::vector<std::pair<std::string, double>> extras;

  void set_extra(const std::string& key, double v);
  std::optional<double> extra(const std::string& key) const;
};

/// A finished run: the report plus the post-selected output state when
/// post-selection succeeded (full layout for the baseline pipeline,
/// index-register-only layout for the fast pipelines).
struct RunOutput {
  RunReport report;
  std::optional<StateVector> state;
};

/// CSV with fixed columns: method,n,m,q,seed,iteration,queries_cumulative,
/// p_success,overlap_omega,fidelity,wall_ms. Floats carry 12 significant
/// digits. The seed field is empty for non-random oracles.
std::string csv_header();
std::string csv_row(const RunReport& report, const IterationRecord& rec);
/// Header plus one row per trace record.
std::string report_to_csv(const RunReport& report);
/// The last trace row alone (sweep output).
std::string report_summary_row(const RunReport& report);

std::string report_to_json(const RunReport& report);

}  // namespace qprep
