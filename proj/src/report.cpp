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

#include "qprep/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace qprep {

namespace {

/// 12 significant digits, locale-independent.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void RunReport::set_extra(const std::string& key, double v) {
  for (auto& [k, old] : extras) {
    if (k == key) {
      old = v;
      return;
    }
  }
  extras.emplace_back(key, v);
}

std::optional<double> RunReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string csv_header() {
  return "method,n,m,q,seed,iteration,queries_cumulative,p_success,"
         "overlap_omega,fidelity,wall_ms\n";
}

std::string csv_row(const RunReport& report, const IterationRecord& rec) {
  std::string row;
  row += report.method;
  row += ',' + std::to_string(report.index_width);
  row += ',' + std::to_string(report.value_width);
  row += ',' + std::to_string(report.phase_width);
  row += ',';
  if (report.seed) row += std::to_string(*report.seed);
  row += ',' + std::to_string(rec.iteration);
  row += ',' + std::to_string(rec.queries);
  row += ',' + fmt(rec.p_success);
  row += ',' + fmt(rec.overlap_omega);
  row += ',' + fmt(rec.fidelity);
  row += ',' + fmt(report.wall_ms);
  row += '\n';
  return row;
}

std::string report_to_csv(const RunReport& report) {
  std::string out = csv_header();
  for (const IterationRecord& rec : report.trace) out += csv_row(report, rec);
  return out;
}

std::string report_summary_row(const RunReport& report) {
  if (report.trace.empty()) return {};
  return csv_row(report, report.trace.back());
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["engine"] = report.engine;
  j["n"] = report.index_width;
  j["m"] = report.value_width;
  j["q"] = report.phase_width;
  if (report.seed) {
    j["seed"] = *report.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["iterations"] = report.iterations;
  j["postselect_failed"] = report.postselect_failed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const IterationRecord& rec : report.trace) {
    nlohmann::ordered_json row;
    row["iteration"] = rec.iteration;
    row["queries_cumulative"] = rec.queries;
    row["p_success"] = rec.p_success;
    row["overlap_omega"] = rec.overlap_omega;
    row["fidelity"] = rec.fidelity;
    rows.push_back(std::move(row));
  }
  j["trace"] = std::move(rows);
  nlohmann::ordered_json summary;
  summary["total_queries"] = report.total_queries;
  summary["p_success"] = report.final_p_success;
  summary["overlap_omega"] = report.final_overlap;
  summary["fidelity"] = report.final_fidelity;
  summary["wall_ms"] = report.wall_ms;
  j["summary"] = std::move(summary);
  if (!report.extras.empty()) {
    nlohmann::ordered_json extras;
    for (const auto& [k, v] : report.extras) extras[k] = v;
    j["extras"] = std::move(extras);
  }
  return j.dump(2) + "\n";
}

}  // namespace qprep
