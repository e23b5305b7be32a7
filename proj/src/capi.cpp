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

#include "qprep.h"

#include <chrono>
#include <cstring>
#include <optional>
#include <string>

#include "qprep/baseline.hpp"
#include "qprep/error.hpp"
#include "qprep/fastprep.hpp"
#include "qprep/oracle.hpp"
#include "qprep/report.hpp"
#include "qprep/structsim.hpp"
#include "qprep/table_io.hpp"

struct qprep_table {
  qprep::OracleTable impl;
};

struct qprep_report {
  qprep::RunReport impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
qprep_status guarded(Fn&& fn) {
  try {
    fn();
    return QPREP_OK;
  } catch (const qprep::ConfigError& e) {
    set_error(e.what());
    return QPREP_ERR_INVALID_ARGUMENT;
  } catch (const qprep::PostselectError& e) {
    set_error(e.what());
    return QPREP_ERR_POSTSELECT;
  } catch (const qprep::IoError& e) {
    set_error(e.what());
    return QPREP_ERR_IO;
  } catch (const qprep::ValidationError& e) {
    set_error(e.what());
    return QPREP_ERR_VALIDATION;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QPREP_ERR_INTERNAL;
  }
}

qprep_status require(bool ok, const char* message) {
  if (ok) return QPREP_OK;
  set_error(message);
  return QPREP_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string string_or(const char* s, const char* fallback) {
  return s && *s ? s : fallback;
}

}  // namespace

extern "C" {

const char* qprep_last_error(void) { return g_last_error.c_str(); }

qprep_status qprep_table_create(int n, int m, const int64_t* values,
                                size_t count, qprep_table** out) {
  if (require(values && out, "values and out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<std::int64_t> v(values, values + count);
    *out = new qprep_table{qprep::OracleTable::make(n, m, std::move(v))};
  });
}

qprep_status qprep_table_load(const char* path, int value_width_hint,
                              qprep_table** out) {
  if (require(path && out, "path and out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new qprep_table{qprep::load_oracle_file(path, value_width_hint)};
  });
}

qprep_status qprep_table_random(int n, int m, uint64_t seed,
                                qprep_table** out) {
  if (require(out != nullptr, "out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new qprep_table{qprep::random_oracle(n, m, seed)};
  });
}

void qprep_table_free(qprep_table* table) { delete table; }

int qprep_table_n(const qprep_table* table) { return table->impl.index_width(); }
int qprep_table_m(const qprep_table* table) { return table->impl.value_width(); }

int64_t qprep_table_value(const qprep_table* table, uint64_t i) {
  return i < table->impl.size() ? table->impl.value(i) : 0;
}

double qprep_table_theta(const qprep_table* table) {
  return qprep::angles(table->impl).theta;
}

int qprep_table_equal(const qprep_table* a, const qprep_table* b) {
  return a && b && a->impl == b->impl ? 1 : 0;
}

qprep_status qprep_run(const qprep_table* table,
                       const qprep_run_options* options, qprep_report** out) {
  if (require(table && options && out, "table, options and out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const std::string method = string_or(options->method, "");
    const std::string exactness = string_or(options->exactness, "none");
    const std::string engine = string_or(options->engine, "dense");
    const std::optional<int> iterations =
        options->iterations < 0 ? std::nullopt
                                : std::optional<int>(options->iterations);

    qprep::Route route = qprep::Route::Rz;
    bool is_fast = true;
    if (method == "baseline") {
      is_fast = false;
    } else if (method == "fast-rz") {
      route = qprep::Route::Rz;
    } else if (method == "fast-kickback") {
      route = qprep::Route::Kickback;
    } else {
      throw qprep::ConfigError("unknown method '" + method +
                               "' (expected baseline, fast-rz or fast-kickback)");
    }
    if (exactness != "none" && exactness != "prakash" && exactness != "scaled") {
      throw qprep::ConfigError("unknown exactness '" + exactness +
                               "' (expected none, prakash or scaled)");
    }
    if (engine != "dense" && engine != "structured") {
      throw qprep::ConfigError("unknown engine '" + engine +
                               "' (expected dense or structured)");
    }
    if (exactness == "prakash" && is_fast) {
      throw qprep::ConfigError(
          "exactness=prakash runs on the baseline pipeline; use method=baseline");
    }
    if (exactness == "scaled" && !is_fast) {
      throw qprep::ConfigError(
          "exactness=scaled runs on the fast pipelines; use fast-rz or "
          "fast-kickback");
    }
    if (exactness != "none" && iterations) {
      throw qprep::ConfigError(
          "exact variants choose their own iteration count; leave iterations "
          "at auto");
    }
    if (engine == "structured" && !is_fast) {
      throw qprep::ConfigError(
          "the structured engine covers fast-rz and fast-kickback only");
    }

    const auto start = std::chrono::steady_clock::now();
    qprep::RunOutput result;
    if (engine == "structured") {
      qprep::FastMethod fm{route,
                           exactness == "scaled" ? qprep::Exactness::ScaledAngle
                                                 : qprep::Exactness::None,
                           options->phase_width};
      result = qprep::reduced_run(table->impl, fm, iterations);
    } else if (!is_fast) {
      result = exactness == "prakash"
                   ? qprep::run_exact_prakash(table->impl)
                   : qprep::run_baseline(table->impl, iterations);
    } else if (exactness == "scaled") {
      result = qprep::run_exact_scaled(table->impl, route, options->phase_width);
    } else {
      qprep::FastMethod fm{route, qprep::Exactness::None, options->phase_width};
      result = qprep::run_fast(table->impl, fm, iterations);
    }
    if (options->collect_timing) {
      const auto stop = std::chrono::steady_clock::now();
      result.report.wall_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
    }
    *out = new qprep_report{std::move(result.report)};
  });
}

void qprep_report_free(qprep_report* report) { delete report; }

const char* qprep_report_method(const qprep_report* report) {
  return report->impl.method.c_str();
}

int qprep_report_phase_width(const qprep_report* report) {
  return report->impl.phase_width;
}

int qprep_report_iterations(const qprep_report* report) {
  return report->impl.iterations;
}

int qprep_report_rows(const qprep_report* report) {
  return static_cast<int>(report->impl.trace.size());
}

qprep_status qprep_report_row(const qprep_report* report, int row,
                              qprep_iteration* out) {
  if (require(out != nullptr, "out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  if (row < 0 || row >= qprep_report_rows(report)) {
    set_error("row index out of range");
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  const qprep::IterationRecord& rec = report->impl.trace[row];
  out->iteration = rec.iteration;
  out->queries_cumulative = rec.queries;
  out->p_success = rec.p_success;
  out->overlap_omega = rec.overlap_omega;
  out->fidelity = rec.fidelity;
  return QPREP_OK;
}

uint64_t qprep_report_total_queries(const qprep_report* report) {
  return report->impl.total_queries;
}

double qprep_report_p_success(const qprep_report* report) {
  return report->impl.final_p_success;
}

double qprep_report_fidelity(const qprep_report* report) {
  return report->impl.final_fidelity;
}

int qprep_report_postselect_failed(const qprep_report* report) {
  return report->impl.postselect_failed ? 1 : 0;
}

double qprep_report_wall_ms(const qprep_report* report) {
  return report->impl.wall_ms;
}

qprep_status qprep_report_scalar(const qprep_report* report, const char* key,
                                 double* out) {
  if (require(key && out, "key and out must not be null")) {
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  const std::optional<double> v = report->impl.extra(key);
  if (!v) {
    set_error(std::string("report has no scalar '") + key + "'");
    return QPREP_ERR_INVALID_ARGUMENT;
  }
  *out = *v;
  return QPREP_OK;
}

void qprep_report_set_seed(qprep_report* report, uint64_t seed) {
  report->impl.seed = seed;
}

char* qprep_csv_header(void) { return dup_string(qprep::csv_header()); }

char* qprep_report_csv(const qprep_report* report) {
  return dup_string(qprep::report_to_csv(report->impl));
}

char* qprep_report_csv_summary(const qprep_report* report) {
  return dup_string(qprep::report_summary_row(report->impl));
}

char* qprep_report_json(const qprep_report* report) {
  return dup_string(qprep::report_to_json(report->impl));
}

void qprep_string_free(char* s) { delete[] s; }

}  // extern "C"
