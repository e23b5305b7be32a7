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

// Experiment runner over the qprep C API: single runs, method comparisons
// and deterministic sweeps with CSV/JSON reports.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qprep.h"

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableDeleter {
  void operator()(qprep_table* t) const { qprep_table_free(t); }
};
using TablePtr = std::unique_ptr<qprep_table, TableDeleter>;

struct ReportDeleter {
  void operator()(qprep_report* r) const { qprep_report_free(r); }
};
using ReportPtr = std::unique_ptr<qprep_report, ReportDeleter>;

struct StringDeleter {
  void operator()(char* s) const { qprep_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  StringPtr owned(s);
  return std::string(owned.get());
}

void check(qprep_status status, const std::string& what) {
  if (status != QPREP_OK) {
    throw CliError(what + ": " + qprep_last_error());
  }
}

// ---- configuration -------------------------------------------------------

struct OracleSpec {
  enum class Kind { File, Inline, Random };
  Kind kind = Kind::Random;
  std::string file;
  std::vector<std::int64_t> values;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct RunConfig {
  std::string method = "baseline";
  std::string exactness = "none";
  std::string engine = "dense";
  int n = 0;
  int m = 0;
  int q = 0;
  OracleSpec oracle;
  bool has_oracle = false;
  int iterations = -1;  // auto
  bool timing = false;
  std::string output;
};

struct Overrides {
  std::optional<std::string> engine;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool timing = false;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CliError("config file " + path + " is not valid JSON: " + e.what());
  }
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == key;
    if (!ok) throw CliError("unknown config field '" + key + "' in " + where);
  }
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    throw CliError("config field '" + field + "' must be an integer");
  }
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) {
    throw CliError("config field '" + field + "' must be a string");
  }
  return j.get<std::string>();
}

OracleSpec parse_oracle_source(const json& j) {
  if (!j.is_object()) {
    throw CliError("config field 'oracle_source' must be an object");
  }
  reject_unknown_keys(j, {"file", "values", "random"}, "oracle_source");
  OracleSpec spec;
  const int forms = static_cast<int>(j.contains("file")) +
                    static_cast<int>(j.contains("values")) +
                    static_cast<int>(j.contains("random"));
  if (forms != 1) {
    throw CliError(
        "config field 'oracle_source' needs exactly one of file, values or "
        "random");
  }
  if (j.contains("file")) {
    spec.kind = OracleSpec::Kind::File;
    spec.file = get_string(j["file"], "oracle_source.file");
  } else if (j.contains("values")) {
    spec.kind = OracleSpec::Kind::Inline;
    if (!j["values"].is_array()) {
      throw CliError("config field 'oracle_source.values' must be an array");
    }
    for (const auto& v : j["values"]) {
      if (!v.is_number_integer()) {
        throw CliError("config field 'oracle_source.values' must hold integers");
      }
      spec.values.push_back(v.get<std::int64_t>());
    }
  } else {
    spec.kind = OracleSpec::Kind::Random;
    const json& r = j["random"];
    if (!r.is_object()) {
      throw CliError("config field 'oracle_source.random' must be an object");
    }
    reject_unknown_keys(r, {"seed"}, "oracle_source.random");
    if (r.contains("seed")) {
      if (!r["seed"].is_number_unsigned() && !r["seed"].is_number_integer()) {
        throw CliError("config field 'oracle_source.random.seed' must be an integer");
      }
      spec.seed = r["seed"].get<std::uint64_t>();
      spec.has_seed = true;
    }
  }
  return spec;
}

void apply_run_fields(RunConfig& cfg, const json& j) {
  if (j.contains("method")) cfg.method = get_string(j["method"], "method");
  if (j.contains("exactness")) cfg.exactness = get_string(j["exactness"], "exactness");
  if (j.contains("engine")) cfg.engine = get_string(j["engine"], "engine");
  if (j.contains("n")) cfg.n = get_int(j["n"], "n");
  if (j.contains("m")) cfg.m = get_int(j["m"], "m");
  if (j.contains("q")) cfg.q = get_int(j["q"], "q");
  if (j.contains("oracle_source")) {
    cfg.oracle = parse_oracle_source(j["oracle_source"]);
    cfg.has_oracle = true;
  }
  if (j.contains("iterations")) {
    const json& it = j["iterations"];
    if (it.is_string() && it.get<std::string>() == "auto") {
      cfg.iterations = -1;
    } else if (it.is_number_integer() && it.get<int>() >= 0) {
      cfg.iterations = it.get<int>();
    } else {
      throw CliError("config field 'iterations' must be \"auto\" or a non-negative integer");
    }
  }
  if (j.contains("timing")) {
    if (!j["timing"].is_boolean()) {
      throw CliError("config field 'timing' must be a boolean");
    }
    cfg.timing = j["timing"].get<bool>();
  }
  if (j.contains("output")) cfg.output = get_string(j["output"], "output");
}

const std::vector<std::string> kRunKeys = {
    "method", "exactness", "engine", "n", "m", "q",
    "oracle_source", "iterations", "timing", "output"};

RunConfig parse_run_config(const json& j, const std::string& where) {
  if (!j.is_object()) throw CliError(where + " must be a JSON object");
  reject_unknown_keys(j, kRunKeys, where);
  RunConfig cfg;
  apply_run_fields(cfg, j);
  if (!cfg.has_oracle) {
    throw CliError("config field 'oracle_source' is required in " + where);
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.engine) cfg.engine = *ov.engine;
  if (ov.out) cfg.output = *ov.out;
  if (ov.timing) cfg.timing = true;
  if (ov.seed) {
    if (cfg.oracle.kind != OracleSpec::Kind::Random) {
      throw CliError("--seed applies only to a random oracle_source");
    }
    cfg.oracle.seed = *ov.seed;
    cfg.oracle.has_seed = true;
  }
}

// ---- execution ------------------------------------------------------------

TablePtr resolve_table(const RunConfig& cfg) {
  qprep_table* t = nullptr;
  switch (cfg.oracle.kind) {
    case OracleSpec::Kind::File:
      check(qprep_table_load(cfg.oracle.file.c_str(), cfg.m, &t),
            "loading oracle file " + cfg.oracle.file);
      break;
    case OracleSpec::Kind::Inline: {
      if (cfg.m <= 0) {
        throw CliError("config field 'm' is required with inline oracle values");
      }
      std::size_t n = 0;
      while ((std::size_t{1} << n) < cfg.oracle.values.size()) ++n;
      if ((std::size_t{1} << n) != cfg.oracle.values.size()) {
        throw CliError("oracle_source.values length must be a power of two");
      }
      if (cfg.n != 0 && cfg.n != static_cast<int>(n)) {
        throw CliError("config field 'n' conflicts with the number of inline values");
      }
      check(qprep_table_create(static_cast<int>(n), cfg.m,
                               cfg.oracle.values.data(),
                               cfg.oracle.values.size(), &t),
            "building oracle table");
      break;
    }
    case OracleSpec::Kind::Random:
      if (cfg.n < 1 || cfg.m < 2) {
        throw CliError("config fields 'n' (>= 1) and 'm' (>= 2) are required "
                       "with a random oracle_source");
      }
      check(qprep_table_random(cfg.n, cfg.m, cfg.oracle.seed, &t),
            "generating random oracle");
      break;
  }
  return TablePtr(t);
}

ReportPtr run_single_engine(const qprep_table* table, const RunConfig& cfg,
                            const std::string& engine) {
  qprep_run_options options{};
  options.method = cfg.method.c_str();
  options.exactness = cfg.exactness.c_str();
  options.engine = engine.c_str();
  options.iterations = cfg.iterations;
  options.phase_width = cfg.q;
  options.collect_timing = cfg.timing ? 1 : 0;
  qprep_report* report = nullptr;
  check(qprep_run(table, &options, &report), "run failed");
  ReportPtr out(report);
  if (cfg.oracle.kind == OracleSpec::Kind::Random) {
    qprep_report_set_seed(out.get(), cfg.oracle.seed);
  }
  return out;
}

void require_engines_agree(const qprep_report* dense,
                           const qprep_report* structured) {
  constexpr double kTol = 1e-9;
  const int rows = qprep_report_rows(dense);
  if (rows != qprep_report_rows(structured)) {
    throw CliError("engines disagree on the number of trace rows");
  }
  for (int r = 0; r < rows; ++r) {
    qprep_iteration a{}, b{};
    check(qprep_report_row(dense, r, &a), "reading dense row");
    check(qprep_report_row(structured, r, &b), "reading structured row");
    const auto mismatch = [&](const char* column, double lhs, double rhs) {
      if (std::abs(lhs - rhs) > kTol) {
        throw CliError("engines disagree at iteration " + std::to_string(r) +
                       ", column " + column + ": " + std::to_string(lhs) +
                       " vs " + std::to_string(rhs));
      }
    };
    if (a.queries_cumulative != b.queries_cumulative) {
      throw CliError("engines disagree on cumulative queries at iteration " +
                     std::to_string(r));
    }
    mismatch("p_success", a.p_success, b.p_success);
    mismatch("overlap_omega", a.overlap_omega, b.overlap_omega);
    mismatch("fidelity", a.fidelity, b.fidelity);
  }
}

/// Runs per the config; with engine=both validates the structured engine
/// against the dense one and reports the dense run.
ReportPtr run_config(const qprep_table* table, const RunConfig& cfg) {
  if (cfg.engine == "both") {
    ReportPtr dense = run_single_engine(table, cfg, "dense");
    ReportPtr structured = run_single_engine(table, cfg, "structured");
    require_engines_agree(dense.get(), structured.get());
    return dense;
  }
  return run_single_engine(table, cfg, cfg.engine);
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot write " + path);
  out << content;
}

void print_summary(const qprep_report* report, double elapsed_ms) {
  std::ostringstream line;
  line << qprep_report_method(report)
       << ": iterations=" << qprep_report_iterations(report)
       << " queries=" << qprep_report_total_queries(report)
       << " p_success=" << qprep_report_p_success(report)
       << " fidelity=" << qprep_report_fidelity(report);
  if (qprep_report_postselect_failed(report)) line << " POSTSELECT-FAILED";
  line << " (" << elapsed_ms << " ms)";
  std::cerr << line.str() << "\n";
}

// ---- subcommands ----------------------------------------------------------

int cmd_run(const std::string& config_path, const Overrides& ov) {
  RunConfig cfg = parse_run_config(load_json_file(config_path), "run config");
  apply_overrides(cfg, ov);
  TablePtr table = resolve_table(cfg);

  const auto start = std::chrono::steady_clock::now();
  ReportPtr report = run_config(table.get(), cfg);
  const double elapsed =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();

  const std::string csv = take(qprep_report_csv(report.get()));
  const std::string js = take(qprep_report_json(report.get()));
  if (cfg.output.empty()) {
    std::cout << csv;
  } else {
    write_file(cfg.output + ".csv", csv);
    write_file(cfg.output + ".json", js);
  }
  print_summary(report.get(), elapsed);
  return 0;
}

int cmd_compare(const std::string& config_path, const Overrides& ov) {
  const json j = load_json_file(config_path);
  if (!j.is_object()) throw CliError("compare config must be a JSON object");
  reject_unknown_keys(j,
                      {"configs", "method", "exactness", "engine", "n", "m",
                       "q", "oracle_source", "iterations", "timing", "output"},
                      "compare config");
  if (!j.contains("configs") || !j["configs"].is_array() ||
      j["configs"].empty()) {
    throw CliError("config field 'configs' must be a non-empty array");
  }

  RunConfig shared;
  apply_run_fields(shared, j);
  std::vector<RunConfig> configs;
  for (const auto& entry : j["configs"]) {
    if (!entry.is_object()) throw CliError("configs entries must be objects");
    reject_unknown_keys(entry, kRunKeys, "configs entry");
    RunConfig cfg = shared;
    apply_run_fields(cfg, entry);
    if (!cfg.has_oracle) {
      throw CliError("each compare entry needs an oracle_source "
                     "(shared or per entry)");
    }
    apply_overrides(cfg, ov);
    configs.push_back(std::move(cfg));
  }

  std::vector<TablePtr> tables;
  for (const RunConfig& cfg : configs) tables.push_back(resolve_table(cfg));
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (!qprep_table_equal(tables[0].get(), tables[i].get())) {
      throw CliError("compare entries resolve to different oracles");
    }
  }

  struct Row {
    std::string method;
    int q = 0;
    int iterations = 0;
    std::uint64_t total = 0;
    std::optional<std::uint64_t> per_iter;
    double p_success = 0.0;
    double fidelity = 0.0;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    ReportPtr report = run_config(tables[i].get(), configs[i]);
    const double elapsed =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    print_summary(report.get(), elapsed);
    Row row;
    row.method = qprep_report_method(report.get());
    row.q = qprep_report_phase_width(report.get());
    row.iterations = qprep_report_iterations(report.get());
    row.total = qprep_report_total_queries(report.get());
    row.p_success = qprep_report_p_success(report.get());
    row.fidelity = qprep_report_fidelity(report.get());
    if (row.iterations >= 1) {
      qprep_iteration first{}, last{};
      check(qprep_report_row(report.get(), 0, &first), "reading row");
      check(qprep_report_row(report.get(), row.iterations, &last), "reading row");
      row.per_iter = (last.queries_cumulative - first.queries_cumulative) /
                     static_cast<std::uint64_t>(row.iterations);
    }
    rows.push_back(std::move(row));
  }

  std::optional<Row> reference;
  for (const Row& r : rows) {
    if (r.method == "baseline") {
      reference = r;
      break;
    }
  }

  const auto fmt12 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  std::string csv =
      "method,n,m,q,iterations,queries_total,queries_per_iteration,"
      "p_success,fidelity,total_ratio_vs_baseline,"
      "per_iteration_ratio_vs_baseline\n";
  const int n = qprep_table_n(tables[0].get());
  const int m = qprep_table_m(tables[0].get());
  for (const Row& r : rows) {
    csv += r.method + ',' + std::to_string(n) + ',' + std::to_string(m) + ',' +
           std::to_string(r.q) + ',' + std::to_string(r.iterations) + ',' +
           std::to_string(r.total) + ',';
    if (r.per_iter) csv += std::to_string(*r.per_iter);
    csv += ',' + fmt12(r.p_success) + ',' + fmt12(r.fidelity) + ',';
    if (reference && r.total > 0) {
      csv += fmt12(static_cast<double>(reference->total) /
                   static_cast<double>(r.total));
    }
    csv += ',';
    if (reference && reference->per_iter && r.per_iter) {
      csv += fmt12(static_cast<double>(*reference->per_iter) /
                   static_cast<double>(*r.per_iter));
    }
    csv += '\n';
  }

  std::string output = shared.output;
  if (ov.out) output = *ov.out;
  if (output.empty()) {
    std::cout << csv;
  } else {
    write_file(output + ".csv", csv);
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const Overrides& ov) {
  const json j = load_json_file(config_path);
  if (!j.is_object()) throw CliError("sweep config must be a JSON object");
  reject_unknown_keys(j, {"base", "sweep", "output", "workers"}, "sweep config");
  if (!j.contains("base")) throw CliError("config field 'base' is required");
  RunConfig base = parse_run_config(j["base"], "sweep base");
  apply_overrides(base, ov);

  enum class Axis { None, Iterations, IndexWidth };
  Axis axis = Axis::None;
  std::vector<int> axis_values;
  std::vector<std::uint64_t> seeds;
  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    if (!sw.is_object()) throw CliError("config field 'sweep' must be an object");
    reject_unknown_keys(sw, {"iterations", "n", "seeds"}, "sweep");
    if (sw.contains("iterations") && sw.contains("n")) {
      throw CliError("sweep takes either 'iterations' or 'n', not both");
    }
    const auto parse_axis = [](const json& a, const std::string& field) {
      std::vector<int> values;
      if (a.is_array()) {
        for (const auto& v : a) values.push_back(get_int(v, field));
      } else if (a.is_object() && a.contains("from") && a.contains("to")) {
        const int from = get_int(a["from"], field + ".from");
        const int to = get_int(a["to"], field + ".to");
        for (int v = from; v <= to; ++v) values.push_back(v);
      } else {
        throw CliError("config field '" + field +
                       "' must be an array or {from, to}");
      }
      std::sort(values.begin(), values.end());
      return values;
    };
    if (sw.contains("iterations")) {
      axis = Axis::Iterations;
      axis_values = parse_axis(sw["iterations"], "sweep.iterations");
    } else if (sw.contains("n")) {
      axis = Axis::IndexWidth;
      axis_values = parse_axis(sw["n"], "sweep.n");
    }
    if (sw.contains("seeds")) {
      if (!sw["seeds"].is_array()) {
        throw CliError("config field 'sweep.seeds' must be an array");
      }
      for (const auto& s : sw["seeds"]) {
        if (!s.is_number_integer() && !s.is_number_unsigned()) {
          throw CliError("config field 'sweep.seeds' must hold integers");
        }
        seeds.push_back(s.get<std::uint64_t>());
      }
      std::sort(seeds.begin(), seeds.end());
    }
  }
  if ((axis == Axis::IndexWidth || !seeds.empty()) &&
      base.oracle.kind != OracleSpec::Kind::Random) {
    throw CliError("sweeping n or seeds requires a random oracle_source");
  }

  struct Point {
    RunConfig cfg;
  };
  std::vector<Point> points;
  const std::vector<int> one_axis = axis == Axis::None ? std::vector<int>{0}
                                                       : axis_values;
  const std::vector<std::uint64_t> one_seed =
      seeds.empty() ? std::vector<std::uint64_t>{base.oracle.seed} : seeds;
  if (axis != Axis::None || !seeds.empty()) {
    for (int v : one_axis) {
      for (std::uint64_t s : one_seed) {
        RunConfig cfg = base;
        if (axis == Axis::Iterations) cfg.iterations = v;
        if (axis == Axis::IndexWidth) cfg.n = v;
        cfg.oracle.seed = s;
        points.push_back({std::move(cfg)});
      }
    }
  }

  int workers = 0;
  if (j.contains("workers")) workers = get_int(j["workers"], "workers");
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, std::max<std::size_t>(points.size(), 1));

  std::vector<std::string> rows(points.size());
  std::vector<std::string> errors(points.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < points.size();
         i = next.fetch_add(1)) {
      try {
        TablePtr table = resolve_table(points[i].cfg);
        ReportPtr report = run_config(table.get(), points[i].cfg);
        rows[i] = take(qprep_report_csv_summary(report.get()));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw CliError("sweep point failed: " + e);
  }

  std::string csv = take(qprep_csv_header());
  for (const std::string& row : rows) csv += row;

  std::string output;
  if (j.contains("output")) output = get_string(j["output"], "output");
  if (ov.out) output = *ov.out;
  if (output.empty()) {
    std::cout << csv;
  } else {
    write_file(output + ".csv", csv);
  }
  std::cerr << "sweep: " << points.size() << " points, " << workers
            << " workers\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amplitude-amplification state preparation: runs, comparisons "
               "and sweeps with exact oracle-query accounting"};
  app.require_subcommand(1);

  struct SubArgs {
    std::string config;
    std::string engine;
    std::string out;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool timing = false;
  };
  const auto add_common = [](CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config, "JSON config file")->required();
    sub->add_option("--engine", args.engine,
                    "override engine: dense|structured|both");
    sub->add_option("--out", args.out, "override output path prefix");
    sub->add_option("--seed", args.seed, "override the random-oracle seed")
        ->each([&args](const std::string&) { args.has_seed = true; });
    sub->add_flag("--timing", args.timing,
                  "record wall-clock times in the emitted files");
  };

  SubArgs run_args, compare_args, sweep_args;
  CLI::App* run = app.add_subcommand("run", "execute one configuration");
  add_common(run, run_args);
  CLI::App* compare =
      app.add_subcommand("compare", "run several methods on one oracle");
  add_common(compare, compare_args);
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a grid of points into one CSV");
  add_common(sweep, sweep_args);

  CLI11_PARSE(app, argc, argv);

  const auto overrides = [](const SubArgs& args) {
    Overrides ov;
    if (!args.engine.empty()) ov.engine = args.engine;
    if (!args.out.empty()) ov.out = args.out;
    if (args.has_seed) ov.seed = args.seed;
    ov.timing = args.timing;
    return ov;
  };

  try {
    if (run->parsed()) return cmd_run(run_args.config, overrides(run_args));
    if (compare->parsed()) {
      return cmd_compare(compare_args.config, overrides(compare_args));
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_args.config, overrides(sweep_args));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
