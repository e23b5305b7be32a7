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

// Drives the installed CLI binary (path in $QPREP_CLI) through temp files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* p = std::getenv("QPREP_CLI");
  REQUIRE_MESSAGE(p != nullptr, "QPREP_CLI must point at the CLI binary");
  return p;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("qprep_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run_cli(const std::string& args, const Scratch& scratch,
            std::string* out = nullptr, std::string* err = nullptr) {
  const std::string out_path = scratch.path("stdout.txt");
  const std::string err_path = scratch.path("stderr.txt");
  const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + out_path +
                          " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  if (out) *out = slurp(out_path);
  if (err) *err = slurp(err_path);
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

const char* kHeader =
    "method,n,m,q,seed,iteration,queries_cumulative,p_success,overlap_omega,"
    "fidelity,wall_ms";

}  // namespace

TEST_CASE("run writes csv and json") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "baseline",
    "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]},
    "iterations": "auto",
    "output": ")" + scratch.path("out") + R"("
  })");
  std::string err;
  CHECK(run_cli("run --config " + config, scratch, nullptr, &err) == 0);

  const auto csv = lines_of(slurp_file(scratch.path("out.csv")));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == kHeader);
  const auto first = fields_of(csv[1]);
  const auto last = fields_of(csv[2]);
  CHECK(first[0] == "baseline");
  CHECK(first[6] == "2");
  CHECK(last[6] == "6");
  CHECK(last[7] == "1");

  const std::string json = slurp_file(scratch.path("out.json"));
  CHECK(json.find("\"total_queries\": 6") != std::string::npos);
}

TEST_CASE("run with no output prints csv on stdout") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "fast-rz",
    "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]}
  })");
  std::string out;
  CHECK(run_cli("run --config " + config, scratch, &out) == 0);
  const auto csv = lines_of(out);
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == kHeader);
  CHECK(fields_of(csv[2])[6] == "4");
}

TEST_CASE("invalid configs fail with the field name") {
  Scratch scratch;
  std::string err;

  const std::string unknown = scratch.file("bad1.json", R"({
    "method": "baseline", "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]},
    "iterationz": 3
  })");
  CHECK(run_cli("run --config " + unknown, scratch, nullptr, &err) == 1);
  CHECK(err.find("iterationz") != std::string::npos);

  const std::string bad_type = scratch.file("bad2.json", R"({
    "method": "baseline", "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]},
    "iterations": -2
  })");
  CHECK(run_cli("run --config " + bad_type, scratch, nullptr, &err) == 1);
  CHECK(err.find("iterations") != std::string::npos);

  const std::string no_oracle = scratch.file("bad3.json", R"({
    "method": "baseline", "m": 3
  })");
  CHECK(run_cli("run --config " + no_oracle, scratch, nullptr, &err) == 1);
  CHECK(err.find("oracle_source") != std::string::npos);

  const std::string bad_method = scratch.file("bad4.json", R"({
    "method": "sideways", "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]}
  })");
  CHECK(run_cli("run --config " + bad_method, scratch, nullptr, &err) == 1);
  CHECK(err.find("sideways") != std::string::npos);
}

TEST_CASE("compare emits query ratios") {
  Scratch scratch;
  const std::string config = scratch.file("cmp.json", R"({
    "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]},
    "configs": [
      {"method": "baseline"},
      {"method": "fast-rz"},
      {"method": "fast-kickback", "q": 12}
    ],
    "output": ")" + scratch.path("cmp") + R"("
  })");
  CHECK(run_cli("compare --config " + config, scratch) == 0);
  const auto csv = lines_of(slurp_file(scratch.path("cmp.csv")));
  REQUIRE(csv.size() == 4);
  const auto baseline = fields_of(csv[1]);
  const auto rz = fields_of(csv[2]);
  const auto kick = fields_of(csv[3]);
  CHECK(baseline[5] == "6");
  CHECK(rz[5] == "4");
  CHECK(kick[5] == "2");
  CHECK(baseline[6] == "4");  // queries per iteration
  CHECK(rz[6] == "2");
  CHECK(kick[6] == "1");
  CHECK(rz[9] == "1.5");  // 6/4
  CHECK(kick[9] == "3");  // 6/2
  CHECK(kick[10] == "4"); // 4/1
}

TEST_CASE("compare rejects mismatched oracles") {
  Scratch scratch;
  const std::string config = scratch.file("cmp.json", R"({
    "m": 3,
    "configs": [
      {"method": "baseline", "oracle_source": {"values": [3, 0, 0, 0]}},
      {"method": "fast-rz", "oracle_source": {"values": [3, 0, 1, 0]}}
    ]
  })");
  std::string err;
  CHECK(run_cli("compare --config " + config, scratch, nullptr, &err) == 1);
  CHECK(err.find("different oracles") != std::string::npos);
}

TEST_CASE("sweep over iterations follows the rotation law") {
  Scratch scratch;
  const std::string config = scratch.file("sweep.json", R"({
    "base": {
      "method": "baseline", "m": 3,
      "oracle_source": {"values": [3, 0, 0, 0]}
    },
    "sweep": {"iterations": {"from": 0, "to": 4}},
    "output": ")" + scratch.path("sw") + R"("
  })");
  CHECK(run_cli("sweep --config " + config, scratch) == 0);
  const auto csv = lines_of(slurp_file(scratch.path("sw.csv")));
  REQUIRE(csv.size() == 6);
  const double expected[] = {0.25, 1.0, 0.25, 0.25, 1.0};
  for (int k = 0; k <= 4; ++k) {
    const auto fields = fields_of(csv[1 + k]);
    CHECK(fields[5] == std::to_string(k));
    CHECK(std::abs(std::stod(fields[7]) - expected[k]) <= 1e-9);
  }
}

TEST_CASE("sweep is deterministic byte for byte") {
  Scratch scratch;
  const std::string config = scratch.file("sweep.json", R"({
    "base": {
      "method": "fast-rz", "n": 3, "m": 4,
      "oracle_source": {"random": {"seed": 5}}
    },
    "sweep": {"iterations": {"from": 0, "to": 3}, "seeds": [11, 3, 7]},
    "workers": 3,
    "output": ")" + scratch.path("a") + R"("
  })");
  CHECK(run_cli("sweep --config " + config, scratch) == 0);
  CHECK(run_cli("sweep --config " + config + " --out " + scratch.path("b"),
                scratch) == 0);
  const std::string a = slurp_file(scratch.path("a.csv"));
  const std::string b = slurp_file(scratch.path("b.csv"));
  CHECK(a == b);
  // rows sorted by (iterations, seed): 4 x 3 points
  const auto csv = lines_of(a);
  REQUIRE(csv.size() == 13);
  CHECK(fields_of(csv[1])[4] == "3");
  CHECK(fields_of(csv[2])[4] == "7");
  CHECK(fields_of(csv[3])[4] == "11");
  // rz post-selected output is exact whenever post-selection succeeds
  for (std::size_t row = 1; row < csv.size(); ++row) {
    const auto fields = fields_of(csv[row]);
    const double p = std::stod(fields[7]);
    const double fidelity = std::stod(fields[9]);
    CHECK((fidelity >= 1.0 - 1e-9 || p < 1e-12));
  }
}

TEST_CASE("empty sweep emits only the header") {
  Scratch scratch;
  const std::string config = scratch.file("sweep.json", R"({
    "base": {
      "method": "baseline", "m": 3,
      "oracle_source": {"values": [3, 0, 0, 0]}
    },
    "sweep": {"iterations": []},
    "output": ")" + scratch.path("empty") + R"("
  })");
  CHECK(run_cli("sweep --config " + config, scratch) == 0);
  const auto csv = lines_of(slurp_file(scratch.path("empty.csv")));
  REQUIRE(csv.size() == 1);
  CHECK(csv[0] == kHeader);
}

TEST_CASE("engine both cross-checks dense against structured") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "fast-kickback", "n": 3, "m": 4, "q": 10,
    "engine": "both",
    "oracle_source": {"random": {"seed": 21}}
  })");
  std::string out;
  CHECK(run_cli("run --config " + config, scratch, &out) == 0);
  CHECK(lines_of(out).size() >= 2);

  // the structured engine rejects the baseline pipeline
  const std::string bad = scratch.file("bad.json", R"({
    "method": "baseline", "m": 3, "engine": "structured",
    "oracle_source": {"values": [3, 0, 0, 0]}
  })");
  std::string err;
  CHECK(run_cli("run --config " + bad, scratch, nullptr, &err) == 1);
  CHECK(err.find("structured") != std::string::npos);
}

TEST_CASE("sweep over the index width") {
  Scratch scratch;
  const std::string config = scratch.file("sweep.json", R"({
    "base": {
      "method": "fast-rz", "n": 2, "m": 4,
      "oracle_source": {"random": {"seed": 8}}
    },
    "sweep": {"n": [4, 2, 3]},
    "output": ")" + scratch.path("nsw") + R"("
  })");
  CHECK(run_cli("sweep --config " + config, scratch) == 0);
  const auto csv = lines_of(slurp_file(scratch.path("nsw.csv")));
  REQUIRE(csv.size() == 4);
  CHECK(fields_of(csv[1])[1] == "2");  // sorted by n
  CHECK(fields_of(csv[2])[1] == "3");
  CHECK(fields_of(csv[3])[1] == "4");
}

TEST_CASE("the dense width cap is an explicit error") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "fast-rz", "n": 20, "m": 8,
    "oracle_source": {"random": {"seed": 2}}
  })");
  std::string err;
  CHECK(run_cli("run --config " + config, scratch, nullptr, &err) == 1);
  CHECK(err.find("cap") != std::string::npos);

  // the structured engine has no dense array and handles the same size
  std::string out;
  CHECK(run_cli("run --config " + config + " --engine structured", scratch,
                &out) == 0);
  CHECK(fields_of(lines_of(out)[1])[1] == "20");
}

TEST_CASE("timing is opt-in") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "baseline", "m": 3,
    "oracle_source": {"values": [3, 0, 0, 0]}
  })");
  std::string plain, timed;
  CHECK(run_cli("run --config " + config, scratch, &plain) == 0);
  CHECK(run_cli("run --config " + config + " --timing", scratch, &timed) == 0);
  CHECK(fields_of(lines_of(plain)[1])[10] == "0");
  CHECK(std::stod(fields_of(lines_of(timed)[1])[10]) > 0.0);
}

TEST_CASE("seed override reaches the table") {
  Scratch scratch;
  const std::string config = scratch.file("run.json", R"({
    "method": "fast-rz", "n": 2, "m": 3,
    "oracle_source": {"random": {"seed": 1}}
  })");
  std::string first, second, third;
  CHECK(run_cli("run --config " + config + " --seed 9", scratch, &first) == 0);
  CHECK(run_cli("run --config " + config + " --seed 9", scratch, &second) == 0);
  CHECK(run_cli("run --config " + config, scratch, &third) == 0);
  CHECK(first == second);
  CHECK(first != third);
  CHECK(fields_of(lines_of(first)[1])[4] == "9");
}
