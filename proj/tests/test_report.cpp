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

#include "doctest.h"
#include "json.hpp"

using namespace qprep;

namespace {

RunReport sample_report() {
  RunReport rep;
  rep.method = "fast-rz";
  rep.index_width = 2;
  rep.value_width = 3;
  rep.phase_width = 0;
  rep.iterations = 1;
  rep.trace = {{0, 2, 0.25, 0.5, 1.0}, {1, 4, 1.0, 1.0, 1.0}};
  rep.total_queries = 4;
  rep.final_p_success = 1.0;
  rep.final_overlap = 1.0;
  rep.final_fidelity = 1.0;
  return rep;
}

}  // namespace

TEST_CASE("csv layout") {
  const RunReport rep = sample_report();
  const std::string csv = report_to_csv(rep);
  CHECK(csv.rfind("method,n,m,q,seed,iteration,queries_cumulative,p_success,"
                  "overlap_omega,fidelity,wall_ms\n",
                  0) == 0);
  CHECK(csv.find("fast-rz,2,3,0,,0,2,0.25,0.5,1,0\n") != std::string::npos);
  CHECK(csv.find("fast-rz,2,3,0,,1,4,1,1,1,0\n") != std::string::npos);
  CHECK(report_summary_row(rep) == "fast-rz,2,3,0,,1,4,1,1,1,0\n");

  RunReport seeded = rep;
  seeded.seed = 42;
  CHECK(report_summary_row(seeded) == "fast-rz,2,3,0,42,1,4,1,1,1,0\n");
}

TEST_CASE("csv carries 12 significant digits") {
  RunReport rep = sample_report();
  rep.trace[1].p_success = 0.123456789012345;
  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("0.123456789012") != std::string::npos);
}

TEST_CASE("extras are ordered and queryable") {
  RunReport rep = sample_report();
  rep.set_extra("theta", 0.5);
  rep.set_extra("scale_c", 0.75);
  rep.set_extra("theta", 0.25);  // overwrite keeps position
  CHECK(rep.extras.size() == 2);
  CHECK(rep.extras[0].first == "theta");
  CHECK(*rep.extra("theta") == 0.25);
  CHECK(!rep.extra("missing").has_value());
}

TEST_CASE("json round trips through a parser") {
  RunReport rep = sample_report();
  rep.set_extra("theta", 0.5235987755982988);
  const nlohmann::json j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["method"] == "fast-rz");
  CHECK(j["engine"] == "dense");
  CHECK(j["seed"].is_null());
  CHECK(j["trace"].size() == 2);
  CHECK(j["trace"][1]["queries_cumulative"] == 4);
  CHECK(j["summary"]["total_queries"] == 4);
  CHECK(j["extras"]["theta"].get<double>() ==
        doctest::Approx(0.5235987755982988).epsilon(1e-15));
}
