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
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qprep/error.hpp"
#include "qprep/table_io.hpp"

using namespace qprep;
using test::distance;
using test::random_state;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("make_table validates") {
  const OracleTable t = OracleTable::make(2, 3, {3, 0, 1, 2});
  CHECK(t.max_abs() == 3);
  CHECK(t.size() == 4);

  CHECK_THROWS_AS(OracleTable::make(1, 2, {0, 0}), ConfigError);
  CHECK_THROWS_AS(OracleTable::make(1, 2, {5, 0}), ConfigError);
  CHECK_THROWS_AS(OracleTable::make(1, 2, {-2, 0}), ConfigError);  // -2^(m-1)
  CHECK_THROWS_AS(OracleTable::make(2, 3, {1, 0}), ConfigError);   // wrong length
}

TEST_CASE("two's complement decode") {
  const OracleTable t = OracleTable::make(1, 3, {1, -1});
  CHECK(t.decode(0b001) == 1);
  CHECK(t.decode(0b111) == -1);
  CHECK(t.decode(0b100) == -4);
  CHECK(t.decode(0b011) == 3);
}

TEST_CASE("angles from the values") {
  const AngleProfile p = angles(OracleTable::make(2, 3, {3, 0, 1, 2}));
  CHECK(p.phis[0] == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(p.phis[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.phis[2] == doctest::Approx(pi / 6).epsilon(1e-14));
  CHECK(p.phis[3] == doctest::Approx(pi / 3).epsilon(1e-14));

  const AngleProfile single = angles(OracleTable::make(2, 3, {3, 0, 0, 0}));
  CHECK(single.theta == doctest::Approx(pi / 6).epsilon(1e-14));

  // n = 0 edge: one entry, theta = pi/2.
  const AngleProfile unit = angles(OracleTable::make(0, 4, {5}));
  CHECK(unit.theta == doctest::Approx(pi / 2).epsilon(1e-14));
}

TEST_CASE("N sin^2 theta = sum sin^2 phi on random tables") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const OracleTable t = random_oracle(1 + seed % 6, 2 + seed % 5, seed);
    const AngleProfile p = angles(t);
    double sum = 0.0;
    for (double phi : p.phis) sum += std::sin(phi) * std::sin(phi);
    const double lhs = static_cast<double>(t.size()) * std::sin(p.theta) *
                       std::sin(p.theta);
    CHECK(std::abs(lhs - sum) <= 1e-12);
    CHECK(p.theta > 0.0);
    CHECK(p.theta <= pi / 2 + 1e-15);
  }
}

TEST_CASE("uniform value scaling keeps the angles") {
  const AngleProfile a = angles(OracleTable::make(2, 4, {1, 0, 2, -1}));
  const AngleProfile b = angles(OracleTable::make(2, 4, {3, 0, 6, -3}));
  for (std::size_t i = 0; i < a.phis.size(); ++i) {
    CHECK(std::abs(a.phis[i] - b.phis[i]) <= 1e-12);
  }
  CHECK(std::abs(a.theta - b.theta) <= 1e-12);
}

TEST_CASE("apply_uf adds modulo 2^m") {
  const OracleTable t = OracleTable::make(1, 3, {1, 3});
  const RegisterLayout layout(1, 3, 0);
  QueryLedger ledger;

  // |x=1>|y=6> -> |1>|(6+3) mod 8 = 1>
  StateVector s(layout, 1 | (6 << 1));
  apply_uf(s, t, Direction::Forward, Reg::Value, ledger);
  CHECK(std::abs(s.amp(1 | (1 << 1)) - 1.0) < 1e-15);
  CHECK(ledger.total() == 1);

  // forward then inverse is the identity
  std::mt19937_64 gen(3);
  StateVector r = random_state(layout, gen);
  StateVector copy = r;
  apply_uf(r, t, Direction::Forward, Reg::Value, ledger);
  apply_uf(r, t, Direction::Inverse, Reg::Value, ledger);
  CHECK(distance(r, copy) <= 1e-12);
  CHECK(ledger.total() == 3);
  CHECK(ledger.forward_count() == 2);
  CHECK(ledger.inverse_count() == 1);

  // negative values wrap: f = -1 lands at 3 mod 4
  const OracleTable neg = OracleTable::make(1, 2, {-1, 0});
  StateVector z(RegisterLayout(1, 2, 0), 0);
  apply_uf(z, neg, Direction::Forward, Reg::Value, ledger);
  CHECK(std::abs(z.amp(3 << 1) - 1.0) < 1e-15);

  // width mismatch
  StateVector bad(RegisterLayout(1, 4, 0), 0);
  CHECK_THROWS_AS(apply_uf(bad, t, Direction::Forward, Reg::Value, ledger),
                  ValidationError);
}

TEST_CASE("apply_uf preserves the norm") {
  std::mt19937_64 gen(5);
  const OracleTable t = random_oracle(2, 3, 99);
  StateVector s = random_state(RegisterLayout(2, 3, 1), gen);
  QueryLedger ledger;
  apply_uf(s, t, Direction::Forward, Reg::Value, ledger);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
}

TEST_CASE("apply_uf_scaled") {
  // At q = m and unit scale the code is f itself.
  const OracleTable t = OracleTable::make(1, 2, {1, -1});
  const RegisterLayout both(1, 2, 0, 2);
  std::mt19937_64 gen(8);
  StateVector a = random_state(both, gen);
  StateVector b = a;
  QueryLedger ledger;
  apply_uf_scaled(a, t, 1.0, Direction::Forward, Reg::Phase, ledger);
  // mirror with apply_uf on a same-width register: emulate by moving the
  // addition onto the phase register through codes
  for (std::uint64_t x = 0; x < 2; ++x) {
    CHECK(scaled_code(1.0, t.value(x), 2, 2) == t.value(x));
  }
  StateVector c = b;
  // same arithmetic done by hand
  c.permute_basis([&](std::uint64_t basis) {
    const std::uint64_t x = basis & 1;
    const std::uint64_t p = (basis >> 3) & 3;
    const std::uint64_t shifted =
        (p + static_cast<std::uint64_t>(t.value(x))) & 3;
    return (basis & 0b0111) | (shifted << 3);
  });
  CHECK(distance(a, c) == 0.0);
  CHECK(ledger.total() == 1);

  // f0 = 1, m = 2, q = 6, unit scale: the code is 1 * 2^(6-2) = 16.
  CHECK(scaled_code(1.0, 1, 2, 6) == 16);
  const RegisterLayout wide(1, 2, 0, 6);
  StateVector w(wide, 0);
  apply_uf_scaled(w, t, 1.0, Direction::Forward, Reg::Phase, ledger);
  CHECK(std::abs(w.amp(std::uint64_t{16} << 3) - 1.0) < 1e-15);

  CHECK_THROWS_AS(
      apply_uf_scaled(w, t, 0.0, Direction::Forward, Reg::Phase, ledger),
      ConfigError);
  CHECK_THROWS_AS(
      apply_uf_scaled(w, t, -1.0, Direction::Forward, Reg::Phase, ledger),
      ConfigError);
}

TEST_CASE("kickback codes land within half a grid step of the target phase") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const OracleTable t = random_oracle(3, 4, seed);
    const AngleProfile prof = angles(t);
    for (int q : {8, 12}) {
      const double grid = 2.0 * pi / std::exp2(q);
      for (std::uint64_t i = 0; i < t.size(); ++i) {
        const double beta = 2.0 * prof.phis[i];
        const double coded =
            grid * static_cast<double>(scaled_code(
                       kickback_scale(t, 1.0), t.value(i), t.value_width(), q));
        CHECK(std::abs(coded - beta) <= pi / std::exp2(q) + 1e-12);
      }
    }
  }
}

TEST_CASE("target_state") {
  const std::vector<double> simple = target_state(OracleTable::make(2, 3, {3, 0, 0, 0}));
  CHECK(simple[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(simple[1] == 0.0);

  // sin(pi/2), sin(0), sin(pi/6), sin(pi/3) normalized by sqrt(2)
  const std::vector<double> mixed = target_state(OracleTable::make(2, 3, {3, 0, 1, 2}));
  const double inv = 1.0 / std::sqrt(2.0);
  CHECK(mixed[0] == doctest::Approx(1.0 * inv).epsilon(1e-12));
  CHECK(mixed[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mixed[2] == doctest::Approx(0.5 * inv).epsilon(1e-12));
  CHECK(mixed[3] == doctest::Approx(std::sqrt(3.0) / 2.0 * inv).epsilon(1e-12));

  const std::vector<double> with_sign = target_state(OracleTable::make(1, 3, {-2, 1}));
  CHECK(with_sign[0] < 0.0);
  CHECK(with_sign[1] > 0.0);
}

TEST_CASE("arcsin_encode") {
  const std::vector<double> e0 = {1.0, 0.0, 0.0, 0.0};
  const OracleTable t = arcsin_encode(e0, 8);
  CHECK(t.value(0) == 127);
  CHECK(t.value(1) == 0);

  const std::vector<double> uniform = {0.3, 0.3, 0.3, 0.3};
  const OracleTable u = arcsin_encode(uniform, 6);
  for (std::uint64_t i = 1; i < 4; ++i) CHECK(u.value(i) == u.value(0));

  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS_AS(arcsin_encode(zero, 8), ConfigError);

  // round trip at m = 12, N = 16: quantization loses less than 1e-5 fidelity
  std::mt19937_64 gen(31);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> alpha(16);
    double norm2 = 0.0;
    for (double& a : alpha) {
      a = g(gen);
      norm2 += a * a;
    }
    for (double& a : alpha) a /= std::sqrt(norm2);
    const std::vector<double> back = target_state(arcsin_encode(alpha, 12));
    double dot = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) dot += alpha[i] * back[i];
    CHECK(dot * dot >= 1.0 - 1e-5);
  }
}

TEST_CASE("oracle files") {
  const OracleTable parsed =
      parse_oracle_json(R"({"n": 2, "m": 3, "values": [3, 0, -1, 2]})");
  CHECK(parsed.index_width() == 2);
  CHECK(parsed.value_width() == 3);
  CHECK(parsed.value(2) == -1);

  CHECK_THROWS_AS(parse_oracle_json(R"({"n": 2, "values": [1, 0, 0, 0]})"),
                  IoError);
  CHECK_THROWS_AS(
      parse_oracle_json(R"({"n": 2, "m": 3, "values": [3, 0]})"), ConfigError);
  CHECK_THROWS_AS(
      parse_oracle_json(R"({"n": 1, "m": 3, "values": [3, 0]})", 4),
      ConfigError);  // hint conflicts with m

  const OracleTable text = parse_oracle_text("3\n0\n-1\n2\n");
  CHECK(text.index_width() == 2);
  CHECK(text.value_width() == 3);  // smallest width holding |f| <= 3
  CHECK(text.value(2) == -1);
  const OracleTable wide = parse_oracle_text("3\n0\n-1\n2\n", 6);
  CHECK(wide.value_width() == 6);

  CHECK_THROWS_AS(parse_oracle_text("1\n2\n3\n"), ConfigError);  // length 3
  CHECK_THROWS_AS(parse_oracle_text("1\nx\n"), IoError);
  CHECK_THROWS_AS(parse_oracle_text(""), IoError);

  // round trip through a file, sniffing both formats
  const std::string dir = "oracle_io_scratch";
  std::remove((dir + ".json").c_str());
  {
    std::ofstream out(dir + ".json");
    out << R"({"n": 1, "m": 4, "values": [5, -5]})";
  }
  const OracleTable from_json = load_oracle_file(dir + ".json");
  CHECK(from_json.value(1) == -5);
  {
    std::ofstream out(dir + ".txt");
    out << " 5 \n-5\n";
  }
  const OracleTable from_text = load_oracle_file(dir + ".txt");
  CHECK(from_text.value(0) == 5);
  CHECK_THROWS_AS(load_oracle_file(dir + ".missing"), IoError);
  std::remove((dir + ".json").c_str());
  std::remove((dir + ".txt").c_str());
}

TEST_CASE("random_oracle is deterministic and in range") {
  const OracleTable a = random_oracle(3, 4, 1234);
  const OracleTable b = random_oracle(3, 4, 1234);
  CHECK(a == b);

  bool any_differ = false;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const OracleTable c = random_oracle(3, 4, seed);
    any_differ = any_differ || !(c == a);
  }
  CHECK(any_differ);

  const OracleTable small = random_oracle(1, 2, 77);
  for (std::uint64_t i = 0; i < small.size(); ++i) {
    CHECK(small.value(i) >= -1);
    CHECK(small.value(i) <= 1);
  }
  CHECK(small.max_abs() > 0);

  CHECK_THROWS_AS(random_oracle(0, 4, 1), ConfigError);
  CHECK_THROWS_AS(random_oracle(2, 1, 1), ConfigError);
}
