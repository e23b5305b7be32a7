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

#include <cmath>
#include <complex>
#include <random>

#include "qprep/statevector.hpp"

namespace qprep::test {

inline StateVector random_state(const RegisterLayout& layout,
                                std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  StateVector s(layout, 0);
  double norm2 = 0.0;
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    const Amplitude a{g(gen), g(gen)};
    s.set_amp(i, a);
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    s.set_amp(i, s.amp(i) * inv);
  }
  return s;
}

inline double distance(const StateVector& a, const StateVector& b) {
  double s = 0.0;
  for (std::uint64_t i = 0; i < a.dimension(); ++i) {
    s += std::norm(a.amp(i) - b.amp(i));
  }
  return std::sqrt(s);
}

/// L2 distance after aligning the global phase of b to a.
inline double distance_mod_phase(const StateVector& a, const StateVector& b) {
  const Amplitude ov = inner(b, a);
  const Amplitude phase =
      std::abs(ov) > 1e-30 ? ov / std::abs(ov) : Amplitude{1.0};
  double s = 0.0;
  for (std::uint64_t i = 0; i < a.dimension(); ++i) {
    s += std::norm(a.amp(i) - phase * b.amp(i));
  }
  return std::sqrt(s);
}

}  // namespace qprep::test
