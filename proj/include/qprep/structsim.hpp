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

#include <cstddef>
#include <optional>
#include <vector>

#include "qprep/fastprep.hpp"
#include "qprep/oracle.hpp"
#include "qprep/report.hpp"

namespace qprep {

/// Between oracle sandwiches the phase-encoded pipeline state always has the
/// form sum_i |i> |0^m> (a_i|0> + b_i|1>); this engine stores just the 2N
/// pairs, giving O(N) work per iteration.
struct ReducedState {
  std::vector<Amplitude> a;
  std::vector<Amplitude> b;

  std::size_t size() const { return a.size(); }
  double norm() const;
};

/// a_i = b_i = 1/sqrt(2N).
ReducedState reduced_prepare_s(std::size_t n_items);

/// Per i: (a_i, b_i) -> (e^{+i c beta_i} b_i, e^{-i c beta_i} a_i) with
/// beta_i = 2 phi_i — the closed form of the oracle sandwich.
void reduced_u_omega(ReducedState& state, const AngleProfile& profile,
                     double scale = 1.0);

/// psi -> psi - 2<s|psi> s over the reduced space.
void reduced_u_s(ReducedState& state);

/// Mirror of run_fast / run_exact_scaled on the reduced representation.
/// The kickback route is emulated by quantizing the per-branch phases to the
/// same 2^q grid the dense engine uses. Exactness::PrakashAncilla is not
/// representable here and is rejected.
RunOutput reduced_run(const OracleTable& table, const FastMethod& method,
                      std::optional<int> iterations = std::nullopt);

}  // namespace qprep
