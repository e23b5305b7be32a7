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
#include <span>
#include <utility>

#include "qprep/oracle.hpp"
#include "qprep/report.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// How the reflection about the bad axis is realized: a two-query oracle
/// sandwich around per-branch phases, or a single query through a
/// Fourier-basis phase register.
enum class Route { Rz, Kickback };

enum class Exactness { None, PrakashAncilla, ScaledAngle };

struct FastMethod {
  Route route = Route::Rz;
  Exactness exactness = Exactness::None;
  /// Kickback phase register width; 0 picks the default m + 4.
  int phase_width = 0;
};

int default_phase_width(const OracleTable& table);

RegisterLayout fast_layout(const OracleTable& table, Route route,
                           int phase_width = 0);

/// |s> = uniform index register, cleared value register, |+> ancilla.
/// No oracle queries.
StateVector prepare_s_fast(const RegisterLayout& layout);

/// Two-query reflection: per index i the ancilla undergoes
/// X * diag(e^{-i beta_i}, e^{+i beta_i}) with beta_i = scale * 2 * phi_i.
/// Fixes omega_perp, negates omega. The value register must be clear on
/// entry and is clear again on exit.
void u_omega_rz(StateVector& state, const OracleTable& table,
                QueryLedger& ledger, double scale = 1.0);

/// Two interchangeable ways to steer the kicked phase's sign: control the
/// QFT direction on the ancilla, or run fixed QFTs around an
/// ancilla-directed add/subtract query. Both add the same codes, so the
/// resulting operators are equal.
enum class KickbackStyle { ControlledQft, ControlledAddSub };

/// Same reflection with one oracle query: the phase register is raised to
/// all-ones, rotated into a Fourier basis whose direction the ancilla
/// selects, shifted by one scaled query, rotated back and cleared. Phases
/// are quantized to the 2^q grid (error at most pi/2^q per branch).
void u_omega_kickback(StateVector& state, const OracleTable& table,
                      QueryLedger& ledger, double scale = 1.0,
                      KickbackStyle style = KickbackStyle::ControlledQft);

/// Oracle-free diffusion: (H_index x H_ancilla) R_0 (H_index x H_ancilla),
/// a reflection fixing |s> up to global sign.
void u_s_fast(StateVector& state);

/// The good/bad axes of the phase-encoded pipeline, numerically normalized:
/// omega carries sin(scale*phi_i) weights and ancilla branches
/// e^{+i scale phi_i}|0> - e^{-i scale phi_i}|1>; omega_perp the cosine
/// weights with a plus sign.
struct OmegaPair {
  StateVector omega;
  StateVector omega_perp;
};

/// The good axis alone (always well defined while F > 0).
StateVector omega_state(const OracleTable& table, const RegisterLayout& layout,
                        double scale = 1.0);
/// Both axes; throws ValidationError when the cosine branch vanishes
/// (every |f_i| equal to F).
OmegaPair make_omega_pair(const OracleTable& table,
                          const RegisterLayout& layout, double scale = 1.0);

/// Turns a state near omega into the analog-encoded product state: one more
/// half-angle phase sandwich, H on the ancilla, post-select ancilla = 1 and
/// the remaining non-index registers at zero. Two extra queries on the rz
/// route, one on the kickback route. Returns the success probability and the
/// index-register state.
std::pair<double, StateVector> finalize(StateVector& state,
                                        const OracleTable& table,
                                        QueryLedger& ledger, Route route,
                                        double scale = 1.0);

/// |<target|state>|^2 for an index-register state against a real vector.
double fidelity_vs_target(std::span<const Amplitude> state,
                          std::span<const double> target);

/// Reduced angle: theta_bar = pi / (2 (2 k_bar + 1)) for the smallest k_bar
/// with theta_bar <= theta, so (2 k_bar + 1) theta_bar = pi/2 exactly.
struct ThetaBar {
  double theta_bar;
  int k_bar;
};
ThetaBar choose_theta_bar(double theta);

/// Bisected scale c in (0, 1] with arcsin(sqrt(mean sin^2(c phi_i))) =
/// theta_bar within 1e-12.
double solve_scaled_angle(const AngleProfile& profile, double theta_bar);

/// Full run of the phase-encoded pipeline: prepare, k iterations of
/// U_s U_omega, finalize. Query totals: 2k+2 (rz), k+1 (kickback).
RunOutput run_fast(const OracleTable& table, const FastMethod& method,
                   std::optional<int> iterations = std::nullopt);

/// Exact variant on the four-query pipeline: an extra ancilla prepared in
/// sqrt(p_bar/p)|0> + sqrt(1 - p_bar/p)|1> makes the success probability hit
/// one after k_bar iterations.
RunOutput run_exact_prakash(const OracleTable& table);

/// Exact variant on the phase-encoded pipeline: all reflection phases scaled
/// by the bisected c, run for k_bar iterations. Reports fidelity against both
/// the original and the scaled target, plus the same figures for the paper's
/// literal scale theta_bar/theta.
RunOutput run_exact_scaled(const OracleTable& table, Route route,
                           int phase_width = 0);

}  // namespace qprep
