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

#include "qprep/structsim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qprep/baseline.hpp"
#include "qprep/error.hpp"

namespace qprep {

double ReducedState::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i]) + std::norm(b[i]);
  return std::sqrt(s);
}

ReducedState reduced_prepare_s(std::size_t n_items) {
  if (n_items == 0) throw ConfigError("reduced state needs at least one item");
  const Amplitude v = 1.0 / std::sqrt(2.0 * static_cast<double>(n_items));
  return {std::vector<Amplitude>(n_items, v), std::vector<Amplitude>(n_items, v)};
}

namespace {

void apply_betas(ReducedState& state, std::span<const double> betas) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Amplitude swap_a = std::polar(1.0, betas[i]) * state.b[i];
    state.b[i] = std::polar(1.0, -betas[i]) * state.a[i];
    state.a[i] = swap_a;
  }
}

/// Half-angle phases, H on the ancilla, post-select ancilla = 1.
std::pair<double, std::vector<Amplitude>> reduced_finalize(
    const ReducedState& state, std::span<const double> gammas) {
  std::vector<Amplitude> out(state.size());
  double p = 0.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Amplitude a = std::polar(1.0, -gammas[i]) * state.a[i];
    const Amplitude b = std::polar(1.0, gammas[i]) * state.b[i];
    out[i] = (a - b) * inv_sqrt2;
    p += std::norm(out[i]);
  }
  if (p < 1e-15) {
    throw PostselectError("post-selecting ancilla = 1 has probability " +
                          std::to_string(p));
  }
  const double inv = 1.0 / std::sqrt(p);
  for (Amplitude& v : out) v *= inv;
  return {p, std::move(out)};
}

}  // namespace

void reduced_u_omega(ReducedState& state, const AngleProfile& profile,
                     double scale) {
  if (state.size() != profile.phis.size()) {
    throw ValidationError("reduced state and angle profile sizes differ");
  }
  std::vector<double> betas(profile.phis.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    betas[i] = 2.0 * scale * profile.phis[i];
  }
  apply_betas(state, betas);
}

void reduced_u_s(ReducedState& state) {
  const std::size_t n = state.size();
  const Amplitude s_entry = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  Amplitude overlap{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    overlap += std::conj(s_entry) * (state.a[i] + state.b[i]);
  }
  const Amplitude shift = 2.0 * overlap * s_entry;
  for (std::size_t i = 0; i < n; ++i) {
    state.a[i] -= shift;
    state.b[i] -= shift;
  }
}

RunOutput reduced_run(const OracleTable& table, const FastMethod& method,
                      std::optional<int> iterations) {
  if (method.exactness == Exactness::PrakashAncilla) {
    throw ConfigError(
        "the structured engine covers the phase-encoded pipeline only");
  }
  const AngleProfile prof = angles(table);
  const bool scaled = method.exactness == Exactness::ScaledAngle;
  const ThetaBar tb = choose_theta_bar(prof.theta);
  const double scale = scaled ? solve_scaled_angle(prof, tb.theta_bar) : 1.0;
  const int k = scaled       ? tb.k_bar
                : iterations ? *iterations
                             : iterations_auto(prof.theta);
  if (k < 0) throw ConfigError("iteration count must be non-negative");

  const bool kickback = method.route == Route::Kickback;
  const int q = kickback ? (method.phase_width > 0 ? method.phase_width
                                                   : default_phase_width(table))
                         : 0;
  const int per_iter = kickback ? 1 : 2;

  // Per-branch phases; the kickback route quantizes to the same grid the
  // dense engine's scaled queries hit.
  const std::uint64_t n_items = table.size();
  std::vector<double> betas(n_items), gammas(n_items);
  const double grid = 2.0 * std::numbers::pi / std::exp2(static_cast<double>(q));
  for (std::uint64_t i = 0; i < n_items; ++i) {
    if (kickback) {
      betas[i] = grid * static_cast<double>(scaled_code(
                     kickback_scale(table, scale), table.value(i),
                     table.value_width(), q));
      gammas[i] = grid * static_cast<double>(scaled_code(
                      kickback_scale(table, 0.5 * scale), table.value(i),
                      table.value_width(), q));
    } else {
      betas[i] = 2.0 * scale * prof.phis[i];
      gammas[i] = scale * prof.phis[i];
    }
  }

  // Unquantized good axis, as the dense trace reports it.
  std::vector<Amplitude> omega_a(n_items), omega_b(n_items);
  {
    double norm2 = 0.0;
    for (std::uint64_t i = 0; i < n_items; ++i) {
      const double phi = scale * prof.phis[i];
      const double w = std::sin(phi);
      omega_a[i] = w * std::polar(1.0, phi);
      omega_b[i] = -w * std::polar(1.0, -phi);
      norm2 += 2.0 * w * w;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::uint64_t i = 0; i < n_items; ++i) {
      omega_a[i] *= inv;
      omega_b[i] *= inv;
    }
  }

  const std::vector<double> target = target_state(table);
  QueryLedger ledger;
  ReducedState psi = reduced_prepare_s(n_items);

  RunOutput out;
  RunReport& rep = out.report;
  rep.engine = "structured";
  rep.method = std::string(kickback ? "fast-kickback" : "fast-rz") +
               (scaled ? "+scaled" : "");
  rep.index_width = table.index_width();
  rep.value_width = table.value_width();
  rep.phase_width = q;
  rep.iterations = k;

  const auto record = [&](int j) {
    IterationRecord rec;
    rec.iteration = j;
    rec.queries = ledger.total() + per_iter;
    Amplitude ov{0.0};
    for (std::uint64_t i = 0; i < n_items; ++i) {
      ov += std::conj(omega_a[i]) * psi.a[i] + std::conj(omega_b[i]) * psi.b[i];
    }
    rec.overlap_omega = std::abs(ov);
    try {
      auto [prob, idx] = reduced_finalize(psi, gammas);
      rec.p_success = prob;
      rec.fidelity = fidelity_vs_target(idx, target);
    } catch (const PostselectError&) {
      rec.p_success = 0.0;
      rec.fidelity = 0.0;
    }
    rep.trace.push_back(rec);
  };

  record(0);
  for (int j = 1; j <= k; ++j) {
    apply_betas(psi, betas);
    ledger.record(Direction::Forward);
    if (!kickback) ledger.record(Direction::Inverse);
    reduced_u_s(psi);
    record(j);
  }

  // The closing extraction spends its queries whether or not it succeeds.
  ledger.record(Direction::Forward);
  if (!kickback) ledger.record(Direction::Inverse);

  const IterationRecord& last = rep.trace.back();
  rep.final_overlap = last.overlap_omega;
  rep.final_p_success = last.p_success;
  rep.final_fidelity = last.fidelity;
  rep.total_queries = ledger.total();
  rep.postselect_failed = last.p_success <= 0.0;
  rep.set_extra("theta", prof.theta);
  if (scaled) {
    rep.set_extra("theta_bar", tb.theta_bar);
    rep.set_extra("k_bar", tb.k_bar);
    rep.set_extra("scale_c", scale);
    try {
      auto [prob, idx] = reduced_finalize(psi, gammas);
      (void)prob;
      rep.set_extra("fidelity_original_target", fidelity_vs_target(idx, target));
      rep.set_extra("fidelity_scaled_target",
                    fidelity_vs_target(idx, scaled_target_state(table, scale)));
    } catch (const PostselectError&) {
    }
  }
  if (!rep.postselect_failed) {
    auto [prob, idx] = reduced_finalize(psi, gammas);
    (void)prob;
    StateVector idx_state(RegisterLayout(table.index_width(), 0, 0), 0);
    idx_state.set_amp(0, 0.0);
    for (std::uint64_t i = 0; i < n_items; ++i) idx_state.set_amp(i, idx[i]);
    out.state = std::move(idx_state);
  }
  return out;
}

}  // namespace qprep
