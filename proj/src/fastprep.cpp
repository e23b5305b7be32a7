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

#include "qprep/fastprep.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qprep/baseline.hpp"
#include "qprep/error.hpp"

namespace qprep {

namespace {

constexpr double kClearTol = 1e-12;

double phi_of(const OracleTable& table, std::uint64_t value_bits) {
  return std::numbers::pi * static_cast<double>(table.decode(value_bits)) /
         (2.0 * static_cast<double>(table.max_abs()));
}

int finalize_cost(Route route) { return route == Route::Rz ? 2 : 1; }

const char* route_name(Route route) {
  return route == Route::Rz ? "fast-rz" : "fast-kickback";
}

void require_value_clear(const StateVector& state) {
  if (state.outcome_probability(Reg::Value, 0) < 1.0 - kClearTol) {
    throw ValidationError(
        "value register is not clear entering an oracle sandwich");
  }
}

/// Per-branch ancilla phases diag(e^{-i g(v)}, e^{+i g(v)}) inside a
/// two-query oracle sandwich; with_x folds the trailing X in.
void rz_sandwich(StateVector& state, const OracleTable& table,
                 QueryLedger& ledger, double angle_of_phi, bool with_x) {
  require_value_clear(state);
  apply_uf(state, table, Direction::Forward, Reg::Value, ledger);
  state.apply_conditioned(Reg::Value, Reg::Ancilla, [&](std::uint64_t v) {
    const double g = angle_of_phi * phi_of(table, v);
    const Amplitude lo = std::polar(1.0, -g), hi = std::polar(1.0, g);
    if (with_x) return Mat2{0.0, hi, lo, 0.0};
    return Mat2{lo, 0.0, 0.0, hi};
  });
  apply_uf(state, table, Direction::Inverse, Reg::Value, ledger);
}

/// One-query equivalent through the phase register; angle_scale multiplies
/// the per-branch 2*phi_i target.
void kickback_sandwich(StateVector& state, const OracleTable& table,
                       QueryLedger& ledger, double angle_scale, bool with_x,
                       KickbackStyle style = KickbackStyle::ControlledQft) {
  const RegisterLayout& layout = state.layout();
  if (layout.phase_width < 1) {
    throw ConfigError("kickback needs a phase register of width >= 1");
  }
  const int anc = layout.offset(Reg::Ancilla);
  const double scale = kickback_scale(table, angle_scale);

  state.flip_register(Reg::Phase);  // |0...0> -> |1...1>
  if (style == KickbackStyle::ControlledQft) {
    state.qft_register(Reg::Phase, false, Control{anc, true});
    state.qft_register(Reg::Phase, true, Control{anc, false});
    apply_uf_scaled(state, table, scale, Direction::Forward, Reg::Phase, ledger);
    state.qft_register(Reg::Phase, true, Control{anc, true});
    state.qft_register(Reg::Phase, false, Control{anc, false});
  } else {
    state.qft_register(Reg::Phase, false);
    apply_uf_scaled_addsub(state, table, scale, Reg::Phase, anc, ledger);
    state.qft_register(Reg::Phase, true);
  }
  state.flip_register(Reg::Phase);
  if (with_x) state.apply_gate(GateSpec::x(anc));
}

}  // namespace

int default_phase_width(const OracleTable& table) {
  return table.value_width() + 4;
}

RegisterLayout fast_layout(const OracleTable& table, Route route,
                           int phase_width) {
  if (route == Route::Rz) {
    return RegisterLayout(table.index_width(), table.value_width(), 1);
  }
  const int q = phase_width > 0 ? phase_width : default_phase_width(table);
  return RegisterLayout(table.index_width(), table.value_width(), 1, q);
}

StateVector prepare_s_fast(const RegisterLayout& layout) {
  StateVector state(layout, 0);
  state.hadamard_register(Reg::Index);
  state.hadamard_register(Reg::Ancilla);
  return state;
}

void u_omega_rz(StateVector& state, const OracleTable& table,
                QueryLedger& ledger, double scale) {
  rz_sandwich(state, table, ledger, 2.0 * scale, /*with_x=*/true);
}

void u_omega_kickback(StateVector& state, const OracleTable& table,
                      QueryLedger& ledger, double scale, KickbackStyle style) {
  kickback_sandwich(state, table, ledger, scale, /*with_x=*/true, style);
}

void u_s_fast(StateVector& state) {
  state.hadamard_register(Reg::Index);
  state.hadamard_register(Reg::Ancilla);
  state.reflect_zero({Reg::Index, Reg::Ancilla});
  state.hadamard_register(Reg::Index);
  state.hadamard_register(Reg::Ancilla);
}

namespace {

StateVector build_axis(const OracleTable& table, const RegisterLayout& layout,
                       double scale, bool good_axis) {
  const AngleProfile prof = angles(table);
  StateVector out(layout, 0);
  out.set_amp(0, 0.0);
  const std::uint64_t anc_bit = std::uint64_t{1} << layout.offset(Reg::Ancilla);
  double norm2 = 0.0;
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    const double phi = scale * prof.phis[i];
    const double w = good_axis ? std::sin(phi) : std::cos(phi);
    const double sign = good_axis ? -1.0 : 1.0;
    out.set_amp(i, w * std::polar(1.0, phi));
    out.set_amp(i | anc_bit, sign * w * std::polar(1.0, -phi));
    norm2 += 2.0 * w * w;
  }
  if (norm2 < 1e-24) {
    throw ValidationError("axis state vanishes for this table");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    out.set_amp(i, out.amp(i) * inv);
    out.set_amp(i | anc_bit, out.amp(i | anc_bit) * inv);
  }
  return out;
}

}  // namespace

StateVector omega_state(const OracleTable& table, const RegisterLayout& layout,
                        double scale) {
  return build_axis(table, layout, scale, true);
}

OmegaPair make_omega_pair(const OracleTable& table,
                          const RegisterLayout& layout, double scale) {
  return {build_axis(table, layout, scale, true),
          build_axis(table, layout, scale, false)};
}

std::pair<double, StateVector> finalize(StateVector& state,
                                        const OracleTable& table,
                                        QueryLedger& ledger, Route route,
                                        double scale) {
  if (route == Route::Rz) {
    rz_sandwich(state, table, ledger, scale, /*with_x=*/false);
  } else {
    kickback_sandwich(state, table, ledger, scale * 0.5, /*with_x=*/false);
  }
  state.hadamard_register(Reg::Ancilla);

  // Joint post-selection: ancilla = 1 and every other non-index register
  // zero. Those basis states are exactly i | anc_bit for i < 2^n.
  const RegisterLayout& layout = state.layout();
  const std::uint64_t anc_bit = std::uint64_t{1} << layout.offset(Reg::Ancilla);
  const std::uint64_t n_items = std::uint64_t{1} << layout.index_width;
  double p = 0.0;
  for (std::uint64_t i = 0; i < n_items; ++i) {
    p += std::norm(state.amp(i | anc_bit));
  }
  if (p < 1e-15) {
    throw PostselectError(
        "post-selecting the extraction outcome has probability " +
        std::to_string(p));
  }
  const double inv = 1.0 / std::sqrt(p);
  StateVector index_state(RegisterLayout(layout.index_width, 0, 0), 0);
  index_state.set_amp(0, 0.0);
  for (std::uint64_t i = 0; i < n_items; ++i) {
    index_state.set_amp(i, state.amp(i | anc_bit) * inv);
  }
  return {p, std::move(index_state)};
}

double fidelity_vs_target(std::span<const Amplitude> state,
                          std::span<const double> target) {
  if (state.size() != target.size()) {
    throw ValidationError("state and target dimensions differ");
  }
  Amplitude dot{0.0};
  for (std::size_t i = 0; i < state.size(); ++i) dot += target[i] * state[i];
  return std::norm(dot);
}

ThetaBar choose_theta_bar(double theta) {
  if (!(theta > 0.0) || theta > std::numbers::pi / 2 + 1e-12) {
    throw ConfigError("theta must lie in (0, pi/2]");
  }
  const double needed = std::numbers::pi / (2.0 * theta);
  long odd = static_cast<long>(std::ceil(needed - 1e-9));
  if (odd < 1) odd = 1;
  if (odd % 2 == 0) ++odd;
  return {std::numbers::pi / (2.0 * static_cast<double>(odd)),
          static_cast<int>((odd - 1) / 2)};
}

namespace {

double effective_theta(const AngleProfile& profile, double scale) {
  double sum = 0.0;
  for (double phi : profile.phis) {
    const double s = std::sin(scale * phi);
    sum += s * s;
  }
  return std::asin(std::sqrt(sum / static_cast<double>(profile.phis.size())));
}

}  // namespace

double solve_scaled_angle(const AngleProfile& profile, double theta_bar) {
  if (effective_theta(profile, 1.0) <= theta_bar + 1e-13) return 1.0;
  double lo = 0.0, hi = 1.0;
  // theta_c is monotone in c while |c * phi_i| <= pi/2.
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double t = effective_theta(profile, mid);
    if (std::abs(t - theta_bar) <= 1e-13) return mid;
    (t < theta_bar ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct FastRunParams {
  Route route;
  int phase_width = 0;  // 0 on the rz route
  double scale = 1.0;
  int iterations = 0;
  std::string method;
};

RunOutput run_fast_pipeline(const OracleTable& table, const FastRunParams& p) {
  const RegisterLayout layout = fast_layout(table, p.route, p.phase_width);
  const std::vector<double> target = target_state(table);
  const StateVector omega = omega_state(table, layout, p.scale);

  QueryLedger ledger;
  StateVector psi = prepare_s_fast(layout);

  RunOutput out;
  RunReport& rep = out.report;
  rep.method = p.method;
  rep.index_width = table.index_width();
  rep.value_width = table.value_width();
  rep.phase_width = p.route == Route::Kickback ? layout.phase_width : 0;
  rep.iterations = p.iterations;

  const auto try_finalize = [&](StateVector&& copy)
      -> std::pair<double, std::optional<StateVector>> {
    QueryLedger scratch;
    try {
      auto [prob, idx] = finalize(copy, table, scratch, p.route, p.scale);
      return {prob, std::move(idx)};
    } catch (const PostselectError&) {
      return {0.0, std::nullopt};
    }
  };

  const auto record = [&](int j) {
    IterationRecord rec;
    rec.iteration = j;
    rec.queries = ledger.total() + finalize_cost(p.route);
    rec.overlap_omega = std::abs(inner(omega, psi));
    auto [prob, idx] = try_finalize(StateVector(psi));
    rec.p_success = prob;
    rec.fidelity =
        idx ? fidelity_vs_target(idx->amplitudes(), target) : 0.0;
    rep.trace.push_back(rec);
  };

  record(0);
  for (int j = 1; j <= p.iterations; ++j) {
    if (p.route == Route::Rz) {
      u_omega_rz(psi, table, ledger, p.scale);
    } else {
      u_omega_kickback(psi, table, ledger, p.scale);
    }
    u_s_fast(psi);
    record(j);
  }

  const IterationRecord& last = rep.trace.back();
  rep.final_overlap = last.overlap_omega;
  std::optional<StateVector> output;
  try {
    auto [prob, idx] = finalize(psi, table, ledger, p.route, p.scale);
    rep.final_p_success = prob;
    output = std::move(idx);
  } catch (const PostselectError&) {
    rep.final_p_success = 0.0;
  }
  rep.total_queries = ledger.total();
  if (!output) {
    rep.postselect_failed = true;
    rep.final_fidelity = 0.0;
    return out;
  }
  rep.final_fidelity = fidelity_vs_target(output->amplitudes(), target);
  out.state = std::move(output);
  return out;
}

}  // namespace

RunOutput run_fast(const OracleTable& table, const FastMethod& method,
                   std::optional<int> iterations) {
  if (method.exactness == Exactness::ScaledAngle) {
    return run_exact_scaled(table, method.route, method.phase_width);
  }
  if (method.exactness == Exactness::PrakashAncilla) {
    throw ConfigError(
        "the extra-ancilla exact variant runs on the baseline pipeline");
  }
  const AngleProfile prof = angles(table);
  FastRunParams p;
  p.route = method.route;
  p.phase_width = method.phase_width;
  p.iterations = iterations ? *iterations : iterations_auto(prof.theta);
  if (p.iterations < 0) throw ConfigError("iteration count must be non-negative");
  p.method = route_name(method.route);
  RunOutput out = run_fast_pipeline(table, p);
  out.report.set_extra("theta", prof.theta);
  return out;
}

RunOutput run_exact_prakash(const OracleTable& table) {
  const AngleProfile prof = angles(table);
  const ThetaBar tb = choose_theta_bar(prof.theta);
  const double p_ratio =
      std::min(1.0, std::pow(std::sin(tb.theta_bar) / std::sin(prof.theta), 2));
  BaselinePipeline ops(table, std::sqrt(p_ratio));
  RunOutput out =
      run_baseline_pipeline(table, ops, tb.k_bar, "baseline+prakash");
  out.report.set_extra("theta", prof.theta);
  out.report.set_extra("theta_bar", tb.theta_bar);
  out.report.set_extra("k_bar", tb.k_bar);
  return out;
}

RunOutput run_exact_scaled(const OracleTable& table, Route route,
                           int phase_width) {
  const AngleProfile prof = angles(table);
  const ThetaBar tb = choose_theta_bar(prof.theta);
  const double scale_c = solve_scaled_angle(prof, tb.theta_bar);
  const double literal_c = tb.theta_bar / prof.theta;

  FastRunParams p;
  p.route = route;
  p.phase_width = phase_width;
  p.scale = scale_c;
  p.iterations = tb.k_bar;
  p.method = std::string(route_name(route)) + "+scaled";
  RunOutput out = run_fast_pipeline(table, p);

  RunReport& rep = out.report;
  rep.set_extra("theta", prof.theta);
  rep.set_extra("theta_bar", tb.theta_bar);
  rep.set_extra("k_bar", tb.k_bar);
  rep.set_extra("scale_c", scale_c);
  const std::vector<double> scaled = scaled_target_state(table, scale_c);
  if (out.state) {
    rep.set_extra("fidelity_original_target", rep.final_fidelity);
    rep.set_extra("fidelity_scaled_target",
                  fidelity_vs_target(out.state->amplitudes(), scaled));
  }

  // Comparison mode: the literal scale theta_bar/theta, reported alongside.
  FastRunParams lit = p;
  lit.scale = literal_c;
  RunOutput lit_out = run_fast_pipeline(table, lit);
  rep.set_extra("literal_scale", literal_c);
  rep.set_extra("literal_p_success", lit_out.report.final_p_success);
  if (lit_out.state) {
    rep.set_extra("literal_fidelity_original_target",
                  lit_out.report.final_fidelity);
    rep.set_extra(
        "literal_fidelity_scaled_target",
        fidelity_vs_target(lit_out.state->amplitudes(),
                           scaled_target_state(table, literal_c)));
  }
  return out;
}

}  // namespace qprep
