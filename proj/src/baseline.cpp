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

#include "qprep/baseline.hpp"

#include <cmath>
#include <numbers>

#include "qprep/error.hpp"

namespace qprep {

namespace {

constexpr double kFailureFloor = 1e-15;

Mat2 ry_from_phi(double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  return {s, c, c, -s};
}

}  // namespace

void conditioned_ry(StateVector& state, const OracleTable& table) {
  if (state.layout().width(Reg::Value) != table.value_width()) {
    throw ValidationError("value register width does not match the oracle");
  }
  const double f_max = static_cast<double>(table.max_abs());
  state.apply_conditioned(Reg::Value, Reg::Ancilla, [&](std::uint64_t v) {
    const double phi = std::numbers::pi * static_cast<double>(table.decode(v)) /
                       (2.0 * f_max);
    return ry_from_phi(phi);
  });
}

BaselinePipeline::BaselinePipeline(const OracleTable& table,
                                   std::optional<double> extra_zero_amp)
    : table_(table),
      extra_zero_amp_(extra_zero_amp),
      layout_(table.index_width(), table.value_width(),
              extra_zero_amp ? 2 : 1) {
  if (extra_zero_amp &&
      (*extra_zero_amp <= 0.0 || *extra_zero_amp > 1.0 + 1e-12)) {
    throw ConfigError("extra ancilla amplitude must lie in (0, 1]");
  }
}

void BaselinePipeline::apply_ur(StateVector& state, QueryLedger& ledger,
                                bool inverse) const {
  // U_r = U_f^-1 R_y U_f H^n (tensored with the extra-ancilla preparation);
  // the conditioned R_y is self-inverse, so the inverse just reorders factors.
  const int extra_qubit = layout_.offset(Reg::Extra);
  const double a = extra_zero_amp_.value_or(1.0);
  const double extra_angle = 2.0 * std::acos(std::min(1.0, a));
  if (!inverse) {
    state.hadamard_register(Reg::Index);
    if (has_extra()) state.apply_gate(GateSpec::ry(extra_angle, extra_qubit));
    apply_uf(state, table_, Direction::Forward, Reg::Value, ledger);
    conditioned_ry(state, table_);
    apply_uf(state, table_, Direction::Inverse, Reg::Value, ledger);
  } else {
    apply_uf(state, table_, Direction::Forward, Reg::Value, ledger);
    conditioned_ry(state, table_);
    apply_uf(state, table_, Direction::Inverse, Reg::Value, ledger);
    if (has_extra()) state.apply_gate(GateSpec::ry(-extra_angle, extra_qubit));
    state.hadamard_register(Reg::Index);
  }
}

StateVector BaselinePipeline::prepare(QueryLedger& ledger) const {
  StateVector state(layout_, 0);
  apply_ur(state, ledger, false);
  return state;
}

void BaselinePipeline::u_omega(StateVector& state) const {
  if (has_extra()) {
    state.reflect_zero({Reg::Ancilla, Reg::Extra});
    return;
  }
  const int anc = layout_.offset(Reg::Ancilla);
  state.apply_gate(GateSpec::x(anc));
  state.apply_gate(GateSpec::z(anc));
  state.apply_gate(GateSpec::x(anc));
}

void BaselinePipeline::u_s(StateVector& state, QueryLedger& ledger) const {
  apply_ur(state, ledger, true);
  if (has_extra()) {
    state.reflect_zero({Reg::Index, Reg::Value, Reg::Ancilla, Reg::Extra});
  } else {
    state.reflect_zero({Reg::Index, Reg::Value, Reg::Ancilla});
  }
  apply_ur(state, ledger, false);
}

void BaselinePipeline::iterate(StateVector& state, QueryLedger& ledger) const {
  u_omega(state);
  u_s(state, ledger);
}

double BaselinePipeline::success_probability(const StateVector& state) const {
  const RegisterLayout& layout = state.layout();
  const std::uint64_t idx_mask = layout.mask(Reg::Index);
  double p = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & ~idx_mask) == 0) p += std::norm(amps[i]);
  }
  return p;
}

StateVector BaselinePipeline::target_in_layout() const {
  const std::vector<double> target = target_state(table_);
  StateVector out(layout_, 0);
  out.set_amp(0, 0.0);
  for (std::uint64_t i = 0; i < target.size(); ++i) {
    out.set_amp(i, target[i]);
  }
  return out;
}

int iterations_auto(double theta) {
  if (!(theta > 0.0) || theta > std::numbers::pi / 2 + 1e-12) {
    throw ConfigError("theta must lie in (0, pi/2]");
  }
  const double x = std::numbers::pi / (4.0 * theta) - 0.5;
  const long lo = std::max(0L, static_cast<long>(std::floor(x)));
  const long hi = std::max(0L, static_cast<long>(std::ceil(x)));
  const auto score = [theta](long k) {
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
    return s * s;
  };
  if (hi == lo) return static_cast<int>(lo);
  const double s_lo = score(lo), s_hi = score(hi);
  if (std::abs(s_lo - s_hi) <= 1e-12) return static_cast<int>(std::min(lo, hi));
  return static_cast<int>(s_lo >= s_hi ? lo : hi);
}

RunOutput run_baseline(const OracleTable& table, std::optional<int> iterations) {
  const AngleProfile prof = angles(table);
  const int k = iterations ? *iterations : iterations_auto(prof.theta);
  RunOutput out =
      run_baseline_pipeline(table, BaselinePipeline(table), k, "baseline");
  out.report.set_extra("theta", prof.theta);
  return out;
}

RunOutput run_baseline_pipeline(const OracleTable& table,
                                const BaselinePipeline& ops, int iterations,
                                std::string method) {
  const int k = iterations;
  if (k < 0) throw ConfigError("iteration count must be non-negative");

  QueryLedger ledger;
  StateVector psi = ops.prepare(ledger);
  // The target state doubles as the good-axis omega of this pipeline.
  const StateVector omega = ops.target_in_layout();

  RunOutput out;
  RunReport& rep = out.report;
  rep.method = std::move(method);
  rep.index_width = table.index_width();
  rep.value_width = table.value_width();
  rep.iterations = k;

  const auto record = [&](int j) {
    IterationRecord rec;
    rec.iteration = j;
    rec.queries = ledger.total();
    rec.p_success = ops.success_probability(psi);
    rec.overlap_omega = std::abs(inner(omega, psi));
    rec.fidelity = rec.p_success < kFailureFloor ? 0.0 : rec.overlap_omega *
                       rec.overlap_omega / rec.p_success;
    rep.trace.push_back(rec);
  };

  record(0);
  for (int j = 1; j <= k; ++j) {
    ops.iterate(psi, ledger);
    record(j);
  }

  rep.total_queries = ledger.total();
  const IterationRecord& last = rep.trace.back();
  rep.final_p_success = last.p_success;
  rep.final_overlap = last.overlap_omega;
  if (last.p_success < kFailureFloor) {
    rep.postselect_failed = true;
    rep.final_fidelity = 0.0;
    return out;
  }
  StateVector collapsed = psi.postselect(Reg::Value, 0).second;
  collapsed = collapsed.postselect(Reg::Ancilla, 0).second;
  if (ops.has_extra()) collapsed = collapsed.postselect(Reg::Extra, 0).second;
  rep.final_fidelity = fidelity_mod_phase(collapsed, ops.target_in_layout());
  out.state = std::move(collapsed);
  return out;
}

}  // namespace qprep
