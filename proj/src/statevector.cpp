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

#include "qprep/statevector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qprep/error.hpp"

namespace qprep {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kPostselectFloor = 1e-15;
constexpr double kOrthoTol = 1e-10;

const double kSqrt1_2 = 1.0 / std::numbers::sqrt2;

bool is_unitary(const Mat2& m) {
  // Columns orthonormal.
  const double n0 = std::norm(m.a) + std::norm(m.c);
  const double n1 = std::norm(m.b) + std::norm(m.d);
  const Amplitude dot = std::conj(m.a) * m.b + std::conj(m.c) * m.d;
  return std::abs(n0 - 1.0) <= kUnitaryTol && std::abs(n1 - 1.0) <= kUnitaryTol &&
         std::abs(dot) <= kUnitaryTol;
}

}  // namespace

const char* reg_name(Reg r) {
  switch (r) {
    case Reg::Index: return "index";
    case Reg::Value: return "value";
    case Reg::Ancilla: return "ancilla";
    case Reg::Extra: return "extra";
    case Reg::Phase: return "phase";
  }
  return "?";
}

RegisterLayout::RegisterLayout(int n, int m, int ancillas, int q, int width_cap)
    : index_width(n), value_width(m), ancilla_count(ancillas), phase_width(q) {
  if (n < 0 || m < 0 || q < 0 || ancillas < 0 || ancillas > 2) {
    throw ConfigError("invalid register layout");
  }
  if (total_width() > width_cap || total_width() >= 63) {
    throw ConfigError("layout needs " + std::to_string(total_width()) +
                      " qubits, exceeding the cap of " + std::to_string(width_cap));
  }
}

int RegisterLayout::width(Reg r) const {
  switch (r) {
    case Reg::Index: return index_width;
    case Reg::Value: return value_width;
    case Reg::Ancilla: return ancilla_count >= 1 ? 1 : 0;
    case Reg::Extra: return ancilla_count >= 2 ? 1 : 0;
    case Reg::Phase: return phase_width;
  }
  return 0;
}

int RegisterLayout::offset(Reg r) const {
  switch (r) {
    case Reg::Index: return 0;
    case Reg::Value: return index_width;
    case Reg::Ancilla: return index_width + value_width;
    case Reg::Extra: return index_width + value_width + 1;
    case Reg::Phase: return index_width + value_width + ancilla_count;
  }
  return 0;
}

std::uint64_t RegisterLayout::mask(Reg r) const {
  return ((std::uint64_t{1} << width(r)) - 1) << offset(r);
}

Mat2 h_mat() { return {kSqrt1_2, kSqrt1_2, kSqrt1_2, -kSqrt1_2}; }
Mat2 x_mat() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 z_mat() { return {1.0, 0.0, 0.0, -1.0}; }

Mat2 ry_mat(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {c, -s, s, c};
}

Mat2 rz_mat(double angle) {
  return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
}

GateSpec GateSpec::h(int target) { return {GateKind::H, 0.0, h_mat(), target, {}}; }
GateSpec GateSpec::x(int target) { return {GateKind::X, 0.0, x_mat(), target, {}}; }
GateSpec GateSpec::z(int target) { return {GateKind::Z, 0.0, z_mat(), target, {}}; }

GateSpec GateSpec::ry(double angle, int target) {
  return {GateKind::Ry, angle, ry_mat(angle), target, {}};
}

GateSpec GateSpec::rz(double angle, int target) {
  return {GateKind::Rz, angle, rz_mat(angle), target, {}};
}

GateSpec GateSpec::custom(const Mat2& matrix, int target) {
  return {GateKind::Custom, 0.0, matrix, target, {}};
}

GateSpec& GateSpec::controlled_by(int qubit, bool bit) {
  controls.push_back({qubit, bit});
  return *this;
}

StateVector::StateVector(const RegisterLayout& layout, std::uint64_t bits)
    : layout_(layout), amps_(layout.dimension(), Amplitude{0.0}) {
  if (bits >= layout.dimension()) {
    throw ConfigError("basis state out of range for a " +
                      std::to_string(layout.total_width()) + "-qubit layout");
  }
  amps_[bits] = 1.0;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply_gate(const GateSpec& gate) {
  const int w = layout_.total_width();
  if (gate.target < 0 || gate.target >= w) {
    throw ValidationError("gate target out of range");
  }
  std::uint64_t ctrl_mask = 0, ctrl_bits = 0;
  for (const Control& c : gate.controls) {
    if (c.qubit < 0 || c.qubit >= w || c.qubit == gate.target) {
      throw ValidationError("gate control out of range or equal to target");
    }
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (ctrl_mask & bit) throw ValidationError("duplicate gate control");
    ctrl_mask |= bit;
    if (c.bit) ctrl_bits |= bit;
  }
  if (!is_unitary(gate.matrix)) {
    throw ValidationError("gate matrix is not unitary");
  }

  const Mat2& u = gate.matrix;
  const std::uint64_t tbit = std::uint64_t{1} << gate.target;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tbit) continue;
    if ((i & ctrl_mask) != ctrl_bits) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | tbit];
    amps_[i] = u.a * a0 + u.b * a1;
    amps_[i | tbit] = u.c * a0 + u.d * a1;
  }
}

void StateVector::hadamard_register(Reg r) {
  const int lo = layout_.offset(r);
  const int w = layout_.width(r);
  for (int q = 0; q < w; ++q) apply_gate(GateSpec::h(lo + q));
}

void StateVector::flip_register(Reg r) {
  const std::uint64_t mask = layout_.mask(r);
  if (mask == 0) return;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ mask;
    if (i < j) std::swap(amps_[i], amps_[j]);
  }
}

void StateVector::qft_register(Reg r, bool inverse,
                               std::optional<Control> control) {
  const int lo = layout_.offset(r);
  const int w = layout_.width(r);
  if (w == 0) return;
  const std::uint64_t m = std::uint64_t{1} << w;
  const std::uint64_t dim = amps_.size();
  const double sign = inverse ? -1.0 : 1.0;

  // Radix-2 twiddles: roots[j] = exp(sign * 2*pi*i * j / m).
  std::vector<Amplitude> roots(m / 2);
  for (std::uint64_t j = 0; j < m / 2; ++j) {
    roots[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                   static_cast<double>(j) / static_cast<double>(m));
  }

  std::uint64_t ctrl_bit = 0;
  bool ctrl_val = false;
  if (control) {
    if (control->qubit < 0 || control->qubit >= layout_.total_width() ||
        (control->qubit >= lo && control->qubit < lo + w)) {
      throw ValidationError("QFT control qubit must lie outside the register");
    }
    ctrl_bit = std::uint64_t{1} << control->qubit;
    ctrl_val = control->bit;
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const std::uint64_t low_mask = (std::uint64_t{1} << lo) - 1;
  std::vector<Amplitude> buf(m);
  for (std::uint64_t s = 0; s < dim >> w; ++s) {
    const std::uint64_t base = ((s & ~low_mask) << w) | (s & low_mask);
    if (control && ((base & ctrl_bit) != 0) != ctrl_val) continue;

    for (std::uint64_t j = 0; j < m; ++j) buf[j] = amps_[base | (j << lo)];

    // In-place Cooley-Tukey: bit-reversal permutation, then butterflies.
    for (std::uint64_t i = 1, j = 0; i < m; ++i) {
      std::uint64_t bit = m >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(buf[i], buf[j]);
    }
    for (std::uint64_t len = 2; len <= m; len <<= 1) {
      const std::uint64_t step = m / len;
      for (std::uint64_t i = 0; i < m; i += len) {
        for (std::uint64_t j = 0; j < len / 2; ++j) {
          const Amplitude v = buf[i + j + len / 2] * roots[j * step];
          const Amplitude u = buf[i + j];
          buf[i + j] = u + v;
          buf[i + j + len / 2] = u - v;
        }
      }
    }

    for (std::uint64_t j = 0; j < m; ++j) amps_[base | (j << lo)] = buf[j] * scale;
  }
}

void StateVector::reflect_zero(std::span<const Reg> regs) {
  std::uint64_t mask = 0;
  for (Reg r : regs) mask |= layout_.mask(r);
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == 0) amps_[i] = -amps_[i];
  }
}

void StateVector::reflect_zero(std::initializer_list<Reg> regs) {
  reflect_zero(std::span<const Reg>(regs.begin(), regs.size()));
}

double StateVector::outcome_probability(Reg r, std::uint64_t outcome) const {
  if (outcome >= (std::uint64_t{1} << layout_.width(r))) {
    throw ValidationError(std::string("outcome out of range for register ") +
                          reg_name(r));
  }
  const std::uint64_t mask = layout_.mask(r);
  const std::uint64_t want = outcome << layout_.offset(r);
  double p = 0.0;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == want) p += std::norm(amps_[i]);
  }
  return p;
}

std::pair<double, StateVector> StateVector::postselect(
    Reg r, std::uint64_t outcome) const {
  const double p = outcome_probability(r, outcome);
  if (p < kPostselectFloor) {
    throw PostselectError(std::string("post-selecting ") + reg_name(r) + " = " +
                          std::to_string(outcome) + " has probability " +
                          std::to_string(p));
  }
  StateVector out(*this);
  const std::uint64_t mask = layout_.mask(r);
  const std::uint64_t want = outcome << layout_.offset(r);
  const double scale = 1.0 / std::sqrt(p);
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    out.amps_[i] = ((i & mask) == want) ? out.amps_[i] * scale : Amplitude{0.0};
  }
  return {p, std::move(out)};
}

void StateVector::apply_conditioned(
    Reg cond, Reg target, const std::function<Mat2(std::uint64_t)>& per_value) {
  if (layout_.width(target) != 1) {
    throw ValidationError(std::string("conditioned target register ") +
                          reg_name(target) + " must be one qubit");
  }
  const std::uint64_t values = std::uint64_t{1} << layout_.width(cond);
  std::vector<Mat2> table(values);
  for (std::uint64_t v = 0; v < values; ++v) {
    table[v] = per_value(v);
    if (!is_unitary(table[v])) {
      throw ValidationError("conditioned gate matrix is not unitary");
    }
  }
  const std::uint64_t tbit = std::uint64_t{1} << layout_.offset(target);
  const int cond_lo = layout_.offset(cond);
  const std::uint64_t cond_mask = values - 1;
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tbit) continue;
    const Mat2& u = table[(i >> cond_lo) & cond_mask];
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | tbit];
    amps_[i] = u.a * a0 + u.b * a1;
    amps_[i | tbit] = u.c * a0 + u.d * a1;
  }
}

void StateVector::permute_basis(
    const std::function<std::uint64_t(std::uint64_t)>& map) {
  const std::uint64_t dim = amps_.size();
  std::vector<Amplitude> next(dim, Amplitude{0.0});
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = map(i);
    if (j >= dim) throw ValidationError("basis permutation out of range");
    next[j] = amps_[i];
  }
  amps_ = std::move(next);
}

Amplitude inner(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) {
    throw ValidationError("inner product of states with different layouts");
  }
  Amplitude s{0.0};
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes();
  for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
  return s;
}

double fidelity_mod_phase(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

double subspace_residual(const StateVector& state,
                         std::span<const StateVector> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(std::abs(inner(basis[i], basis[j])) - expect) > kOrthoTol) {
        throw ValidationError("subspace basis is not orthonormal");
      }
    }
  }
  std::vector<Amplitude> rest(state.amplitudes().begin(),
                              state.amplitudes().end());
  for (const StateVector& b : basis) {
    const Amplitude coeff = inner(b, state);
    const auto bv = b.amplitudes();
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= coeff * bv[k];
  }
  double s = 0.0;
  for (const Amplitude& a : rest) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace qprep
