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

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qprep {

using Amplitude = std::complex<double>;

/// Named sub-registers of a simulated machine.
enum class Reg { Index, Value, Ancilla, Extra, Phase };

const char* reg_name(Reg r);

/// Contiguous qubit layout: index occupies the lowest qubit positions, then
/// value, the ancilla, the optional extra ancilla, and the phase register on
/// top. Total width is capped so the dense amplitude array stays in memory.
struct RegisterLayout {
  int index_width = 0;    // n
  int value_width = 0;    // m
  int ancilla_count = 0;  // 0, 1 (ancilla) or 2 (ancilla + extra)
  int phase_width = 0;    // q

  static constexpr int kDefaultWidthCap = 26;

  RegisterLayout() = default;
  RegisterLayout(int n, int m, int ancillas, int q = 0,
                 int width_cap = kDefaultWidthCap);

  int total_width() const {
    return index_width + value_width + ancilla_count + phase_width;
  }
  std::uint64_t dimension() const { return std::uint64_t{1} << total_width(); }

  int width(Reg r) const;
  int offset(Reg r) const;
  std::uint64_t mask(Reg r) const;
  /// Content of register `r` in the basis state `basis`.
  std::uint64_t field(std::uint64_t basis, Reg r) const {
    return (basis >> offset(r)) & ((std::uint64_t{1} << width(r)) - 1);
  }

  bool operator==(const RegisterLayout&) const = default;
};

/// Row-major 2x2 complex matrix.
struct Mat2 {
  Amplitude a, b;  // first row
  Amplitude c, d;  // second row
};

Mat2 h_mat();
Mat2 x_mat();
Mat2 z_mat();
/// Ry(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
Mat2 ry_mat(double angle);
/// Rz(t) = diag(e^{-it/2}, e^{+it/2})
Mat2 rz_mat(double angle);

/// Control condition: the computation applies only where `qubit` equals `bit`.
struct Control {
  int qubit;
  bool bit = true;
};

enum class GateKind { H, X, Z, Ry, Rz, Custom };

/// Single-qubit gate, optionally controlled on other qubits.
struct GateSpec {
  GateKind kind = GateKind::Custom;
  double angle = 0.0;
  Mat2 matrix{};
  int target = 0;
  std::vector<Control> controls;

  static GateSpec h(int target);
  static GateSpec x(int target);
  static GateSpec z(int target);
  static GateSpec ry(double angle, int target);
  static GateSpec rz(double angle, int target);
  static GateSpec custom(const Mat2& matrix, int target);

  GateSpec& controlled_by(int qubit, bool bit = true);
};

/// Dense statevector over a RegisterLayout. Operations preserve the L2 norm;
/// nothing renormalizes behind the caller's back.
class StateVector {
 public:
  /// The basis state |bits> of the given layout.
  StateVector(const RegisterLayout& layout, std::uint64_t bits);

  const RegisterLayout& layout() const { return layout_; }
  std::uint64_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude amp(std::uint64_t basis) const { return amps_[basis]; }
  void set_amp(std::uint64_t basis, Amplitude v) { amps_[basis] = v; }
  double norm() const;

  void apply_gate(const GateSpec& gate);
  /// H on every qubit of the register.
  void hadamard_register(Reg r);
  /// X on every qubit of the register (one pass).
  void flip_register(Reg r);
  /// Exact QFT on the register. Forward maps the all-ones basis state to
  /// (1/sqrt(M)) * sum_k exp(-2*pi*i*k/M) |k>. Optionally applied only on
  /// the slice where `control` holds.
  void qft_register(Reg r, bool inverse,
                    std::optional<Control> control = std::nullopt);
  /// Negates the amplitude of every basis state whose named registers are
  /// all zero (I - 2|0><0| on their joint span).
  void reflect_zero(std::span<const Reg> regs);
  void reflect_zero(std::initializer_list<Reg> regs);

  /// Probability of measuring `outcome` on register `r`.
  double outcome_probability(Reg r, std::uint64_t outcome) const;
  /// Born-rule post-selection: returns (probability, renormalized state with
  /// the register pinned to `outcome`). Throws PostselectError when the
  /// probability is below 1e-15.
  std::pair<double, StateVector> postselect(Reg r, std::uint64_t outcome) const;

  /// Applies a single-qubit unitary to the one-qubit register `target`,
  /// selected per basis state by the content of register `cond`.
  void apply_conditioned(Reg cond, Reg target,
                         const std::function<Mat2(std::uint64_t)>& per_value);

  /// Remaps basis states: basis |x> moves to |permute(x)>. The map must be a
  /// bijection; used for arithmetic operators such as modular addition.
  void permute_basis(const std::function<std::uint64_t(std::uint64_t)>& map);

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

/// <a|b>; layouts must match.
Amplitude inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2, invariant under global phase of either argument.
double fidelity_mod_phase(const StateVector& a, const StateVector& b);

/// Norm of the component of `state` orthogonal to span(basis).
/// The basis must be mutually orthonormal within 1e-10.
double subspace_residual(const StateVector& state,
                         std::span<const StateVector> basis);

}  // namespace qprep
