// Copyright 2026 The CutReg Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CUTREG_STATEVECTOR_HPP
#define CUTREG_STATEVECTOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cutreg {

using Complex = std::complex<double>;

/// Dense pure state of n qubits. Qubit 0 is the least-significant bit of the
/// basis-state index. States are not required to be normalized: projections
/// leave unnormalized branches whose squared norm is the outcome probability.
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits)
      : num_qubits_(num_qubits), amps_(dimension_for(num_qubits)) {
    amps_[0] = 1.0;
  }

  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != dimension_for(num_qubits)) {
      throw std::invalid_argument("amplitude vector length must be 2^n");
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  StateVector& operator*=(Complex scale) {
    for (auto& a : amps_) a *= scale;
    return *this;
  }

 private:
  static std::size_t dimension_for(std::size_t n) {
    if (n == 0 || n > 30) {
      throw std::invalid_argument("qubit count must be in [1, 30]");
    }
    return std::size_t{1} << n;
  }

  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

enum class GateKind { Rx, Ry, Rz, Rzz, H, S, Sdg, Z, CZ };

constexpr bool is_parameterized(GateKind kind) {
  return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz ||
         kind == GateKind::Rzz;
}

constexpr std::size_t arity(GateKind kind) {
  return (kind == GateKind::Rzz || kind == GateKind::CZ) ? 2 : 1;
}

constexpr std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return "Rx";
    case GateKind::Ry: return "Ry";
    case GateKind::Rz: return "Rz";
    case GateKind::Rzz: return "Rzz";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::Z: return "Z";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

// Parameter sources for rotation gates.
struct Constant {
  double value;
};
struct Trainable {
  std::size_t index;
};
struct Feature {
  std::size_t index;
};
struct CutAngle {
  std::size_t index;
};
using ParamBinding =
    std::variant<std::monostate, Constant, Trainable, Feature, CutAngle>;

struct GateOp {
  GateKind kind;
  std::array<std::size_t, 2> qubits{0, 0};
  ParamBinding binding{};

  std::span<const std::size_t> targets() const {
    return std::span<const std::size_t>(qubits.data(), arity(kind));
  }
};

namespace detail {

using Mat2 = std::array<Complex, 4>;  // row-major

inline Mat2 single_qubit_matrix(GateKind kind, double angle) {
  using namespace std::complex_literals;
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::Rx: return {c, -1i * s, -1i * s, c};
    case GateKind::Ry: return {c, -s, s, c};
    case GateKind::Rz: return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1.0, 0.0, 0.0, 1i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -1i};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    default: break;
  }
  throw std::logic_error("not a single-qubit gate");
}

inline void apply_mat2(StateVector& state, const Mat2& u, std::size_t q) {
  const std::size_t mask = std::size_t{1} << q;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | mask];
    amps[i] = u[0] * a0 + u[1] * a1;
    amps[i | mask] = u[2] * a0 + u[3] * a1;
  }
}

inline void apply_diag2(StateVector& state, Complex d0, Complex d1, std::size_t q) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    state[i] *= (i & mask) ? d1 : d0;
  }
}

}  // namespace detail

/// Applies `kind` to `targets` with an already-resolved rotation angle.
inline void apply_gate(StateVector& state, GateKind kind,
                       std::span<const std::size_t> targets, double angle = 0.0) {
  if (targets.size() != arity(kind)) {
    throw std::invalid_argument("gate arity does not match target count");
  }
  for (auto q : targets) {
    if (q >= state.num_qubits()) throw std::out_of_range("qubit index out of range");
  }
  if (arity(kind) == 2 && targets[0] == targets[1]) {
    throw std::invalid_argument("two-qubit gate on repeated qubit");
  }

  switch (kind) {
    case GateKind::Rz:
      detail::apply_diag2(state, std::polar(1.0, -angle / 2.0), std::polar(1.0, angle / 2.0),
                          targets[0]);
      return;
    case GateKind::S:
      detail::apply_diag2(state, 1.0, Complex{0.0, 1.0}, targets[0]);
      return;
    case GateKind::Sdg:
      detail::apply_diag2(state, 1.0, Complex{0.0, -1.0}, targets[0]);
      return;
    case GateKind::Z:
      detail::apply_diag2(state, 1.0, -1.0, targets[0]);
      return;
    case GateKind::Rzz: {
      // exp(-i angle/2 Z⊗Z): even parity picks up e^{-i angle/2}.
      const std::size_t ma = std::size_t{1} << targets[0];
      const std::size_t mb = std::size_t{1} << targets[1];
      const Complex even = std::polar(1.0, -angle / 2.0);
      const Complex odd = std::polar(1.0, angle / 2.0);
      for (std::size_t i = 0; i < state.dimension(); ++i) {
        const bool parity = ((i & ma) != 0) != ((i & mb) != 0);
        state[i] *= parity ? odd : even;
      }
      return;
    }
    case GateKind::CZ: {
      const std::size_t both = (std::size_t{1} << targets[0]) | (std::size_t{1} << targets[1]);
      for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & both) == both) state[i] = -state[i];
      }
      return;
    }
    default:
      detail::apply_mat2(state, detail::single_qubit_matrix(kind, angle), targets[0]);
      return;
  }
}

/// Applies a circuit op. Parameterized kinds need a resolved angle.
inline void apply_gate(StateVector& state, const GateOp& op,
                       std::optional<double> resolved_angle = std::nullopt) {
  if (is_parameterized(op.kind) && !resolved_angle) {
    throw std::invalid_argument(std::string("unresolved angle for ") +
                                std::string(gate_name(op.kind)));
  }
  apply_gate(state, op.kind, op.targets(), resolved_angle.value_or(0.0));
}

/// Zeroes every amplitude whose `qubit` bit differs from `outcome`. No
/// renormalization; the squared norm of the result is the outcome probability.
inline StateVector project_z(StateVector state, std::size_t qubit, int outcome) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("qubit index out of range");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t keep = outcome ? mask : 0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if ((i & mask) != keep) state[i] = 0.0;
  }
  return state;
}

/// Single-qubit Z term, weight * Z_qubit.
struct ZTerm {
  double weight;
  std::size_t qubit;
};

struct Observable {
  std::vector<ZTerm> terms;

  double weight_norm() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.weight);
    return s;
  }

  /// (1/n) Σ_q Z_q.
  static Observable mean_z(std::size_t num_qubits) {
    Observable obs;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      obs.terms.push_back({1.0 / static_cast<double>(num_qubits), q});
    }
    return obs;
  }
};

/// <ψ|Z_q|ψ> without normalization.
inline double z_expectation(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("qubit index out of range");
  const std::size_t mask = std::size_t{1} << qubit;
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    acc += (i & mask) ? -std::norm(state[i]) : std::norm(state[i]);
  }
  return acc;
}

/// Σ weight·<ψ|Z_q|ψ>, unnormalized.
inline double expectation(const StateVector& state, const Observable& obs) {
  double acc = 0.0;
  for (const auto& t : obs.terms) acc += t.weight * z_expectation(state, t.qubit);
  return acc;
}

/// Value of the identity observable, Σ|amplitude|².
inline double trace_weight(const StateVector& state) { return state.squared_norm(); }

/// Tr(ρ_k²) for the reduced state of `qubit`.
inline double qubit_purity(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("qubit index out of range");
  if (std::abs(state.squared_norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("qubit_purity requires a normalized state");
  }
  const std::size_t mask = std::size_t{1} << qubit;
  double p0 = 0.0;
  double p1 = 0.0;
  Complex off{0.0, 0.0};  // ρ_01
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (i & mask) continue;
    const Complex a0 = state[i];
    const Complex a1 = state[i | mask];
    p0 += std::norm(a0);
    p1 += std::norm(a1);
    off += a0 * std::conj(a1);
  }
  return p0 * p0 + p1 * p1 + 2.0 * std::norm(off);
}

}  // namespace cutreg

#endif  // CUTREG_STATEVECTOR_HPP
