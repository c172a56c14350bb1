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

#ifndef CUTREG_ANSATZ_HPP
#define CUTREG_ANSATZ_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cutreg/circuit.hpp"
#include "cutreg/qpd.hpp"
#include "cutreg/statevector.hpp"

namespace cutreg {

struct AnsatzConfig {
  std::size_t num_qubits = 6;
  std::size_t num_partitions = 3;
  std::size_t num_layers = 2;
  /// Empty means the mean-Z observable (1/N) Σ_q Z_q.
  Observable observable{};

  std::size_t num_features() const { return num_layers * num_qubits; }

  void validate() const {
    if (num_qubits < 4 || num_qubits % 2 != 0) {
      throw std::invalid_argument("num_qubits must be even and at least 4");
    }
    if (num_partitions == 0 || num_qubits % num_partitions != 0) {
      throw std::invalid_argument("num_partitions must divide num_qubits");
    }
    if (num_layers == 0) throw std::invalid_argument("num_layers must be at least 1");
  }
};

/// Trainable rotation angles and cutting angles, in radians.
struct ParameterSet {
  std::vector<double> theta;
  std::vector<double> alpha;

  std::size_t size() const { return theta.size() + alpha.size(); }

  /// theta followed by alpha.
  std::vector<double> flat() const {
    std::vector<double> out(theta);
    out.insert(out.end(), alpha.begin(), alpha.end());
    return out;
  }

  void assign_flat(std::span<const double> values) {
    if (values.size() != size()) throw std::invalid_argument("flat parameter size mismatch");
    std::copy_n(values.begin(), theta.size(), theta.begin());
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(theta.size()), values.end(),
              alpha.begin());
  }

  bool is_alpha(std::size_t flat_index) const { return flat_index >= theta.size(); }
};

/// A parameterized circuit together with its cuts and readout observable.
struct Model {
  Circuit circuit;
  CutSpec cuts;
  Observable observable;
  std::size_t num_theta = 0;
  std::size_t num_alpha = 0;
  std::size_t num_features = 0;

  ParameterSet zero_parameters() const {
    return {std::vector<double>(num_theta, 0.0), std::vector<double>(num_alpha, 0.0)};
  }

  void check(const ParameterSet& params) const {
    if (params.theta.size() != num_theta || params.alpha.size() != num_alpha) {
      throw std::invalid_argument("parameter set does not match the model");
    }
  }
};

/// Layered hardware-efficient ansatz. Each layer ℓ applies, in order:
/// Rx(x[ℓN + q]) on every qubit q; Ry(θ[2(ℓN + q)]) then Rz(θ[2(ℓN + q) + 1])
/// on every qubit; nearest-neighbour entanglers on bonds (q, q+1), as CZ when
/// both qubits share a partition and as a cut Rzz(α[ℓ(P-1) + b]) on the b-th
/// partition-crossing bond otherwise. Partitions are contiguous equal blocks.
inline Model build_ansatz(const AnsatzConfig& config) {
  config.validate();
  const std::size_t n = config.num_qubits;
  const std::size_t block = n / config.num_partitions;

  Model model;
  Circuit& c = model.circuit;
  c.num_qubits = n;
  c.partition_of.resize(n);
  for (std::size_t q = 0; q < n; ++q) c.partition_of[q] = q / block;

  std::size_t cut_index = 0;
  for (std::size_t layer = 0; layer < config.num_layers; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      c.ops.push_back({GateKind::Rx, {q, 0}, Feature{layer * n + q}});
    }
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t t = 2 * (layer * n + q);
      c.ops.push_back({GateKind::Ry, {q, 0}, Trainable{t}});
      c.ops.push_back({GateKind::Rz, {q, 0}, Trainable{t + 1}});
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
      if (c.partition_of[q] == c.partition_of[q + 1]) {
        c.ops.push_back({GateKind::CZ, {q, q + 1}, std::monostate{}});
      } else {
        c.cut_gates.push_back(c.ops.size());
        c.ops.push_back({GateKind::Rzz, {q, q + 1}, CutAngle{cut_index++}});
      }
    }
  }
  c.validate();

  model.cuts = CutSpec::from(c);
  model.observable = config.observable.terms.empty() ? Observable::mean_z(n) : config.observable;
  model.num_theta = 2 * n * config.num_layers;
  model.num_alpha = cut_index;
  model.num_features = config.num_features();
  return model;
}

struct FullMode {};
struct CutExactMode {};
struct CutSampledMode {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};
using ForwardMode = std::variant<FullMode, CutExactMode, CutSampledMode>;

/// Uncut state prepared for input `x`.
inline StateVector prepare_state(const Model& model, const ParameterSet& params,
                                 std::span<const double> x) {
  model.check(params);
  return simulate(model.circuit, Bindings{params.theta, x, params.alpha});
}

/// Model prediction: the observable expectation, computed in `mode`.
inline double forward(const Model& model, const ParameterSet& params, std::span<const double> x,
                      const ForwardMode& mode, const CutOptions& options = {}) {
  model.check(params);
  if (x.size() != model.num_features) throw std::invalid_argument("feature count mismatch");
  const Bindings b{params.theta, x, params.alpha};
  if (std::holds_alternative<FullMode>(mode)) {
    return expectation(simulate(model.circuit, b), model.observable);
  }
  if (std::holds_alternative<CutExactMode>(mode)) {
    return evaluate_exact(model.circuit, model.cuts, b, model.observable, options);
  }
  const auto& s = std::get<CutSampledMode>(mode);
  return evaluate_sampled(model.circuit, model.cuts, b, model.observable, s.samples, s.seed,
                          options)
      .mean;
}

namespace detail {

using Mat4 = std::array<std::array<Complex, 4>, 4>;

// Dense matrix of a two-qubit gate sequence on qubits (0, 1), built column by
// column from basis states.
template <typename Apply>
Mat4 two_qubit_matrix(Apply&& apply) {
  Mat4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    std::vector<Complex> amps(4, 0.0);
    amps[col] = 1.0;
    StateVector s(2, std::move(amps));
    apply(s);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = s[row];
  }
  return m;
}

inline double max_deviation(const Mat4& a, const Mat4& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

}  // namespace detail

/// max |CZ - e^{iπ/4}(S†⊗S†)Rzz(angle)| entrywise.
inline double cz_rzz_deviation(double angle) {
  static constexpr std::array<std::size_t, 2> pair{0, 1};
  static constexpr std::array<std::size_t, 1> q0{0};
  static constexpr std::array<std::size_t, 1> q1{1};
  const auto cz = detail::two_qubit_matrix([](StateVector& s) { apply_gate(s, GateKind::CZ, pair); });
  const Complex phase = std::polar(1.0, std::numbers::pi / 4.0);
  auto via_rzz = detail::two_qubit_matrix([&](StateVector& s) {
    apply_gate(s, GateKind::Rzz, pair, angle);
    apply_gate(s, GateKind::Sdg, q0);
    apply_gate(s, GateKind::Sdg, q1);
    s *= phase;
  });
  detail::Mat4 expected{};
  for (std::size_t i = 0; i < 4; ++i) expected[i][i] = (i == 3) ? -1.0 : 1.0;
  return std::max(detail::max_deviation(via_rzz, cz), detail::max_deviation(cz, expected));
}

/// max |CX - (I⊗H)CZ(I⊗H)| entrywise, control on qubit 0 and target on qubit 1.
inline double cx_cz_deviation() {
  static constexpr std::array<std::size_t, 2> pair{0, 1};
  static constexpr std::array<std::size_t, 1> q1{1};
  const auto via_cz = detail::two_qubit_matrix([](StateVector& s) {
    apply_gate(s, GateKind::H, q1);
    apply_gate(s, GateKind::CZ, pair);
    apply_gate(s, GateKind::H, q1);
  });
  // CX with control = bit 0, target = bit 1: swaps |01⟩ (index 1) and |11⟩ (index 3).
  detail::Mat4 cx{};
  cx[0][0] = cx[2][2] = 1.0;
  cx[1][3] = cx[3][1] = 1.0;
  return detail::max_deviation(via_cz, cx);
}

/// True when CZ = e^{iπ/4}(S†⊗S†)Rzz(π/2) and CX = (I⊗H)CZ(I⊗H) within 1e-12.
inline bool cz_to_rzz_identity_check() {
  return cz_rzz_deviation(std::numbers::pi / 2.0) <= 1e-12 && cx_cz_deviation() <= 1e-12;
}

}  // namespace cutreg

#endif  // CUTREG_ANSATZ_HPP
