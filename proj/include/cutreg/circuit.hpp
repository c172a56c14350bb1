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

#ifndef CUTREG_CIRCUIT_HPP
#define CUTREG_CIRCUIT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutreg/statevector.hpp"

namespace cutreg {

/// Ordered gate list over indexed qubits. `partition_of[q]` labels the
/// partition of qubit q; `cut_gates` lists the positions in `ops` of the Rzz
/// gates that are cut.
struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<GateOp> ops;
  std::vector<std::size_t> partition_of;
  std::vector<std::size_t> cut_gates;

  std::size_t num_partitions() const {
    std::size_t p = 0;
    for (auto id : partition_of) p = std::max(p, id + 1);
    return p;
  }

  bool is_cut(std::size_t position) const {
    return std::binary_search(cut_gates.begin(), cut_gates.end(), position);
  }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const {
    if (num_qubits == 0) throw std::invalid_argument("circuit has no qubits");
    if (partition_of.size() != num_qubits) {
      throw std::invalid_argument("partition_of must label every qubit");
    }
    const std::size_t parts = num_partitions();
    std::vector<bool> seen(parts, false);
    for (auto id : partition_of) seen[id] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw std::invalid_argument("partition ids must form a contiguous range 0..P-1");
    }
    if (!std::is_sorted(cut_gates.begin(), cut_gates.end()) ||
        std::adjacent_find(cut_gates.begin(), cut_gates.end()) != cut_gates.end()) {
      throw std::invalid_argument("cut positions must be strictly increasing");
    }
    for (std::size_t pos = 0; pos < ops.size(); ++pos) {
      const GateOp& op = ops[pos];
      for (auto q : op.targets()) {
        if (q >= num_qubits) throw std::invalid_argument("gate qubit index out of range");
      }
      const bool has_binding = !std::holds_alternative<std::monostate>(op.binding);
      if (has_binding != is_parameterized(op.kind)) {
        throw std::invalid_argument("binding presence must match gate parameterization");
      }
      if (arity(op.kind) == 2) {
        if (op.qubits[0] == op.qubits[1]) {
          throw std::invalid_argument("two-qubit gate on repeated qubit");
        }
        const bool straddles = partition_of[op.qubits[0]] != partition_of[op.qubits[1]];
        if (is_cut(pos)) {
          if (op.kind != GateKind::Rzz || !straddles) {
            throw std::invalid_argument("cut gate must be an Rzz spanning two partitions");
          }
        } else if (straddles) {
          throw std::invalid_argument("non-cut gate at position " + std::to_string(pos) +
                                      " straddles partitions");
        }
      } else if (is_cut(pos)) {
        throw std::invalid_argument("cut gate must be an Rzz spanning two partitions");
      }
    }
    for (auto pos : cut_gates) {
      if (pos >= ops.size()) throw std::invalid_argument("cut position out of range");
    }
  }
};

/// Values the bindings of a circuit resolve against.
struct Bindings {
  std::span<const double> theta;
  std::span<const double> features;
  std::span<const double> alpha;

  std::optional<double> resolve(const ParamBinding& binding) const {
    struct Visitor {
      const Bindings& b;
      std::optional<double> operator()(std::monostate) const { return std::nullopt; }
      std::optional<double> operator()(Constant c) const { return c.value; }
      std::optional<double> operator()(Trainable t) const { return pick(b.theta, t.index); }
      std::optional<double> operator()(Feature f) const { return pick(b.features, f.index); }
      std::optional<double> operator()(CutAngle a) const { return pick(b.alpha, a.index); }
      static std::optional<double> pick(std::span<const double> v, std::size_t i) {
        if (i >= v.size()) throw std::out_of_range("binding index out of range");
        return v[i];
      }
    };
    return std::visit(Visitor{*this}, binding);
  }
};

/// Uncut statevector simulation from |0...0⟩.
inline StateVector simulate(const Circuit& circuit, const Bindings& bindings) {
  StateVector state(circuit.num_qubits);
  for (const auto& op : circuit.ops) apply_gate(state, op, bindings.resolve(op.binding));
  return state;
}

inline std::string binding_label(const ParamBinding& binding) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(Constant c) const {
      std::ostringstream os;
      os << c.value;
      return os.str();
    }
    std::string operator()(Trainable t) const { return "t" + std::to_string(t.index); }
    std::string operator()(Feature f) const { return "x" + std::to_string(f.index); }
    std::string operator()(CutAngle a) const { return "a" + std::to_string(a.index); }
  };
  return std::visit(Visitor{}, binding);
}

/// Text diagram, one row per qubit and one column per op. Two-qubit gates
/// print their label on both wires; cut gates carry a trailing '%'. Rows are
/// prefixed with the qubit index and its partition id.
inline std::string to_text(const Circuit& circuit) {
  const std::size_t n = circuit.num_qubits;
  // Greedy moments: an op goes one column after the latest op on its qubits.
  std::vector<std::size_t> depth(n, 0);
  std::vector<std::vector<std::string>> cells;  // cells[moment][qubit]
  for (std::size_t pos = 0; pos < circuit.ops.size(); ++pos) {
    const GateOp& op = circuit.ops[pos];
    const auto t = op.targets();
    std::size_t m = 0;
    for (auto q : t) m = std::max(m, depth[q]);
    for (auto q : t) depth[q] = m + 1;
    if (cells.size() <= m) cells.resize(m + 1, std::vector<std::string>(n));
    std::string label(gate_name(op.kind));
    if (is_parameterized(op.kind)) label += "(" + binding_label(op.binding) + ")";
    if (circuit.is_cut(pos)) label += "%";
    for (auto q : t) cells[m][q] = label;
  }

  std::vector<std::string> rows(n);
  for (std::size_t q = 0; q < n; ++q) {
    rows[q] = "q" + std::to_string(q) + "[p" +
              std::to_string(q < circuit.partition_of.size() ? circuit.partition_of[q] : 0) + "]:";
  }
  std::size_t head = 0;
  for (auto& r : rows) head = std::max(head, r.size());
  for (auto& r : rows) r.resize(head + 1, ' '), r += '-';

  for (const auto& column : cells) {
    std::size_t width = 0;
    for (const auto& c : column) width = std::max(width, c.size());
    for (std::size_t q = 0; q < n; ++q) {
      rows[q] += column[q];
      rows[q] += std::string(width - column[q].size() + 1, '-');
    }
  }
  std::string out;
  for (auto& r : rows) out += r + "\n";
  return out;
}

}  // namespace cutreg

#endif  // CUTREG_CIRCUIT_HPP
