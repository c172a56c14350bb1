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

// Gate cutting of Rzz gates by quasi-probability decomposition.
//
// Conjugation by Rzz(α) = exp(-iθ Z⊗Z), θ = α/2, expands as
//
//   UρU† = cos²θ ρ + sin²θ (ZZ)ρ(ZZ) + cosθ sinθ (-i[ZZ, ρ])
//
// and the commutator term splits into products of single-qubit maps:
//
//   -i[ZZ, ρ] = (O₋ - O₊) ⊗ M + M ⊗ (O₋ - O₊)
//
// where O± is conjugation by Rz(∓π/2) and M(ρ) = Π₀ρΠ₀ - Π₁ρΠ₁. This gives
// the six channels returned by rzz_channels(), with 1-norm 1 + 2|sin α|.

#ifndef CUTREG_QPD_HPP
#define CUTREG_QPD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutreg/circuit.hpp"
#include "cutreg/parallel.hpp"
#include "cutreg/rng.hpp"
#include "cutreg/statevector.hpp"

namespace cutreg {

/// Thrown when exact recombination would exceed the configured run budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LocalOp : std::uint8_t { Identity, ZGate, RzPlusHalfPi, RzMinusHalfPi, MeasureZSigned };

struct RzzQpdChannel {
  double coefficient;
  LocalOp op_a;  // on the first qubit of the cut gate
  LocalOp op_b;  // on the second qubit
};

inline constexpr std::size_t kChannelsPerCut = 6;

inline std::array<RzzQpdChannel, kChannelsPerCut> rzz_channels(double alpha) {
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  const double cs = c * s;
  return {{
      {c * c, LocalOp::Identity, LocalOp::Identity},
      {s * s, LocalOp::ZGate, LocalOp::ZGate},
      {cs, LocalOp::RzPlusHalfPi, LocalOp::MeasureZSigned},
      {-cs, LocalOp::RzMinusHalfPi, LocalOp::MeasureZSigned},
      {cs, LocalOp::MeasureZSigned, LocalOp::RzPlusHalfPi},
      {-cs, LocalOp::MeasureZSigned, LocalOp::RzMinusHalfPi},
  }};
}

/// 1-norm of the decomposition of one cut Rzz(alpha).
inline double kappa(double alpha) { return 1.0 + 2.0 * std::abs(std::sin(alpha)); }

/// Total sampling overhead Π_l κ(α_l)².
inline double sampling_overhead(std::span<const double> alphas) {
  double s = 1.0;
  for (double a : alphas) {
    const double k = kappa(a);
    s *= k * k;
  }
  return s;
}

/// Positions (into Circuit::ops) of the cut Rzz gates, in circuit order.
struct CutSpec {
  std::vector<std::size_t> positions;

  std::size_t size() const { return positions.size(); }

  static CutSpec from(const Circuit& circuit) { return CutSpec{circuit.cut_gates}; }

  void validate(const Circuit& circuit) const {
    if (!std::is_sorted(positions.begin(), positions.end()) ||
        std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
      throw std::invalid_argument("cut positions must be strictly increasing");
    }
    for (auto pos : positions) {
      if (pos >= circuit.ops.size() || !circuit.is_cut(pos) ||
          circuit.ops[pos].kind != GateKind::Rzz) {
        throw std::invalid_argument("cut position does not reference a flagged Rzz cut gate");
      }
    }
    if (positions.size() != circuit.cut_gates.size()) {
      throw std::invalid_argument("every flagged cut gate must appear in the cut spec");
    }
  }

  std::vector<double> angles(const Circuit& circuit, const Bindings& bindings) const {
    std::vector<double> out;
    out.reserve(positions.size());
    for (auto pos : positions) out.push_back(*bindings.resolve(circuit.ops[pos].binding));
    return out;
  }
};

/// One channel choice per cut, with aggregate weight.
struct ChannelAssignment {
  std::vector<std::uint8_t> channels;
  double coefficient = 1.0;
  int sign = 1;
  double probability = 1.0;

  static ChannelAssignment make(
      std::span<const std::array<RzzQpdChannel, kChannelsPerCut>> per_cut,
      std::vector<std::uint8_t> channels) {
    if (channels.size() != per_cut.size()) {
      throw std::invalid_argument("assignment length must equal the number of cuts");
    }
    ChannelAssignment a;
    for (std::size_t l = 0; l < per_cut.size(); ++l) {
      if (channels[l] >= kChannelsPerCut) throw std::out_of_range("channel index out of range");
      double norm = 0.0;
      for (const auto& ch : per_cut[l]) norm += std::abs(ch.coefficient);
      const double c = per_cut[l][channels[l]].coefficient;
      a.coefficient *= c;
      a.sign *= (c < 0.0) ? -1 : 1;
      a.probability *= std::abs(c) / norm;
    }
    a.channels = std::move(channels);
    return a;
  }
};

struct SubcircuitOp {
  bool measure_z_signed = false;
  GateKind kind = GateKind::Z;
  std::array<std::size_t, 2> qubits{0, 0};  // local indices
  double angle = 0.0;
};

/// The part of a cut circuit living on one partition. Qubits are reindexed
/// by their rank within `qubits`.
struct Subcircuit {
  std::size_t partition = 0;
  std::vector<std::size_t> qubits;  // global ids, ascending
  std::vector<SubcircuitOp> ops;
  std::vector<ZTerm> terms;  // local qubit indices
  std::vector<std::size_t> term_ids;  // index into the source observable

  std::size_t measurement_count() const {
    return static_cast<std::size_t>(std::count_if(
        ops.begin(), ops.end(), [](const SubcircuitOp& op) { return op.measure_z_signed; }));
  }
};

struct CutOptions {
  /// Exact mode refuses when 6^L × 2^(max measurements per subcircuit) exceeds this.
  double max_subcircuit_runs = 1e6;
  /// Test hook: added to the first channel coefficient of every cut.
  double channel_coefficient_bias = 0.0;
};

namespace detail {

inline std::vector<std::array<RzzQpdChannel, kChannelsPerCut>> channels_for(
    std::span<const double> alphas, const CutOptions& options) {
  std::vector<std::array<RzzQpdChannel, kChannelsPerCut>> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    auto ch = rzz_channels(a);
    ch[0].coefficient += options.channel_coefficient_bias;
    out.push_back(ch);
  }
  return out;
}

inline void push_local_op(std::vector<SubcircuitOp>& ops, LocalOp op, std::size_t q) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  switch (op) {
    case LocalOp::Identity: return;
    case LocalOp::ZGate: ops.push_back({false, GateKind::Z, {q, q}, 0.0}); return;
    case LocalOp::RzPlusHalfPi: ops.push_back({false, GateKind::Rz, {q, q}, half_pi}); return;
    case LocalOp::RzMinusHalfPi: ops.push_back({false, GateKind::Rz, {q, q}, -half_pi}); return;
    case LocalOp::MeasureZSigned: ops.push_back({true, GateKind::Z, {q, q}, 0.0}); return;
  }
}

/// Builds partition `p`'s subcircuit given the local op chosen for each cut
/// (`cut_ops[l]` = {op on first qubit, op on second qubit}).
inline Subcircuit build_subcircuit(const Circuit& circuit, const CutSpec& cuts,
                                   std::span<const std::array<LocalOp, 2>> cut_ops,
                                   const Bindings& bindings, const Observable& obs,
                                   std::size_t p) {
  Subcircuit sub;
  sub.partition = p;
  std::vector<std::size_t> local(circuit.num_qubits, SIZE_MAX);
  for (std::size_t q = 0; q < circuit.num_qubits; ++q) {
    if (circuit.partition_of[q] == p) {
      local[q] = sub.qubits.size();
      sub.qubits.push_back(q);
    }
  }
  std::size_t next_cut = 0;
  for (std::size_t pos = 0; pos < circuit.ops.size(); ++pos) {
    const GateOp& op = circuit.ops[pos];
    if (next_cut < cuts.size() && cuts.positions[next_cut] == pos) {
      for (std::size_t side = 0; side < 2; ++side) {
        const std::size_t q = op.qubits[side];
        if (local[q] != SIZE_MAX) push_local_op(sub.ops, cut_ops[next_cut][side], local[q]);
      }
      ++next_cut;
      continue;
    }
    if (local[op.qubits[0]] == SIZE_MAX) continue;
    SubcircuitOp s{false, op.kind, {local[op.qubits[0]], 0}, 0.0};
    if (arity(op.kind) == 2) s.qubits[1] = local[op.qubits[1]];
    if (is_parameterized(op.kind)) s.angle = *bindings.resolve(op.binding);
    sub.ops.push_back(s);
  }
  for (std::size_t t = 0; t < obs.terms.size(); ++t) {
    const auto& term = obs.terms[t];
    if (term.qubit >= circuit.num_qubits) throw std::out_of_range("observable qubit out of range");
    if (local[term.qubit] != SIZE_MAX) {
      sub.terms.push_back({term.weight, local[term.qubit]});
      sub.term_ids.push_back(t);
    }
  }
  return sub;
}

inline void apply_sub_gate(StateVector& state, const SubcircuitOp& op) {
  apply_gate(state, op.kind, std::span<const std::size_t>(op.qubits.data(), arity(op.kind)),
             op.angle);
}

/// Trace weight and unnormalized <Z> per term, with every MeasureZSigned
/// expanded as (outcome-0 branch) - (outcome-1 branch).
struct BranchValue {
  double trace = 0.0;
  std::vector<double> terms;
};

inline void accumulate_branches(const Subcircuit& sub, StateVector state, std::size_t from,
                                double sign, BranchValue& acc) {
  for (std::size_t i = from; i < sub.ops.size(); ++i) {
    const SubcircuitOp& op = sub.ops[i];
    if (!op.measure_z_signed) {
      apply_sub_gate(state, op);
      continue;
    }
    for (int outcome = 0; outcome < 2; ++outcome) {
      StateVector branch = project_z(state, op.qubits[0], outcome);
      if (branch.squared_norm() == 0.0) continue;
      accumulate_branches(sub, std::move(branch), i + 1, outcome ? -sign : sign, acc);
    }
    return;
  }
  acc.trace += sign * trace_weight(state);
  for (std::size_t t = 0; t < sub.terms.size(); ++t) {
    acc.terms[t] += sign * z_expectation(state, sub.terms[t].qubit);
  }
}

inline BranchValue evaluate_subcircuit_exact(const Subcircuit& sub) {
  BranchValue acc;
  acc.terms.assign(sub.terms.size(), 0.0);
  accumulate_branches(sub, StateVector(sub.qubits.size()), 0, 1.0, acc);
  return acc;
}

/// Cuts touching each partition, as (cut index, side).
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cuts_by_partition(
    const Circuit& circuit, const CutSpec& cuts) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(circuit.num_partitions());
  for (std::size_t l = 0; l < cuts.size(); ++l) {
    const GateOp& op = circuit.ops[cuts.positions[l]];
    out[circuit.partition_of[op.qubits[0]]].push_back({l, 0});
    out[circuit.partition_of[op.qubits[1]]].push_back({l, 1});
  }
  return out;
}

}  // namespace detail

/// Splits the circuit into one subcircuit per partition, replacing each cut
/// Rzz by the local op pair of its assigned channel.
inline std::vector<Subcircuit> partition_circuit(const Circuit& circuit, const CutSpec& cuts,
                                                 const ChannelAssignment& assignment,
                                                 const Bindings& bindings,
                                                 const Observable& obs = {}) {
  circuit.validate();
  cuts.validate(circuit);
  if (assignment.channels.size() != cuts.size()) {
    throw std::invalid_argument("assignment length must equal the number of cuts");
  }
  const auto alphas = cuts.angles(circuit, bindings);
  std::vector<std::array<LocalOp, 2>> cut_ops;
  for (std::size_t l = 0; l < cuts.size(); ++l) {
    const auto ch = rzz_channels(alphas[l])[assignment.channels[l]];
    cut_ops.push_back({ch.op_a, ch.op_b});
  }
  std::vector<Subcircuit> subs;
  for (std::size_t p = 0; p < circuit.num_partitions(); ++p) {
    subs.push_back(detail::build_subcircuit(circuit, cuts, cut_ops, bindings, obs, p));
  }
  return subs;
}

/// Subcircuit runs exact recombination would need: 6^L × 2^(max measurements
/// any one subcircuit can carry).
inline double exact_run_count(const Circuit& circuit, const CutSpec& cuts) {
  std::size_t max_touch = 0;
  for (const auto& touching : detail::cuts_by_partition(circuit, cuts)) {
    max_touch = std::max(max_touch, touching.size());
  }
  return std::pow(static_cast<double>(kChannelsPerCut), static_cast<double>(cuts.size())) *
         std::pow(2.0, static_cast<double>(max_touch));
}

/// Exact expectation of `obs` recombined from subcircuit simulations over all
/// 6^L channel assignments.
inline double evaluate_exact(const Circuit& circuit, const CutSpec& cuts, const Bindings& bindings,
                             const Observable& obs, const CutOptions& options = {}) {
  circuit.validate();
  cuts.validate(circuit);
  if (cuts.size() == 0 && circuit.num_partitions() == 1) {
    return expectation(simulate(circuit, bindings), obs);
  }
  if (const double runs = exact_run_count(circuit, cuts); runs > options.max_subcircuit_runs) {
    throw ResourceLimitError("exact recombination needs " + std::to_string(runs) +
                             " subcircuit runs, cap is " +
                             std::to_string(options.max_subcircuit_runs));
  }

  const auto alphas = cuts.angles(circuit, bindings);
  const auto channels = detail::channels_for(alphas, options);
  const auto touching = detail::cuts_by_partition(circuit, cuts);
  const std::size_t parts = circuit.num_partitions();
  const std::size_t L = cuts.size();

  // Subcircuit p depends only on the channels of the cuts touching it.
  std::vector<std::map<std::vector<std::uint8_t>, detail::BranchValue>> memo(parts);
  std::vector<std::size_t> term_partition(obs.terms.size());
  for (std::size_t t = 0; t < obs.terms.size(); ++t) {
    term_partition[t] = circuit.partition_of.at(obs.terms[t].qubit);
  }

  std::vector<std::uint8_t> k(L, 0);
  std::vector<std::array<LocalOp, 2>> cut_ops(L);
  std::vector<const detail::BranchValue*> values(parts);
  double total = 0.0;
  while (true) {
    double coef = 1.0;
    for (std::size_t l = 0; l < L; ++l) coef *= channels[l][k[l]].coefficient;

    if (coef != 0.0) {
      for (std::size_t l = 0; l < L; ++l) {
        cut_ops[l] = {channels[l][k[l]].op_a, channels[l][k[l]].op_b};
      }
      for (std::size_t p = 0; p < parts; ++p) {
        std::vector<std::uint8_t> key;
        key.reserve(touching[p].size());
        for (auto [l, side] : touching[p]) {
          key.push_back(static_cast<std::uint8_t>(cut_ops[l][side]));
        }
        auto it = memo[p].find(key);
        if (it == memo[p].end()) {
          const Subcircuit sub =
              detail::build_subcircuit(circuit, cuts, cut_ops, bindings, obs, p);
          it = memo[p].emplace(std::move(key), detail::evaluate_subcircuit_exact(sub)).first;
        }
        values[p] = &it->second;
      }

      // Term t: its own partition contributes <Z>, every other one its trace.
      std::vector<std::size_t> seen(parts, 0);
      double sum = 0.0;
      for (std::size_t t = 0; t < obs.terms.size(); ++t) {
        const std::size_t owner = term_partition[t];
        double v = obs.terms[t].weight * values[owner]->terms[seen[owner]++];
        for (std::size_t p = 0; p < parts; ++p) {
          if (p != owner) v *= values[p]->trace;
        }
        sum += v;
      }
      total += coef * sum;
    }

    std::size_t l = 0;
    while (l < L && ++k[l] == kChannelsPerCut) k[l++] = 0;
    if (l == L) break;
  }
  return total;
}

struct SampledEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t num_samples = 0;
};

/// Monte-Carlo recombination. Each sample draws one channel per cut with
/// probability |c_k|/κ, realizes MeasureZSigned as a projective measurement
/// whose outcome sign multiplies the weight, and scores
/// Πκ · Π sgn(c_k) · Π signs · Σ_t w_t <Z_t>. Sample i uses the stream
/// Rng(seed).derive({i}), so results do not depend on the thread count.
inline SampledEstimate evaluate_sampled(const Circuit& circuit, const CutSpec& cuts,
                                        const Bindings& bindings, const Observable& obs,
                                        std::size_t num_samples, std::uint64_t seed,
                                        const CutOptions& options = {}) {
  if (num_samples == 0) throw std::invalid_argument("num_samples must be at least 1");
  circuit.validate();
  cuts.validate(circuit);
  if (cuts.size() == 0 && circuit.num_partitions() == 1) {
    return {expectation(simulate(circuit, bindings), obs), 0.0, num_samples};
  }

  const auto alphas = cuts.angles(circuit, bindings);
  const auto channels = detail::channels_for(alphas, options);
  const std::size_t L = cuts.size();
  const std::size_t parts = circuit.num_partitions();

  double prefactor = 1.0;
  std::vector<std::array<double, kChannelsPerCut>> cdf(L);
  for (std::size_t l = 0; l < L; ++l) {
    double norm = 0.0;
    for (const auto& ch : channels[l]) norm += std::abs(ch.coefficient);
    prefactor *= norm;
    double run = 0.0;
    for (std::size_t j = 0; j < kChannelsPerCut; ++j) {
      run += std::abs(channels[l][j].coefficient) / norm;
      cdf[l][j] = run;
    }
  }

  const Rng root(seed);
  std::vector<double> samples(num_samples);
  constexpr std::size_t kChunk = 2048;
  const std::size_t chunks = (num_samples + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t chunk) {
    std::vector<std::array<LocalOp, 2>> cut_ops(L);
    const std::size_t end = std::min(num_samples, (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      Rng rng = root.derive({i});
      double weight = prefactor;
      for (std::size_t l = 0; l < L; ++l) {
        const double u = rng.uniform();
        std::size_t j = 0;
        while (j + 1 < kChannelsPerCut && u >= cdf[l][j]) ++j;
        // Skip trailing zero-probability channels picked by rounding.
        while (j > 0 && channels[l][j].coefficient == 0.0) --j;
        const auto& ch = channels[l][j];
        if (ch.coefficient < 0.0) weight = -weight;
        cut_ops[l] = {ch.op_a, ch.op_b};
      }

      double value = 0.0;
      for (std::size_t p = 0; p < parts; ++p) {
        const Subcircuit sub = detail::build_subcircuit(circuit, cuts, cut_ops, bindings, obs, p);
        StateVector state(sub.qubits.size());
        for (const auto& op : sub.ops) {
          if (!op.measure_z_signed) {
            detail::apply_sub_gate(state, op);
            continue;
          }
          StateVector zero = project_z(state, op.qubits[0], 0);
          const double p0 = trace_weight(zero);
          if (rng.uniform() < p0) {
            state = std::move(zero);
            state *= 1.0 / std::sqrt(p0);
          } else {
            weight = -weight;
            state = project_z(std::move(state), op.qubits[0], 1);
            state *= 1.0 / std::sqrt(trace_weight(state));
          }
        }
        for (const auto& term : sub.terms) value += term.weight * z_expectation(state, term.qubit);
      }
      samples[i] = weight * value;
    }
  });

  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(num_samples);
  double var = 0.0;
  if (num_samples > 1) {
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(num_samples - 1);
  }
  return {mean, std::sqrt(var / static_cast<double>(num_samples)), num_samples};
}

}  // namespace cutreg

#endif  // CUTREG_QPD_HPP
