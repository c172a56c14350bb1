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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "cutreg/statevector.hpp"
#include "dense_oracle.hpp"

namespace {

using namespace cutreg;
constexpr double kPi = std::numbers::pi;

StateVector plus_state() {
  StateVector s(1);
  static constexpr std::array<std::size_t, 1> q0{0};
  apply_gate(s, GateKind::H, q0);
  return s;
}

StateVector bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return StateVector(2, {r, 0.0, 0.0, r});
}

StateVector ghz3() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> a(8, 0.0);
  a[0] = a[7] = r;
  return StateVector(3, std::move(a));
}

double max_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(StateVector, StartsInAllZeros) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_DOUBLE_EQ(s.squared_norm(), 1.0);
}

TEST(StateVector, RejectsBadSizes) {
  EXPECT_THROW(StateVector(0), std::invalid_argument);
  EXPECT_THROW(StateVector(31), std::invalid_argument);
  EXPECT_THROW(StateVector(2, std::vector<Complex>(3)), std::invalid_argument);
}

TEST(ApplyGate, RxZeroIsIdentity) {
  StateVector s(1);
  static constexpr std::array<std::size_t, 1> q0{0};
  apply_gate(s, GateKind::Rx, q0, 0.0);
  EXPECT_NEAR(std::abs(s[0] - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
}

TEST(ApplyGate, HadamardOnZero) {
  const StateVector s = plus_state();
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ApplyGate, RzzThenSdgPairIsCzUpToPhase) {
  std::mt19937_64 gen(11);
  static constexpr std::array<std::size_t, 2> pair{0, 1};
  static constexpr std::array<std::size_t, 1> q0{0};
  static constexpr std::array<std::size_t, 1> q1{1};
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = oracle::random_state(2, gen);
    StateVector a = oracle::from_vec(v, 2);
    apply_gate(a, GateKind::Rzz, pair, kPi / 2);
    apply_gate(a, GateKind::Sdg, q0);
    apply_gate(a, GateKind::Sdg, q1);
    const oracle::Vec expected = std::exp(-oracle::I * (kPi / 4)) * oracle::cz(0, 1, 2) * v;
    EXPECT_LT((oracle::to_vec(a) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ApplyGate, ErrorsOnBadQubits) {
  StateVector s(2);
  static constexpr std::array<std::size_t, 1> q5{5};
  static constexpr std::array<std::size_t, 2> same{1, 1};
  static constexpr std::array<std::size_t, 1> q0{0};
  EXPECT_THROW(apply_gate(s, GateKind::H, q5), std::out_of_range);
  EXPECT_THROW(apply_gate(s, GateKind::CZ, same), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, GateKind::CZ, q0), std::invalid_argument);
}

TEST(ApplyGate, UnresolvedBindingThrows) {
  StateVector s(1);
  const GateOp op{GateKind::Ry, {0, 0}, Trainable{0}};
  EXPECT_THROW(apply_gate(s, op, std::nullopt), std::invalid_argument);
}

// Every gate kind against its dense matrix, on every qubit (pair) for n ≤ 4.
TEST(ApplyGate, MatchesDenseOracle) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  const std::array kinds{GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::Rzz, GateKind::H,
                         GateKind::S,  GateKind::Sdg, GateKind::Z, GateKind::CZ};
  for (int n = 1; n <= 4; ++n) {
    for (auto kind : kinds) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (arity(kind) == 1 && b != 0) continue;
          if (arity(kind) == 2 && a == b) continue;
          const double t = angle(gen);
          const auto v = oracle::random_state(n, gen);
          StateVector s = oracle::from_vec(v, static_cast<std::size_t>(n));
          const std::array<std::size_t, 2> qs{static_cast<std::size_t>(a),
                                              static_cast<std::size_t>(b)};
          apply_gate(s, kind, std::span<const std::size_t>(qs.data(), arity(kind)), t);
          const oracle::Vec expected = oracle::gate_matrix(kind, a, b, t, n) * v;
          EXPECT_LE((oracle::to_vec(s) - expected).cwiseAbs().maxCoeff(), 1e-12)
              << gate_name(kind) << " n=" << n << " a=" << a << " b=" << b;
          EXPECT_NEAR(s.squared_norm(), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(ApplyGate, IsLinear) {
  std::mt19937_64 gen(5);
  static constexpr std::array<std::size_t, 2> pair{2, 0};
  const Complex scale(0.3, -1.7);
  const auto v = oracle::random_state(3, gen);
  StateVector a = oracle::from_vec(v, 3);
  StateVector b = a;
  b *= scale;
  apply_gate(a, GateKind::Rzz, pair, 0.77);
  apply_gate(b, GateKind::Rzz, pair, 0.77);
  a *= scale;
  EXPECT_LE(max_diff(a, b), 1e-12);
}

TEST(ProjectZ, PlusStateZeroBranch) {
  const StateVector p = project_z(plus_state(), 0, 0);
  EXPECT_NEAR(p[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(p[1], Complex(0.0));
  EXPECT_NEAR(p.squared_norm(), 0.5, 1e-15);
}

TEST(ProjectZ, OrthogonalOutcomeIsZero) {
  StateVector one(1, {0.0, 1.0});
  EXPECT_EQ(project_z(one, 0, 0).squared_norm(), 0.0);
}

TEST(ProjectZ, BellOutcomeOne) {
  const StateVector p = project_z(bell(), 0, 1);
  EXPECT_EQ(p[0], Complex(0.0));
  EXPECT_EQ(p[1], Complex(0.0));
  EXPECT_EQ(p[2], Complex(0.0));
  EXPECT_NEAR(p[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ProjectZ, BranchesReassemble) {
  std::mt19937_64 gen(9);
  for (int q = 0; q < 3; ++q) {
    const StateVector s = oracle::from_vec(oracle::random_state(3, gen), 3);
    const StateVector b0 = project_z(s, static_cast<std::size_t>(q), 0);
    const StateVector b1 = project_z(s, static_cast<std::size_t>(q), 1);
    for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_EQ(b0[i] + b1[i], s[i]);
    EXPECT_NEAR(b0.squared_norm() + b1.squared_norm(), 1.0, 1e-12);
  }
}

TEST(ProjectZ, Errors) {
  EXPECT_THROW(project_z(StateVector(2), 2, 0), std::out_of_range);
  EXPECT_THROW(project_z(StateVector(2), 0, 2), std::invalid_argument);
}

TEST(Expectation, Examples) {
  EXPECT_DOUBLE_EQ(z_expectation(StateVector(1), 0), 1.0);
  EXPECT_NEAR(z_expectation(plus_state(), 0), 0.0, 1e-15);
  static constexpr std::array<std::size_t, 1> q0{0};
  for (double t : {0.0, 0.3, 1.2, kPi, 4.0}) {
    StateVector s(1);
    apply_gate(s, GateKind::Rx, q0, t);
    EXPECT_NEAR(z_expectation(s, 0), std::cos(t), 1e-14);
  }
}

TEST(Expectation, UnnormalizedIsTraceWeighted) {
  const StateVector half = project_z(plus_state(), 0, 0);
  const Observable z0{{{1.0, 0}}};
  EXPECT_NEAR(expectation(half, z0), 0.5, 1e-15);
}

TEST(Expectation, BoundedByWeightNorm) {
  std::mt19937_64 gen(3);
  const Observable obs{{{0.5, 0}, {-1.25, 2}, {0.25, 3}}};
  for (int t = 0; t < 50; ++t) {
    const auto v = oracle::random_state(4, gen);
    const double e = expectation(oracle::from_vec(v, 4), obs);
    EXPECT_LE(std::abs(e), obs.weight_norm() + 1e-12);
    EXPECT_NEAR(e, oracle::expectation(v, obs, 4), 1e-12);
  }
}

TEST(TraceWeight, Examples) {
  EXPECT_DOUBLE_EQ(trace_weight(StateVector(2)), 1.0);
  EXPECT_DOUBLE_EQ(trace_weight(StateVector(1, {0.0, 0.0})), 0.0);
  EXPECT_NEAR(trace_weight(project_z(plus_state(), 0, 0)), 0.5, 1e-15);
}

TEST(QubitPurity, Examples) {
  for (std::size_t q = 0; q < 3; ++q) EXPECT_NEAR(qubit_purity(StateVector(3), q), 1.0, 1e-15);
  for (std::size_t q = 0; q < 2; ++q) EXPECT_NEAR(qubit_purity(bell(), q), 0.5, 1e-15);
  for (std::size_t q = 0; q < 3; ++q) EXPECT_NEAR(qubit_purity(ghz3(), q), 0.5, 1e-15);
}

TEST(QubitPurity, MatchesPartialTrace) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 10; ++t) {
    const auto v = oracle::random_state(4, gen);
    const StateVector s = oracle::from_vec(v, 4);
    for (int q = 0; q < 4; ++q) {
      const oracle::Mat r = oracle::reduced_density(v, q, 4);
      EXPECT_NEAR(qubit_purity(s, static_cast<std::size_t>(q)), (r * r).trace().real(), 1e-12);
    }
  }
}

TEST(QubitPurity, RejectsUnnormalized) {
  EXPECT_THROW(qubit_purity(project_z(plus_state(), 0, 0), 0), std::invalid_argument);
}

}  // namespace
