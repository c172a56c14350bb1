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

#include <cmath>
#include <numbers>
#include <random>

#include "cutreg/metrics.hpp"
#include "dense_oracle.hpp"
#include "fixtures.hpp"

namespace {

using namespace cutreg;
constexpr double kPi = std::numbers::pi;

StateVector ghz(std::size_t n) {
  std::vector<Complex> a(std::size_t{1} << n, 0.0);
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return StateVector(n, std::move(a));
}

TEST(Mse, Examples) {
  const std::vector<double> v{0.3, -0.2};
  EXPECT_EQ(mse(v, v), 0.0);
  EXPECT_EQ(mse(std::vector<double>(3, 0.0), std::vector<double>(3, 1.0)), 1.0);
  EXPECT_EQ(mse(std::vector<double>{0, 0}, std::vector<double>{1, -1}), 1.0);
  EXPECT_THROW(mse(v, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(mse({}, {}), std::invalid_argument);
}

TEST(MeyerWallach, Examples) {
  EXPECT_NEAR(meyer_wallach(StateVector(4)), 0.0, 1e-15);
  EXPECT_NEAR(meyer_wallach(ghz(2)), 1.0, 1e-15);
  EXPECT_NEAR(meyer_wallach(ghz(3)), 1.0, 1e-15);
}

TEST(MeyerWallach, ProductStatesAreZero) {
  std::mt19937_64 gen(13);
  for (int t = 0; t < 20; ++t) {
    oracle::Vec v = oracle::random_state(1, gen);
    for (int q = 1; q < 4; ++q) v = oracle::kron(oracle::random_state(1, gen), v);
    EXPECT_NEAR(meyer_wallach(oracle::from_vec(v, 4)), 0.0, 1e-10);
  }
}

TEST(MeyerWallach, LocalUnitaryInvariance) {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  const StateVector base = oracle::from_vec(oracle::random_state(4, gen), 4);
  const double q0 = meyer_wallach(base);
  for (int t = 0; t < 20; ++t) {
    StateVector s = base;
    const std::array<std::size_t, 1> q{pick(gen)};
    apply_gate(s, GateKind::Rz, q, u(gen));
    apply_gate(s, GateKind::Ry, q, u(gen));
    apply_gate(s, GateKind::Rx, q, u(gen));
    EXPECT_NEAR(meyer_wallach(s), q0, 1e-10);
  }
}

TEST(MeyerWallach, WithinUnitInterval) {
  std::mt19937_64 gen(15);
  for (int t = 0; t < 20; ++t) {
    const double q = meyer_wallach(oracle::from_vec(oracle::random_state(5, gen), 5));
    EXPECT_GE(q, -1e-12);
    EXPECT_LE(q, 1.0 + 1e-9);
  }
}

TEST(Track, OverheadFields) {
  const Model m = fixtures::reference_model();
  const Dataset d = generate_dataset(12, 42);
  ParameterSet p = m.zero_parameters();
  std::fill(p.alpha.begin(), p.alpha.end(), kPi / 2);
  const auto r = track(3, m, p, d, FullMode{}, 0.01);
  EXPECT_EQ(r.epoch, 3u);
  EXPECT_EQ(r.s_total, 6561.0);
  EXPECT_EQ(r.s_total, sampling_overhead(p.alpha));
  EXPECT_NEAR(r.kappa_total * r.kappa_total, r.s_total, 1e-9);
  EXPECT_EQ(r.lambda, 0.01);

  const auto z = track(0, m, m.zero_parameters(), d, FullMode{}, 0.0);
  EXPECT_EQ(z.s_total, 1.0);
  EXPECT_EQ(z.kappa_total, 1.0);
}

TEST(Track, EntanglementUsesFirstTrainingRow) {
  const Model m = fixtures::reference_model();
  const Dataset d = generate_dataset(12, 42);
  std::mt19937_64 gen(16);
  const auto p = fixtures::random_params(m, gen);
  const auto first = d.indices(Split::Train).front();
  const auto r = track(0, m, p, d, FullMode{}, 0.0);
  EXPECT_DOUBLE_EQ(r.meyer_wallach_q, meyer_wallach(prepare_state(m, p, d.row(first))));
  EXPECT_GE(r.meyer_wallach_q, 0.0);
  EXPECT_LE(r.meyer_wallach_q, 1.0 + 1e-9);
}

TEST(Track, MseMatchesManualPredictions) {
  const Model m = build_ansatz({4, 2, 1, {}});
  const Dataset d = generate_dataset(4, 2);
  std::mt19937_64 gen(17);
  const auto p = fixtures::random_params(m, gen);
  const auto r = track(0, m, p, d, CutExactMode{}, 0.0);
  double acc = 0.0;
  const auto val = d.indices(Split::Val);
  for (auto i : val) {
    const double e = forward(m, p, d.row(i), FullMode{}) - d.targets[i];
    acc += e * e;
  }
  EXPECT_NEAR(r.val_mse, acc / static_cast<double>(val.size()), 1e-9);
}

TEST(Csv, HeaderAndRow) {
  EXPECT_STREQ(kMetricsCsvHeader,
               "epoch,train_mse,val_mse,s_total,kappa_total,meyer_wallach_q,lambda,wallclock_ms");
  MetricsRecord r{7, 0.25, 0.5, 9.0, 3.0, 0.125, 0.01, 0};
  EXPECT_EQ(to_csv_row(r), "7,0.25,0.5,9,3,0.125,0.01,0");
}

}  // namespace
