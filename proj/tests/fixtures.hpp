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

#ifndef CUTREG_TESTS_FIXTURES_HPP
#define CUTREG_TESTS_FIXTURES_HPP

#include <numbers>
#include <random>
#include <vector>

#include "cutreg/cutreg.hpp"

namespace fixtures {

inline std::vector<double> uniform_vector(std::size_t n, double lo, double hi,
                                          std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

/// θ and α uniform in [0, 2π).
inline cutreg::ParameterSet random_params(const cutreg::Model& model, std::mt19937_64& gen) {
  return {uniform_vector(model.num_theta, 0.0, 2 * std::numbers::pi, gen),
          uniform_vector(model.num_alpha, 0.0, 2 * std::numbers::pi, gen)};
}

inline std::vector<double> random_features(const cutreg::Model& model, std::mt19937_64& gen) {
  return uniform_vector(model.num_features, -std::numbers::pi, std::numbers::pi, gen);
}

/// The 6-qubit, 3-partition, 2-layer model with 4 cuts.
inline cutreg::Model reference_model() { return cutreg::build_ansatz({}); }

/// Dataset whose train split holds the given rows verbatim.
inline cutreg::Dataset tiny_dataset(std::size_t num_features,
                                    const std::vector<std::vector<double>>& rows,
                                    const std::vector<double>& targets) {
  cutreg::Dataset d;
  d.num_features = num_features;
  for (const auto& r : rows) d.features.insert(d.features.end(), r.begin(), r.end());
  d.targets = targets;
  d.splits.assign(targets.size(), cutreg::Split::Train);
  d.scaled = true;
  return d;
}

}  // namespace fixtures

#endif  // CUTREG_TESTS_FIXTURES_HPP
