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

#ifndef CUTREG_DATASET_HPP
#define CUTREG_DATASET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cutreg/format.hpp"
#include "cutreg/rng.hpp"

namespace cutreg {

enum class Split : std::uint8_t { Train, Val, Test };

inline std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

inline Split parse_split(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw std::invalid_argument("unknown split '" + std::string(name) + "'");
}

/// Affine maps fitted on the train split.
struct Scaling {
  std::vector<double> feature_min;
  std::vector<double> feature_max;
  std::vector<bool> degenerate;  // constant train column, mapped to 0
  double target_min = 0.0;
  double target_max = 0.0;

  double scale_feature(std::size_t j, double v) const {
    if (degenerate[j]) return 0.0;
    const double pi = std::numbers::pi;
    return -pi + 2.0 * pi * (v - feature_min[j]) / (feature_max[j] - feature_min[j]);
  }
  double scale_target(double v) const {
    if (target_max == target_min) return 0.0;
    return -1.0 + 2.0 * (v - target_min) / (target_max - target_min);
  }
  double unscale_target(double s) const {
    return target_min + (s + 1.0) * (target_max - target_min) / 2.0;
  }
};

/// Row-major feature matrix with regression targets and split labels.
struct Dataset {
  std::size_t num_features = 0;
  std::vector<double> features;
  std::vector<double> targets;
  std::vector<Split> splits;
  std::uint64_t seed = 0;
  bool scaled = false;
  Scaling scaling{};

  std::size_t size() const { return targets.size(); }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features).subspan(i * num_features, num_features);
  }

  std::vector<std::size_t> indices(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (splits[i] == s) out.push_back(i);
    }
    return out;
  }

  bool has_degenerate_feature() const {
    return std::find(scaling.degenerate.begin(), scaling.degenerate.end(), true) !=
           scaling.degenerate.end();
  }
};

/// Linear regression data: X and the hidden weights w are i.i.d. standard
/// normal, y = Xw + N(0, noise_std²). X, w and the noise come from three
/// independent child streams of `seed`. Every row starts in the train split.
inline Dataset make_regression(std::size_t n_samples, std::size_t n_features, double noise_std,
                               std::uint64_t seed, std::vector<double>* weights_out = nullptr) {
  if (n_samples == 0 || n_features == 0) {
    throw std::invalid_argument("make_regression needs at least one sample and one feature");
  }
  const Rng root(seed);
  Rng x_rng = root.derive({1});
  Rng w_rng = root.derive({2});
  Rng noise_rng = root.derive({3});

  Dataset d;
  d.num_features = n_features;
  d.seed = seed;
  d.features.resize(n_samples * n_features);
  for (auto& v : d.features) v = x_rng.normal();
  std::vector<double> w(n_features);
  for (auto& v : w) v = w_rng.normal();
  d.targets.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto r = d.row(i);
    d.targets[i] = std::inner_product(r.begin(), r.end(), w.begin(), 0.0);
    if (noise_std > 0.0) d.targets[i] += noise_std * noise_rng.normal();
  }
  d.splits.assign(n_samples, Split::Train);
  if (weights_out) *weights_out = std::move(w);
  return d;
}

/// Seeded permutation, then contiguous train/val/test slices.
inline Dataset split(Dataset d, std::uint64_t seed, std::size_t n_train = 100,
                     std::size_t n_val = 50, std::size_t n_test = 50) {
  if (d.size() < n_train + n_val + n_test) {
    throw std::invalid_argument("dataset has " + std::to_string(d.size()) +
                                " rows, fewer than the requested splits");
  }
  if (d.size() != n_train + n_val + n_test) {
    throw std::invalid_argument("splits must cover every row");
  }
  std::vector<std::size_t> perm(d.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng = Rng(seed).derive({4});
  shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    d.splits[perm[k]] = k < n_train ? Split::Train : (k < n_train + n_val ? Split::Val : Split::Test);
  }
  return d;
}

/// Maps train-split feature ranges to [-π, π] and the train target range to
/// [-1, 1]. Val/test rows use the same maps and are not clipped.
inline Dataset scale(Dataset d) {
  if (d.scaled) throw std::invalid_argument("dataset is already scaled");
  const auto train = d.indices(Split::Train);
  if (train.empty()) throw std::invalid_argument("scaling needs a non-empty train split");

  Scaling& s = d.scaling;
  s.feature_min.assign(d.num_features, 0.0);
  s.feature_max.assign(d.num_features, 0.0);
  s.degenerate.assign(d.num_features, false);
  for (std::size_t j = 0; j < d.num_features; ++j) {
    double lo = d.row(train[0])[j];
    double hi = lo;
    for (auto i : train) {
      lo = std::min(lo, d.row(i)[j]);
      hi = std::max(hi, d.row(i)[j]);
    }
    s.feature_min[j] = lo;
    s.feature_max[j] = hi;
    s.degenerate[j] = (lo == hi);
  }
  s.target_min = s.target_max = d.targets[train[0]];
  for (auto i : train) {
    s.target_min = std::min(s.target_min, d.targets[i]);
    s.target_max = std::max(s.target_max, d.targets[i]);
  }

  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.num_features; ++j) {
      auto& v = d.features[i * d.num_features + j];
      v = s.scale_feature(j, v);
    }
    d.targets[i] = s.scale_target(d.targets[i]);
  }
  d.scaled = true;
  return d;
}

/// Generate, split and scale in one go.
inline Dataset generate_dataset(std::size_t n_features, std::uint64_t seed, double noise_std = 0.0,
                                std::size_t n_train = 100, std::size_t n_val = 50,
                                std::size_t n_test = 50) {
  return scale(split(make_regression(n_train + n_val + n_test, n_features, noise_std, seed), seed,
                     n_train, n_val, n_test));
}

/// CSV with header f0,...,f{d-1},y,split. Values use shortest round-trip text.
inline void write_csv(std::ostream& os, const Dataset& d) {
  for (std::size_t j = 0; j < d.num_features; ++j) os << 'f' << j << ',';
  os << "y,split\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double v : d.row(i)) os << format_double(v) << ',';
    os << format_double(d.targets[i]) << ',' << split_name(d.splits[i]) << '\n';
  }
}

/// Reads a write_csv file. Values are taken as-is (scaling metadata is not
/// part of the CSV, so `scaled` is set from the caller's knowledge).
inline Dataset read_csv(std::istream& is, bool scaled = true) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty dataset file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 3 || header[header.size() - 2] != "y" || header.back() != "split") {
    throw std::runtime_error("dataset header must be f0,...,y,split");
  }
  Dataset d;
  d.num_features = header.size() - 2;
  for (std::size_t j = 0; j < d.num_features; ++j) {
    if (header[j] != "f" + std::to_string(j)) throw std::runtime_error("bad feature column name");
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw std::runtime_error("dataset line " + std::to_string(lineno) + ": wrong column count");
    }
    for (std::size_t j = 0; j < d.num_features; ++j) d.features.push_back(parse_double(cells[j]));
    d.targets.push_back(parse_double(cells[d.num_features]));
    d.splits.push_back(parse_split(cells.back()));
  }
  d.scaled = scaled;
  return d;
}

}  // namespace cutreg

#endif  // CUTREG_DATASET_HPP
