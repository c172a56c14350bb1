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

#ifndef CUTREG_METRICS_HPP
#define CUTREG_METRICS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutreg/ansatz.hpp"
#include "cutreg/dataset.hpp"
#include "cutreg/format.hpp"
#include "cutreg/parallel.hpp"
#include "cutreg/qpd.hpp"
#include "cutreg/statevector.hpp"

namespace cutreg {

inline double mse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw std::invalid_argument("mse: length mismatch");
  }
  if (predictions.empty()) throw std::invalid_argument("mse: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double r = predictions[i] - targets[i];
    acc += r * r;
  }
  return acc / static_cast<double>(predictions.size());
}

/// Meyer-Wallach Q = 2(1 - mean single-qubit purity). 0 for product states.
inline double meyer_wallach(const StateVector& state) {
  double purity = 0.0;
  for (std::size_t q = 0; q < state.num_qubits(); ++q) purity += qubit_purity(state, q);
  return 2.0 * (1.0 - purity / static_cast<double>(state.num_qubits()));
}

struct MetricsRecord {
  std::size_t epoch = 0;
  double train_mse = 0.0;
  double val_mse = 0.0;
  double s_total = 1.0;
  double kappa_total = 1.0;
  double meyer_wallach_q = 0.0;
  double lambda = 0.0;
  std::int64_t wallclock_ms = 0;
};

inline constexpr const char* kMetricsCsvHeader =
    "epoch,train_mse,val_mse,s_total,kappa_total,meyer_wallach_q,lambda,wallclock_ms";

inline std::string to_csv_row(const MetricsRecord& r) {
  return std::to_string(r.epoch) + ',' + format_double(r.train_mse) + ',' +
         format_double(r.val_mse) + ',' + format_double(r.s_total) + ',' +
         format_double(r.kappa_total) + ',' + format_double(r.meyer_wallach_q) + ',' +
         format_double(r.lambda) + ',' + std::to_string(r.wallclock_ms);
}

/// Predictions for `rows`. Sampled mode gets one derived seed per row.
inline std::vector<double> predict(const Model& model, const ParameterSet& params,
                                   const Dataset& data, std::span<const std::size_t> rows,
                                   const ForwardMode& mode, const CutOptions& options = {}) {
  std::vector<double> out(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    ForwardMode m = mode;
    if (auto* s = std::get_if<CutSampledMode>(&m)) s->seed = Rng(s->seed).derive({rows[i]}).state();
    out[i] = forward(model, params, data.row(rows[i]), m, options);
  });
  return out;
}

inline double split_mse(const Model& model, const ParameterSet& params, const Dataset& data,
                        Split split, const ForwardMode& mode, const CutOptions& options = {}) {
  const auto rows = data.indices(split);
  if (rows.empty()) throw std::invalid_argument("split is empty");
  const auto preds = predict(model, params, data, rows, mode, options);
  std::vector<double> targets;
  for (auto r : rows) targets.push_back(data.targets[r]);
  return mse(preds, targets);
}

/// Q of the uncut state, averaged over the first `q_samples` training rows.
inline double reference_entanglement(const Model& model, const ParameterSet& params,
                                     const Dataset& data, std::size_t q_samples = 1) {
  const auto rows = data.indices(Split::Train);
  const std::size_t n = std::min(std::max<std::size_t>(q_samples, 1), rows.size());
  if (n == 0) throw std::invalid_argument("no training rows for the entanglement reference");
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q += meyer_wallach(prepare_state(model, params, data.row(rows[i])));
  }
  return q / static_cast<double>(n);
}

/// Snapshot of every metrics field except wallclock_ms.
inline MetricsRecord track(std::size_t epoch, const Model& model, const ParameterSet& params,
                           const Dataset& data, const ForwardMode& mode, double lambda,
                           std::size_t q_samples = 1, const CutOptions& options = {}) {
  MetricsRecord r;
  r.epoch = epoch;
  r.train_mse = split_mse(model, params, data, Split::Train, mode, options);
  r.val_mse = split_mse(model, params, data, Split::Val, mode, options);
  r.s_total = sampling_overhead(params.alpha);
  double k = 1.0;
  for (double a : params.alpha) k *= kappa(a);
  r.kappa_total = k;
  r.meyer_wallach_q = reference_entanglement(model, params, data, q_samples);
  r.lambda = lambda;
  return r;
}

}  // namespace cutreg

#endif  // CUTREG_METRICS_HPP
