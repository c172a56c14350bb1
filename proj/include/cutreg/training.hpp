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

#ifndef CUTREG_TRAINING_HPP
#define CUTREG_TRAINING_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cutreg/ansatz.hpp"
#include "cutreg/dataset.hpp"
#include "cutreg/metrics.hpp"
#include "cutreg/parallel.hpp"
#include "cutreg/qpd.hpp"
#include "cutreg/rng.hpp"

namespace cutreg {

enum class RegularizerForm { LogProduct, SumMinusOne };

/// Overhead penalty. LogProduct is log Π_l s(α_l), summed as
/// Σ 2 log(1 + 2|sin α_l|); SumMinusOne is Σ (s(α_l) - 1).
inline double regularizer(std::span<const double> alphas,
                          RegularizerForm form = RegularizerForm::LogProduct) {
  double r = 0.0;
  for (double a : alphas) {
    const double k = kappa(a);
    r += form == RegularizerForm::LogProduct ? 2.0 * std::log(k) : k * k - 1.0;
  }
  return r;
}

/// Analytic gradient of regularizer(); 0 where sin α = 0.
inline std::vector<double> regularizer_grad(std::span<const double> alphas,
                                            RegularizerForm form = RegularizerForm::LogProduct) {
  std::vector<double> g(alphas.size(), 0.0);
  for (std::size_t l = 0; l < alphas.size(); ++l) {
    const double s = std::sin(alphas[l]);
    if (s == 0.0) continue;
    const double k = kappa(alphas[l]);
    const double dk = 2.0 * std::cos(alphas[l]) * (s > 0.0 ? 1.0 : -1.0);
    g[l] = form == RegularizerForm::LogProduct ? 2.0 * dk / k : 2.0 * k * dk;
  }
  return g;
}

struct LossConfig {
  double lambda_initial = 0.01;
  double lambda_final = 0.0001;
  std::size_t lambda_switch_epoch = 10;
  RegularizerForm form = RegularizerForm::LogProduct;

  /// Abrupt step from lambda_initial to lambda_final at lambda_switch_epoch.
  double lambda_at(std::size_t epoch) const {
    return epoch < lambda_switch_epoch ? lambda_initial : lambda_final;
  }

  void validate() const {
    if (lambda_initial < 0.0 || lambda_final < 0.0) {
      throw std::invalid_argument("lambda must be non-negative");
    }
  }
};

/// Rows of a dataset forming one minibatch.
struct Batch {
  const Dataset& data;
  std::span<const std::size_t> rows;
};

namespace detail {

inline ForwardMode mode_for_row(const ForwardMode& mode, std::size_t row) {
  ForwardMode m = mode;
  if (auto* s = std::get_if<CutSampledMode>(&m)) s->seed = Rng(s->seed).derive({row}).state();
  return m;
}

inline void require_single_use_parameters(const Model& model) {
  std::vector<int> theta_uses(model.num_theta, 0);
  std::vector<int> alpha_uses(model.num_alpha, 0);
  for (const auto& op : model.circuit.ops) {
    if (auto* t = std::get_if<Trainable>(&op.binding)) ++theta_uses.at(t->index);
    if (auto* a = std::get_if<CutAngle>(&op.binding)) ++alpha_uses.at(a->index);
  }
  auto multi = [](int n) { return n > 1; };
  if (std::any_of(theta_uses.begin(), theta_uses.end(), multi) ||
      std::any_of(alpha_uses.begin(), alpha_uses.end(), multi)) {
    throw std::invalid_argument("parameter shift needs each parameter bound to a single gate");
  }
}

}  // namespace detail

/// Batch MSE plus lambda times the overhead penalty.
inline double loss(const Model& model, const ParameterSet& params, const Batch& batch,
                   double lambda, const ForwardMode& mode = FullMode{},
                   RegularizerForm form = RegularizerForm::LogProduct,
                   const CutOptions& options = {}) {
  if (batch.rows.empty()) throw std::invalid_argument("loss: empty batch");
  std::vector<double> sq(batch.rows.size());
  parallel_for(batch.rows.size(), [&](std::size_t i) {
    const std::size_t r = batch.rows[i];
    const double f = forward(model, params, batch.data.row(r), detail::mode_for_row(mode, r), options);
    sq[i] = (f - batch.data.targets[r]) * (f - batch.data.targets[r]);
  });
  double acc = 0.0;
  for (double v : sq) acc += v;
  return acc / static_cast<double>(sq.size()) + lambda * regularizer(params.alpha, form);
}

/// Exact gradient of loss() with respect to the flat parameters (theta then
/// alpha) using the ±π/2 shift rule on every rotation, valid because each
/// generator has eigenvalues ±1/2.
inline std::vector<double> parameter_shift_grad(const Model& model, const ParameterSet& params,
                                                const Batch& batch, double lambda,
                                                const ForwardMode& mode = FullMode{},
                                                RegularizerForm form = RegularizerForm::LogProduct,
                                                const CutOptions& options = {}) {
  if (batch.rows.empty()) throw std::invalid_argument("gradient: empty batch");
  detail::require_single_use_parameters(model);
  const std::size_t dim = params.size();
  const std::vector<double> base = params.flat();
  constexpr double shift = std::numbers::pi / 2.0;

  std::vector<std::vector<double>> per_row(batch.rows.size());
  parallel_for(batch.rows.size(), [&](std::size_t i) {
    const std::size_t r = batch.rows[i];
    const auto x = batch.data.row(r);
    const ForwardMode m = detail::mode_for_row(mode, r);
    ParameterSet p = params;
    const double residual = forward(model, p, x, m, options) - batch.data.targets[r];
    std::vector<double> flat = base;
    auto& g = per_row[i];
    g.assign(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      flat[j] = base[j] + shift;
      p.assign_flat(flat);
      const double plus = forward(model, p, x, m, options);
      flat[j] = base[j] - shift;
      p.assign_flat(flat);
      const double minus = forward(model, p, x, m, options);
      flat[j] = base[j];
      g[j] = residual * (plus - minus);  // 2r · (f₊ - f₋)/2
    }
  });

  std::vector<double> grad(dim, 0.0);
  for (const auto& g : per_row) {
    for (std::size_t j = 0; j < dim; ++j) grad[j] += g[j];
  }
  for (auto& v : grad) v /= static_cast<double>(batch.rows.size());
  const auto rg = regularizer_grad(params.alpha, form);
  for (std::size_t l = 0; l < rg.size(); ++l) grad[params.theta.size() + l] += lambda * rg[l];
  return grad;
}

/// One-direction SPSA estimate [f(p + cΔ) - f(p - cΔ)] / (2c) · Δ with
/// Rademacher Δ drawn from `rng`.
template <typename Objective>
std::vector<double> spsa_estimate(Objective&& objective, std::span<const double> p, double c,
                                  Rng& rng) {
  if (!(c > 0.0)) throw std::invalid_argument("SPSA perturbation must be positive");
  std::vector<double> delta(p.size());
  for (auto& d : delta) d = rng.rademacher();
  std::vector<double> plus(p.begin(), p.end());
  std::vector<double> minus(p.begin(), p.end());
  for (std::size_t j = 0; j < p.size(); ++j) {
    plus[j] += c * delta[j];
    minus[j] -= c * delta[j];
  }
  const double diff = (objective(std::span<const double>(plus)) -
                       objective(std::span<const double>(minus))) /
                      (2.0 * c);
  std::vector<double> g(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) g[j] = diff * delta[j];
  return g;
}

inline std::vector<double> spsa_grad(const Model& model, const ParameterSet& params,
                                     const Batch& batch, double lambda, Rng& rng,
                                     double c = 0.1, const ForwardMode& mode = FullMode{},
                                     RegularizerForm form = RegularizerForm::LogProduct,
                                     const CutOptions& options = {}) {
  const auto flat = params.flat();
  ParameterSet p = params;
  return spsa_estimate(
      [&](std::span<const double> v) {
        p.assign_flat(v);
        return loss(model, p, batch, lambda, mode, form, options);
      },
      flat, c, rng);
}

struct AmsgradConfig {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Amsgrad with bias correction applied to m and v before the running max:
///   m̂ = m/(1-β1^t), v̂ = v/(1-β2^t), v_max = max(v_max, v̂),
///   p -= η m̂ / (√v_max + ε).
class Amsgrad {
 public:
  explicit Amsgrad(std::size_t size, AmsgradConfig config = {})
      : config_(config), m_(size, 0.0), v_(size, 0.0), v_max_(size, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) {
      throw std::invalid_argument("Amsgrad: size mismatch");
    }
    ++t_;
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < m_.size(); ++i) {
      m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
      v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
      v_max_[i] = std::max(v_max_[i], v_[i] / c2);
      params[i] -= config_.learning_rate * (m_[i] / c1) / (std::sqrt(v_max_[i]) + config_.epsilon);
    }
  }

  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }
  const std::vector<double>& max_second_moment() const { return v_max_; }
  std::size_t steps() const { return t_; }
  const AmsgradConfig& config() const { return config_; }

 private:
  AmsgradConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::vector<double> v_max_;
  std::size_t t_ = 0;
};

enum class GradientMethod { ParameterShift, Spsa };

enum class AlphaInit { HalfPi, Small, Explicit };

/// θ uniform in [-π, π) from `seed`; α per `init` (π/2, 0.1, or `explicit_alpha`).
inline ParameterSet initialize_parameters(const Model& model, AlphaInit init, std::uint64_t seed,
                                          std::span<const double> explicit_alpha = {}) {
  ParameterSet p = model.zero_parameters();
  Rng rng = Rng(seed).derive({5});
  for (auto& t : p.theta) t = -std::numbers::pi + 2.0 * std::numbers::pi * rng.uniform();
  switch (init) {
    case AlphaInit::HalfPi: std::fill(p.alpha.begin(), p.alpha.end(), std::numbers::pi / 2.0); break;
    case AlphaInit::Small: std::fill(p.alpha.begin(), p.alpha.end(), 0.1); break;
    case AlphaInit::Explicit:
      if (explicit_alpha.size() != p.alpha.size()) {
        throw std::invalid_argument("explicit alpha list has " +
                                    std::to_string(explicit_alpha.size()) + " entries, model has " +
                                    std::to_string(p.alpha.size()) + " cuts");
      }
      std::copy(explicit_alpha.begin(), explicit_alpha.end(), p.alpha.begin());
      break;
  }
  return p;
}

struct TrainConfig {
  std::size_t epochs = 100;
  std::size_t batch_size = 32;
  AmsgradConfig optimizer{};
  LossConfig loss{};
  GradientMethod gradient = GradientMethod::ParameterShift;
  double spsa_c = 0.1;
  ForwardMode train_mode = FullMode{};
  ForwardMode eval_mode = FullMode{};
  CutOptions cut_options{};
  std::uint64_t seed = 0;
  std::size_t q_samples = 1;
  /// When false, wallclock_ms is written as 0 so metrics files are reproducible.
  bool record_wallclock = false;
};

struct TrainResult {
  std::vector<MetricsRecord> trajectory;  // epochs 0..E, row E after the last update
  ParameterSet initial_params;
  ParameterSet final_params;
  double initial_test_mse = 0.0;
  double final_test_mse = 0.0;
};

/// Minibatch training. Each epoch records metrics at its start (so S_total is
/// measured before that epoch's updates), shuffles the train rows with a
/// stream derived from (seed, epoch), and takes one optimizer step per batch.
/// A final record with epoch = E is taken after the last update.
inline TrainResult train(const Model& model, ParameterSet params, const Dataset& data,
                         const TrainConfig& config,
                         const std::function<void(const MetricsRecord&)>& on_record = {}) {
  model.check(params);
  config.loss.validate();
  if (config.batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  auto train_rows = data.indices(Split::Train);
  if (train_rows.empty()) throw std::invalid_argument("training split is empty");

  const auto start = std::chrono::steady_clock::now();
  auto emit = [&](TrainResult& res, std::size_t epoch, const ParameterSet& p, double lambda) {
    MetricsRecord rec =
        track(epoch, model, p, data, config.eval_mode, lambda, config.q_samples, config.cut_options);
    if (config.record_wallclock) {
      rec.wallclock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    res.trajectory.push_back(rec);
    if (on_record) on_record(rec);
  };

  TrainResult res;
  res.initial_params = params;
  res.initial_test_mse = split_mse(model, params, data, Split::Test, config.eval_mode, config.cut_options);

  Amsgrad opt(params.size(), config.optimizer);
  const Rng root(config.seed);
  std::vector<double> flat = params.flat();
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double lambda = config.loss.lambda_at(epoch);
    emit(res, epoch, params, lambda);

    Rng shuffle_rng = root.derive({0, epoch});
    shuffle(train_rows.begin(), train_rows.end(), shuffle_rng);
    for (std::size_t begin = 0; begin < train_rows.size(); begin += config.batch_size, ++step) {
      const std::size_t end = std::min(train_rows.size(), begin + config.batch_size);
      const Batch batch{data, std::span<const std::size_t>(train_rows).subspan(begin, end - begin)};

      ForwardMode mode = config.train_mode;
      if (auto* s = std::get_if<CutSampledMode>(&mode)) {
        s->seed = Rng(s->seed).derive({step}).state();
      }
      std::vector<double> grad;
      if (config.gradient == GradientMethod::ParameterShift) {
        grad = parameter_shift_grad(model, params, batch, lambda, mode, config.loss.form,
                                    config.cut_options);
      } else {
        Rng spsa_rng = root.derive({1, step});
        grad = spsa_grad(model, params, batch, lambda, spsa_rng, config.spsa_c, mode,
                         config.loss.form, config.cut_options);
      }
      opt.step(flat, grad);
      params.assign_flat(flat);
    }
  }
  emit(res, config.epochs, params, config.loss.lambda_at(config.epochs));

  res.final_params = params;
  res.final_test_mse = split_mse(model, params, data, Split::Test, config.eval_mode, config.cut_options);
  return res;
}

}  // namespace cutreg

#endif  // CUTREG_TRAINING_HPP
