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

// Run configuration: a flat `key = value` text file. '#' starts a comment.
// Unknown keys, duplicate keys and ill-typed values are errors.

#ifndef CUTREG_CONFIG_HPP
#define CUTREG_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cutreg/ansatz.hpp"
#include "cutreg/format.hpp"
#include "cutreg/qpd.hpp"
#include "cutreg/training.hpp"

namespace cutreg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModeName { Full, CutExact, CutSampled };

inline ModeName parse_mode_name(std::string_view s) {
  if (s == "full") return ModeName::Full;
  if (s == "cut-exact") return ModeName::CutExact;
  if (s == "cut-sampled") return ModeName::CutSampled;
  throw ConfigError("mode must be one of full, cut-exact, cut-sampled (got '" + std::string(s) +
                    "')");
}

/// Comma-separated list of reals.
inline std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    try {
      out.push_back(parse_double(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct RunConfig {
  // model
  std::size_t num_qubits = 6;
  std::size_t num_partitions = 3;
  std::size_t num_layers = 2;
  // alpha_init: half_pi | small | comma-separated radians
  AlphaInit alpha_init = AlphaInit::HalfPi;
  std::vector<double> alpha_values;
  // loss
  double lambda_initial = 0.01;
  double lambda_final = 0.0001;
  std::size_t lambda_switch_epoch = 10;
  RegularizerForm regularizer = RegularizerForm::LogProduct;
  // optimizer
  std::size_t epochs = 100;
  std::size_t batch_size = 32;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  GradientMethod gradient = GradientMethod::ParameterShift;
  double spsa_c = 0.1;
  // evaluation
  ModeName mode = ModeName::Full;
  ModeName eval_mode = ModeName::Full;
  std::size_t samples = 1000;
  double max_subcircuit_runs = 1e6;
  std::size_t q_samples = 1;
  std::size_t trials = 100;
  // data
  std::size_t n_train = 100;
  std::size_t n_val = 50;
  std::size_t n_test = 50;
  double noise_std = 0.0;
  std::string dataset;  // empty: generate from seed_data
  // seeds
  std::uint64_t seed_data = 42;
  std::uint64_t seed_init = 1;
  std::uint64_t seed_train = 1;
  std::uint64_t seed_sampling = 1;
  // output
  std::string out_dir = "out";
  bool record_wallclock = false;

  AnsatzConfig ansatz() const { return {num_qubits, num_partitions, num_layers, {}}; }

  CutOptions cut_options() const { return {max_subcircuit_runs, 0.0}; }

  ForwardMode forward_mode(ModeName name, std::uint64_t seed) const {
    switch (name) {
      case ModeName::Full: return FullMode{};
      case ModeName::CutExact: return CutExactMode{};
      case ModeName::CutSampled: return CutSampledMode{samples, seed};
    }
    return FullMode{};
  }

  TrainConfig train_config() const {
    TrainConfig t;
    t.epochs = epochs;
    t.batch_size = batch_size;
    t.optimizer = {learning_rate, beta1, beta2, epsilon};
    t.loss = {lambda_initial, lambda_final, lambda_switch_epoch, regularizer};
    t.gradient = gradient;
    t.spsa_c = spsa_c;
    t.train_mode = forward_mode(mode, seed_sampling);
    t.eval_mode = forward_mode(eval_mode, Rng(seed_sampling).derive({7}).state());
    t.cut_options = cut_options();
    t.seed = seed_train;
    t.q_samples = q_samples;
    t.record_wallclock = record_wallclock;
    return t;
  }

  void validate() const {
    try {
      ansatz().validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (batch_size == 0) throw ConfigError("batch_size must be positive");
    if (samples == 0) throw ConfigError("samples must be positive");
    if (lambda_initial < 0.0 || lambda_final < 0.0) throw ConfigError("lambda must be >= 0");
    if (!(spsa_c > 0.0)) throw ConfigError("spsa_c must be positive");
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
    if (n_train == 0 || n_val == 0 || n_test == 0) throw ConfigError("split sizes must be positive");
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError(key + ": integer out of range");
  }
}

inline double parse_real(const std::string& key, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError(key + ": expected a real number, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

inline const std::map<std::string, Setter, std::less<>>& config_schema() {
  auto size = [](std::size_t RunConfig::*field) -> Setter {
    return [field](RunConfig& c, const std::string& k, const std::string& v) {
      c.*field = static_cast<std::size_t>(parse_unsigned(k, v));
    };
  };
  auto seed = [](std::uint64_t RunConfig::*field) -> Setter {
    return [field](RunConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_unsigned(k, v);
    };
  };
  auto real = [](double RunConfig::*field) -> Setter {
    return [field](RunConfig& c, const std::string& k, const std::string& v) {
      c.*field = parse_real(k, v);
    };
  };
  static const std::map<std::string, Setter, std::less<>> schema = {
      {"num_qubits", size(&RunConfig::num_qubits)},
      {"num_partitions", size(&RunConfig::num_partitions)},
      {"num_layers", size(&RunConfig::num_layers)},
      {"alpha_init",
       [](RunConfig& c, const std::string&, const std::string& v) {
         if (v == "half_pi") {
           c.alpha_init = AlphaInit::HalfPi;
         } else if (v == "small") {
           c.alpha_init = AlphaInit::Small;
         } else {
           c.alpha_init = AlphaInit::Explicit;
           c.alpha_values = parse_double_list(v);
         }
       }},
      {"lambda_initial", real(&RunConfig::lambda_initial)},
      {"lambda_final", real(&RunConfig::lambda_final)},
      {"lambda_switch_epoch", size(&RunConfig::lambda_switch_epoch)},
      {"regularizer",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "log_product") {
           c.regularizer = RegularizerForm::LogProduct;
         } else if (v == "sum_minus_one") {
           c.regularizer = RegularizerForm::SumMinusOne;
         } else {
           throw ConfigError(k + ": expected log_product or sum_minus_one");
         }
       }},
      {"epochs", size(&RunConfig::epochs)},
      {"batch_size", size(&RunConfig::batch_size)},
      {"learning_rate", real(&RunConfig::learning_rate)},
      {"beta1", real(&RunConfig::beta1)},
      {"beta2", real(&RunConfig::beta2)},
      {"epsilon", real(&RunConfig::epsilon)},
      {"gradient",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "parameter_shift") {
           c.gradient = GradientMethod::ParameterShift;
         } else if (v == "spsa") {
           c.gradient = GradientMethod::Spsa;
         } else {
           throw ConfigError(k + ": expected parameter_shift or spsa");
         }
       }},
      {"spsa_c", real(&RunConfig::spsa_c)},
      {"mode", [](RunConfig& c, const std::string&, const std::string& v) { c.mode = parse_mode_name(v); }},
      {"eval_mode",
       [](RunConfig& c, const std::string&, const std::string& v) { c.eval_mode = parse_mode_name(v); }},
      {"samples", size(&RunConfig::samples)},
      {"max_subcircuit_runs", real(&RunConfig::max_subcircuit_runs)},
      {"q_samples", size(&RunConfig::q_samples)},
      {"trials", size(&RunConfig::trials)},
      {"n_train", size(&RunConfig::n_train)},
      {"n_val", size(&RunConfig::n_val)},
      {"n_test", size(&RunConfig::n_test)},
      {"noise_std", real(&RunConfig::noise_std)},
      {"dataset", [](RunConfig& c, const std::string&, const std::string& v) { c.dataset = v; }},
      {"seed_data", seed(&RunConfig::seed_data)},
      {"seed_init", seed(&RunConfig::seed_init)},
      {"seed_train", seed(&RunConfig::seed_train)},
      {"seed_sampling", seed(&RunConfig::seed_sampling)},
      {"out_dir", [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
      {"record_wallclock",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.record_wallclock = parse_bool(k, v);
       }},
  };
  return schema;
}

}  // namespace detail

/// Applies one `key = value` assignment.
inline void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& schema = detail::config_schema();
  const auto it = schema.find(key);
  if (it == schema.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(config, key, value);
}

inline RunConfig parse_config(std::istream& is) {
  RunConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    try {
      set_config_value(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace cutreg

#endif  // CUTREG_CONFIG_HPP
