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

// cutreg: experiment runner for overhead-regularized training of cut circuits.
//
// Exit codes: 0 success, 1 usage/config error, 2 verification failure,
// 3 resource cap exceeded.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cutreg/cutreg.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;
using namespace cutreg;

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kResourceCap = 3 };

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed_data;
  std::optional<std::uint64_t> seed_train;
  std::optional<std::string> out_dir;
  std::optional<std::string> mode;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Run config file (key = value)");
  cmd->add_option("--seed-data", flags.seed_data, "Override seed_data");
  cmd->add_option("--seed-train", flags.seed_train, "Override seed_train");
  cmd->add_option("--out", flags.out_dir, "Override out_dir");
  cmd->add_option("--mode", flags.mode, "Forward mode: full, cut-exact, cut-sampled");
}

RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config_path.empty() ? RunConfig{} : load_config(flags.config_path);
  if (flags.seed_data) cfg.seed_data = *flags.seed_data;
  if (flags.seed_train) cfg.seed_train = *flags.seed_train;
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  cfg.validate();
  return cfg;
}

Dataset load_or_generate(const RunConfig& cfg) {
  if (!cfg.dataset.empty()) {
    std::ifstream in(cfg.dataset);
    if (!in) throw std::runtime_error("cannot open dataset '" + cfg.dataset + "'");
    return read_csv(in);
  }
  const std::size_t features = cfg.ansatz().num_features();
  return generate_dataset(features, cfg.seed_data, cfg.noise_std, cfg.n_train, cfg.n_val,
                          cfg.n_test);
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

int cmd_generate_data(const CommonFlags& flags) {
  const RunConfig cfg = resolve_config(flags);
  const Dataset d = load_or_generate(cfg);
  const auto dir = prepare_out_dir(cfg);
  {
    std::ofstream out(dir / "dataset.csv");
    if (!out) throw std::runtime_error("cannot write dataset.csv");
    write_csv(out, d);
  }
  json meta = {
      {"n_samples", d.size()},
      {"n_features", d.num_features},
      {"num_qubits", cfg.num_qubits},
      {"seed_data", cfg.seed_data},
      {"noise_std", cfg.noise_std},
      {"splits", {{"train", cfg.n_train}, {"val", cfg.n_val}, {"test", cfg.n_test}}},
      {"scaling",
       {{"feature_range", {-std::numbers::pi, std::numbers::pi}},
        {"target_range", {-1.0, 1.0}},
        {"feature_min", d.scaling.feature_min},
        {"feature_max", d.scaling.feature_max},
        {"degenerate_features", d.scaling.degenerate},
        {"target_min", d.scaling.target_min},
        {"target_max", d.scaling.target_max}}},
  };
  write_json(dir / "dataset.json", meta);
  if (d.has_degenerate_feature()) {
    std::cerr << "warning: constant feature column(s) mapped to 0\n";
  }
  std::cout << "wrote " << (dir / "dataset.csv").string() << " (" << d.size() << " rows, "
            << d.num_features << " features)\n";
  return kOk;
}

int cmd_overhead(const CommonFlags& flags, const std::optional<std::string>& alphas_text) {
  const RunConfig cfg = resolve_config(flags);
  std::vector<double> alphas;
  if (alphas_text) {
    alphas = parse_double_list(*alphas_text);
  } else {
    const Model model = build_ansatz(cfg.ansatz());
    alphas = initialize_parameters(model, cfg.alpha_init, cfg.seed_init, cfg.alpha_values).alpha;
  }
  double k = 1.0;
  for (double a : alphas) k *= kappa(a);
  std::cout << "cuts = " << alphas.size() << '\n'
            << "s = " << format_significant(sampling_overhead(alphas)) << '\n'
            << "kappa = " << format_significant(k) << '\n'
            << "R_overhead = " << format_significant(regularizer(alphas, cfg.regularizer)) << '\n';
  return kOk;
}

int cmd_cut_check(const CommonFlags& flags, std::optional<std::size_t> trials_flag,
                  double sabotage) {
  RunConfig cfg = resolve_config(flags);
  const std::size_t trials = trials_flag.value_or(cfg.trials);
  const Model model = build_ansatz(cfg.ansatz());
  CutOptions options = cfg.cut_options();
  options.channel_coefficient_bias = sabotage;

  const Rng root(cfg.seed_sampling);
  double max_dev = 0.0;
  double max_z = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.derive({t});
    ParameterSet p = model.zero_parameters();
    for (auto& v : p.theta) v = 2.0 * std::numbers::pi * rng.uniform();
    for (auto& v : p.alpha) v = 2.0 * std::numbers::pi * rng.uniform();
    std::vector<double> x(model.num_features);
    for (auto& v : x) v = -std::numbers::pi + 2.0 * std::numbers::pi * rng.uniform();
    const Bindings b{p.theta, x, p.alpha};

    const double full = expectation(simulate(model.circuit, b), model.observable);
    const double exact = evaluate_exact(model.circuit, model.cuts, b, model.observable, options);
    const auto sampled = evaluate_sampled(model.circuit, model.cuts, b, model.observable,
                                          cfg.samples, rng(), options);
    max_dev = std::max(max_dev, std::abs(exact - full));
    if (sampled.standard_error > 0.0) {
      max_z = std::max(max_z, std::abs(sampled.mean - full) / sampled.standard_error);
    }
  }
  const bool ok = max_dev <= 1e-9;
  std::cout << "cuts = " << model.cuts.size() << '\n'
            << "trials = " << trials << '\n'
            << "samples = " << cfg.samples << '\n'
            << "max |exact - full| = " << format_significant(max_dev, 3) << '\n'
            << "max |z| sampled = " << format_significant(max_z, 3) << '\n'
            << "result = " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kVerificationFailed;
}

int cmd_train(const CommonFlags& flags) {
  RunConfig cfg = resolve_config(flags);
  if (flags.mode) cfg.mode = parse_mode_name(*flags.mode);
  const Dataset data = load_or_generate(cfg);
  const Model model = build_ansatz(cfg.ansatz());
  if (data.num_features != model.num_features) {
    throw ConfigError("dataset has " + std::to_string(data.num_features) +
                      " features, model expects " + std::to_string(model.num_features));
  }
  const ParameterSet init =
      initialize_parameters(model, cfg.alpha_init, cfg.seed_init, cfg.alpha_values);
  const auto dir = prepare_out_dir(cfg);

  std::ofstream metrics(dir / "metrics.csv");
  if (!metrics) throw std::runtime_error("cannot write metrics.csv");
  metrics << kMetricsCsvHeader << '\n' << std::flush;
  const TrainResult res = train(model, init, data, cfg.train_config(), [&](const MetricsRecord& r) {
    metrics << to_csv_row(r) << '\n' << std::flush;
  });

  write_json(dir / "params.json",
             {{"theta", res.final_params.theta}, {"alpha", res.final_params.alpha}});
  const json summary = {
      {"final_test_mse", res.final_test_mse},
      {"initial_test_mse", res.initial_test_mse},
      {"final_s_total", res.trajectory.back().s_total},
      {"initial_s_total", res.trajectory.front().s_total},
      {"epochs", cfg.epochs},
  };
  write_json(dir / "summary.json", summary);
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

int cmd_evaluate(const CommonFlags& flags, const std::optional<std::string>& params_path) {
  RunConfig cfg = resolve_config(flags);
  if (flags.mode) cfg.eval_mode = parse_mode_name(*flags.mode);
  const Dataset data = load_or_generate(cfg);
  const Model model = build_ansatz(cfg.ansatz());

  const std::string path =
      params_path.value_or((std::filesystem::path(cfg.out_dir) / "params.json").string());
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameters '" + path + "'");
  const json pj = json::parse(in);
  ParameterSet p{pj.at("theta").get<std::vector<double>>(), pj.at("alpha").get<std::vector<double>>()};
  model.check(p);

  const ForwardMode mode = cfg.forward_mode(cfg.eval_mode, cfg.seed_sampling);
  const CutOptions options = cfg.cut_options();
  double k = 1.0;
  for (double a : p.alpha) k *= kappa(a);
  const json out = {
      {"train_mse", split_mse(model, p, data, Split::Train, mode, options)},
      {"val_mse", split_mse(model, p, data, Split::Val, mode, options)},
      {"test_mse", split_mse(model, p, data, Split::Test, mode, options)},
      {"s_total", sampling_overhead(p.alpha)},
      {"kappa_total", k},
      {"meyer_wallach_q", reference_entanglement(model, p, data, cfg.q_samples)},
  };
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_show_circuit(const CommonFlags& flags) {
  const RunConfig cfg = resolve_config(flags);
  const Model model = build_ansatz(cfg.ansatz());
  std::cout << to_text(model.circuit);
  std::cout << "theta = " << model.num_theta << ", alpha = " << model.num_alpha
            << ", features = " << model.num_features << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cutreg: overhead-regularized training of cut variational circuits"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::optional<std::string> alphas;
  std::optional<std::size_t> trials;
  double sabotage = 0.0;
  std::optional<std::string> params_path;

  auto* gen = app.add_subcommand("generate-data", "Write the synthetic regression dataset");
  add_common_flags(gen, flags);
  auto* overhead = app.add_subcommand("overhead", "Print s, kappa and R_overhead for cut angles");
  add_common_flags(overhead, flags);
  overhead->add_option("--alphas", alphas, "Comma-separated cut angles in radians");
  auto* check = app.add_subcommand("cut-check", "Compare cut recombination with uncut simulation");
  add_common_flags(check, flags);
  check->add_option("--trials", trials, "Random parameter draws");
  check->add_option("--sabotage-coefficient", sabotage)->group("");  // negative-control hook
  auto* trn = app.add_subcommand("train", "Train the model and write metrics/params/summary");
  add_common_flags(trn, flags);
  auto* eval = app.add_subcommand("evaluate", "Evaluate saved parameters on the dataset");
  add_common_flags(eval, flags);
  eval->add_option("--params", params_path, "Parameter JSON (default: <out>/params.json)");
  auto* show = app.add_subcommand("show-circuit", "Print the ansatz as a text diagram");
  add_common_flags(show, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate_data(flags);
    if (*overhead) return cmd_overhead(flags, alphas);
    if (*check) return cmd_cut_check(flags, trials, sabotage);
    if (*trn) return cmd_train(flags);
    if (*eval) return cmd_evaluate(flags, params_path);
    if (*show) return cmd_show_circuit(flags);
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
