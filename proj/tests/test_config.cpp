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

#include <sstream>

#include "cutreg/config.hpp"

namespace {

using namespace cutreg;

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(RunConfig, DefaultsMatchProtocol) {
  const RunConfig c = parse("");
  EXPECT_EQ(c.num_qubits, 6u);
  EXPECT_EQ(c.num_partitions, 3u);
  EXPECT_EQ(c.epochs, 100u);
  EXPECT_EQ(c.batch_size, 32u);
  EXPECT_EQ(c.learning_rate, 0.01);
  EXPECT_EQ(c.lambda_initial, 0.01);
  EXPECT_EQ(c.lambda_final, 0.0001);
  EXPECT_EQ(c.lambda_switch_epoch, 10u);
  EXPECT_EQ(c.alpha_init, AlphaInit::HalfPi);
  EXPECT_EQ(c.gradient, GradientMethod::ParameterShift);
  EXPECT_EQ(c.mode, ModeName::Full);
  EXPECT_EQ(c.n_train + c.n_val + c.n_test, 200u);
  EXPECT_EQ(c.max_subcircuit_runs, 1e6);

  const TrainConfig t = c.train_config();
  EXPECT_EQ(t.optimizer.beta1, 0.9);
  EXPECT_EQ(t.optimizer.beta2, 0.999);
  EXPECT_TRUE(std::holds_alternative<FullMode>(t.train_mode));
}

TEST(RunConfig, ParsesValuesCommentsAndWhitespace) {
  const RunConfig c = parse(
      "# experiment\n"
      "num_qubits = 4   # smaller\n"
      "num_partitions=2\n"
      "\n"
      "alpha_init = small\n"
      "gradient = spsa\n"
      "mode = cut-sampled\n"
      "samples = 250\n"
      "lambda_final = 1e-5\n"
      "regularizer = sum_minus_one\n"
      "out_dir = runs/a\n"
      "record_wallclock = true\n");
  EXPECT_EQ(c.num_qubits, 4u);
  EXPECT_EQ(c.num_partitions, 2u);
  EXPECT_EQ(c.alpha_init, AlphaInit::Small);
  EXPECT_EQ(c.gradient, GradientMethod::Spsa);
  EXPECT_EQ(c.mode, ModeName::CutSampled);
  EXPECT_EQ(c.lambda_final, 1e-5);
  EXPECT_EQ(c.regularizer, RegularizerForm::SumMinusOne);
  EXPECT_EQ(c.out_dir, "runs/a");
  EXPECT_TRUE(c.record_wallclock);
  const auto mode = c.train_config().train_mode;
  ASSERT_TRUE(std::holds_alternative<CutSampledMode>(mode));
  EXPECT_EQ(std::get<CutSampledMode>(mode).samples, 250u);
}

TEST(RunConfig, ExplicitAlphaList) {
  const RunConfig c = parse("alpha_init = 0.1, 0.2,0.3 ,0.4\n");
  EXPECT_EQ(c.alpha_init, AlphaInit::Explicit);
  EXPECT_EQ(c.alpha_values, (std::vector<double>{0.1, 0.2, 0.3, 0.4}));
}

TEST(RunConfig, RejectsBadInput) {
  EXPECT_THROW(parse("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("epochs = 3\nepochs = 4\n"), ConfigError);
  EXPECT_THROW(parse("epochs\n"), ConfigError);
  EXPECT_THROW(parse("epochs = -1\n"), ConfigError);
  EXPECT_THROW(parse("learning_rate = fast\n"), ConfigError);
  EXPECT_THROW(parse("mode = quantum\n"), ConfigError);
  EXPECT_THROW(parse("num_qubits = 5\n"), ConfigError);
  EXPECT_THROW(parse("batch_size = 0\n"), ConfigError);
  EXPECT_THROW(parse("record_wallclock = yes\n"), ConfigError);
}

TEST(RunConfig, ErrorsCarryLineNumbers) {
  try {
    parse("epochs = 3\n\nalpha_init = half_pi\nfoo = bar\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(RunConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/cutreg.cfg"), ConfigError);
}

TEST(RunConfig, ShippedDefaultFileMatchesBuiltInDefaults) {
  const RunConfig file = load_config(CUTREG_SOURCE_DIR "/configs/default.cfg");
  const RunConfig builtin;
  EXPECT_EQ(file.num_qubits, builtin.num_qubits);
  EXPECT_EQ(file.num_partitions, builtin.num_partitions);
  EXPECT_EQ(file.num_layers, builtin.num_layers);
  EXPECT_EQ(file.alpha_init, builtin.alpha_init);
  EXPECT_EQ(file.lambda_initial, builtin.lambda_initial);
  EXPECT_EQ(file.lambda_final, builtin.lambda_final);
  EXPECT_EQ(file.lambda_switch_epoch, builtin.lambda_switch_epoch);
  EXPECT_EQ(file.epochs, builtin.epochs);
  EXPECT_EQ(file.batch_size, builtin.batch_size);
  EXPECT_EQ(file.learning_rate, builtin.learning_rate);
  EXPECT_EQ(file.epsilon, builtin.epsilon);
  EXPECT_EQ(file.gradient, builtin.gradient);
  EXPECT_EQ(file.mode, builtin.mode);
  EXPECT_EQ(file.samples, builtin.samples);
  EXPECT_EQ(file.max_subcircuit_runs, builtin.max_subcircuit_runs);
  EXPECT_EQ(file.seed_data, builtin.seed_data);
  EXPECT_EQ(file.seed_train, builtin.seed_train);
  EXPECT_EQ(file.out_dir, builtin.out_dir);
  EXPECT_EQ(file.record_wallclock, builtin.record_wallclock);
}

TEST(ParseDoubleList, Values) {
  EXPECT_EQ(parse_double_list("1.5708,1.5708"), (std::vector<double>{1.5708, 1.5708}));
  EXPECT_EQ(parse_double_list("0"), (std::vector<double>{0.0}));
  EXPECT_THROW(parse_double_list("1,,2"), std::exception);
  EXPECT_THROW(parse_double_list("x"), std::exception);
}

}  // namespace
