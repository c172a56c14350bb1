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

#ifndef CUTREG_CUTREG_HPP
#define CUTREG_CUTREG_HPP

#include "cutreg/ansatz.hpp"
#include "cutreg/circuit.hpp"
#include "cutreg/config.hpp"
#include "cutreg/dataset.hpp"
#include "cutreg/format.hpp"
#include "cutreg/metrics.hpp"
#include "cutreg/parallel.hpp"
#include "cutreg/qpd.hpp"
#include "cutreg/rng.hpp"
#include "cutreg/statevector.hpp"
#include "cutreg/training.hpp"

#endif  // CUTREG_CUTREG_HPP
