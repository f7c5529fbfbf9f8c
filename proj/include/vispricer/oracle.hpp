// Copyright 2026 The Vispricer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "vispricer/experiment.hpp"

namespace vispricer {

struct OracleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Brute-force and algebraic cross-checks of the solver stack: improvement
/// route agreement, greedy ratio against exhaustive search, candidate-price
/// optimality against a dense grid, grid-refinement dominance, Shapley
/// axioms, and a pipeline sanity run on the configured dataset. Randomized
/// parts derive from cfg.seed.
std::vector<OracleCheck> run_oracle_checks(const ExperimentConfig& cfg);

}  // namespace vispricer
