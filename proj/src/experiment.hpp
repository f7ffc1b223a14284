#pragma once

#include <vector>

#include "config.hpp"
#include "driver.hpp"

namespace wrgoal {

struct VariantResult {
  Variant variant;
  RunHistory history;
  std::vector<double> errors;  // |J_level - J_reference| per level
};

struct ExperimentResult {
  ExperimentConfig config;
  double reference_J = 0.0;
  double gate_delta = 0.0;
  std::vector<VariantResult> variants;
};

// Solves the gated reference once, then runs every requested variant
// (goal mode: cfg.levels / cfg.fraction; uniform mode: cfg.uniform_levels,
// everything bisected each level).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace wrgoal
