#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace wrgoal {

// One run variant: time scheme plus refinement mode.
struct Variant {
  Scheme scheme = Scheme::explicit_euler;
  bool goal = true;  // false: uniform (bisect everything, p = 1)
  friend bool operator==(const Variant&, const Variant&) = default;
};

std::string to_string(const Variant& v);   // "euler:goal"
std::string file_token(const Variant& v);  // "euler_goal"
Variant parse_variant(const std::string& s);

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);
std::string to_string(SplitKind k);
SplitKind parse_split(const std::string& s);

// Everything a batch run needs: the problem, the goal functional, run
// parameters for the goal and uniform modes, the variant list, output options.
struct ExperimentConfig {
  std::string name = "config";
  Problem problem;
  std::vector<QoiTerm> qoi_terms;
  SplitKind splitting = SplitKind::jacobi;
  int levels = 10;  // goal-mode refinement steps
  double fraction = 0.4;
  int k_max = 12;
  int n_init = 32;
  int uniform_levels = 5;
  std::vector<Variant> variants;
  std::string out_dir = "out";
  bool emit_matrices = false;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// JSON in, fully validated config out.  Syntax errors report line and column;
// semantic errors name the offending field.  Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);

// Canonical form: parse_config(format_config(c)) == c, and formatting is
// byte-deterministic.
std::string format_config(const ExperimentConfig& c);

// The three built-in experiment presets: exp1, exp2, exp3.
ExperimentConfig preset(const std::string& name);

}  // namespace wrgoal
