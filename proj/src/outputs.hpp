#pragma once

#include <iosfwd>
#include <string>

#include "experiment.hpp"

namespace wrgoal {

// Shortest lossless decimal (%.17g); infinities print as "inf"/"-inf".
std::string fmt17(double v);

// One file per call, deterministic bytes given identical inputs.
void write_run_csv(std::ostream& os, const VariantResult& vr);
void write_estimator_csv(std::ostream& os, const LevelRecord& rec);
void write_mesh_txt(std::ostream& os, const LevelRecord& rec);

// The whole output tree for one experiment in `dir` (created if needed):
//   run_<variant>.csv            level,N,K,nu,mu_total,J_discrete,J_error_vs_reference
//   estimator_<variant>.csv      final-level local estimates
//   mesh_<variant>.txt           final-level breakpoints, one line per component
//   mesh_<variant>.svg           final-level step sizes per component
//   convergence.svg              error (solid) and estimate (dashed) vs N, all variants
//   iterations.svg               sweeps used per level, all variants
//   matrices_<variant>_l<NN>_{fhat,fcheck,g,h}.txt   when emit_matrices is set
void write_outputs(const ExperimentResult& res, const std::string& dir);

}  // namespace wrgoal
