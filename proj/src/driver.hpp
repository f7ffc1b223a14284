#pragma once

#include <memory>
#include <vector>

#include "estimators.hpp"
#include "solver.hpp"

namespace wrgoal {

struct RunConfig {
  Scheme scheme = Scheme::explicit_euler;
  SplitKind splitting = SplitKind::jacobi;
  int levels = 10;        // refinement steps beyond level 0
  double fraction = 0.4;  // share of cells bisected per level
  int k_max = 12;         // sweep cap per level
  int n_init = 32;        // initial breakpoints per component
  void validate() const;
};

struct LevelRecord {
  int level = 0;
  long N = 0;
  int K = 0;
  double nu = 0.0;
  double mu_total = 0.0;
  double J = 0.0;
  std::vector<Vec> mu_local;                    // [i](j-1) on this level's mesh
  std::vector<std::vector<double>> mesh_grids;  // breakpoints per component
  double wall_ms = 0.0;
};

struct RunHistory {
  std::vector<LevelRecord> levels;  // 0..L in order
  std::shared_ptr<const MultiMesh> final_mesh;
  DiscreteFunction final_iterate;
};

// Stop the sweep loop iff the discretization estimate exceeds the splitting
// bound (strict).  A +inf bound (non-dissipative fallback) never stops early;
// the sweep cap then rules.
bool stopping_check(double mu_total, double nu);

// The full adaptive loop.  Level 0 iterates from the constant initial-value
// waveform; every later level bisects the ceil(fraction*N) worst cells by the
// local estimates and starts from the transferred final iterate.  Per level:
// assemble and factorize once, sweep until stopping_check fires or the cap is
// hit, recording N, K, nu, mu and the QoI value.
RunHistory run(const Problem& p, const Qoi& q, const RunConfig& cfg);

}  // namespace wrgoal
