#pragma once

#include <memory>

#include "assembly.hpp"
#include "basis.hpp"

namespace wrgoal {

// One sparse LU of F_hat serves a whole mesh level: every primal sweep solves
// F_hat x = b and every dual solves F_hat^T x = b against the same factors.
class LevelFactorization {
 public:
  explicit LevelFactorization(const SpMat& F_hat);

  Vec solve(const Vec& rhs) const;
  Vec solve_transposed(const Vec& rhs) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;  // transpose() is non-const in Eigen; logically const
};

// Next iterate from the previous one: F_hat u = G - F_check u_prev.
Vec next_iterate(const LevelFactorization& lu, const AssembledSystem& sys, const Vec& prev);

// Terminal dual (weights the newest iterate): F_hat^T z = H.
Vec dual_terminal(const LevelFactorization& lu, const AssembledSystem& sys);

// Dual one sweep deeper: F_hat^T z = -F_check^T z_next.
Vec dual_shift(const LevelFactorization& lu, const AssembledSystem& sys, const Vec& next);

// Sup-norm distance between two waveforms on the same mesh, sampled at every
// breakpoint of every component, plus cell midpoints for the nodal family.
double sup_distance(const DiscreteFunction& a, const DiscreteFunction& b);

}  // namespace wrgoal
