#pragma once

#include <memory>
#include <vector>

#include "assembly.hpp"
#include "basis.hpp"

namespace wrgoal {

// Dense 4th-order one-step solve with cubic-Hermite evaluation between steps.
class ReferenceSolution {
 public:
  ReferenceSolution(const Problem& p, int nsteps);

  Vec eval(double t) const;
  double eval(int i, double t) const { return eval(t)[i]; }
  double qoi(const Qoi& q) const;
  int steps() const { return nsteps_; }

 private:
  std::vector<double> ts_;
  std::vector<Vec> ys_, fs_;
  int nsteps_ = 0;
};

struct GatedReference {
  ReferenceSolution sol;
  double J = 0.0;           // QoI value on the reference
  double gate_delta = 0.0;  // |J at h - J at h/2|
};

// Reference at 2^17 steps, self-convergence gated against 2^16: the QoI must
// move by less than 1e-9 under step halving, otherwise this throws.
GatedReference reference_solve(const Problem& p, const Qoi& q);

double true_goal_error(const GatedReference& ref, const Qoi& q, const DiscreteFunction& u);

// All K sweeps solved at once as one block-bidiagonal system (diagonal F_hat,
// subdiagonal F_check, first block forced by G - F_check u0_coeffs).
// Verification oracle for the sequential sweep solver; dense, desk scale.
std::vector<DiscreteFunction> stacked_solve(const Problem& p, const Splitting& s, const Qoi& q,
                                            const std::shared_ptr<const MultiMesh>& mesh,
                                            Scheme scheme, int K, const Vec& u0_coeffs);

// Exact adjoint of the K-sweep stack, integrated backward segment-by-segment
// between QoI event times.  The terminal block carries the QoI weights: the
// terminal ones as end condition, interior ones as jumps.  Deeper blocks are
// forced by -B_check^T times the block above and end at zero.
// side < 0 selects the left limit at event times.
class StackedAdjoint {
 public:
  StackedAdjoint(const Splitting& s, const Qoi& q, int K, double t0, double tn,
                 int nsteps = 1 << 13);

  double value(int k, int i, double t, int side = 0) const;  // k in 1..K
  Vec value(int k, double t, int side = 0) const;

 private:
  struct Segment {
    std::vector<double> ts;
    std::vector<Vec> ys, fs;
  };
  std::vector<std::vector<Segment>> blocks_;  // [k-1], segments left to right
};

}  // namespace wrgoal
