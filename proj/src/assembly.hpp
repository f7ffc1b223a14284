#pragma once

#include <Eigen/Sparse>
#include <iosfwd>

#include "basis.hpp"

namespace wrgoal {

using SpMat = Eigen::SparseMatrix<double>;

// Discrete operators of the variational scheme on one mesh.  Row (i,0) is the
// initial-condition row; row (i,j) tests against the right-closed cell
// (t_{i,j-1}, t_{i,j}].  F_hat carries the derivative atoms, the initial
// condition and the B_hat mass; F_check the B_check mass; G the initial values
// and the forcing integrals; H the qoi weights placed at their breakpoints.
// All four are independent of the iteration index.
struct AssembledSystem {
  Family trial = Family::a;
  SpMat F_hat, F_check;
  Vec G, H;
};

AssembledSystem assemble(const Problem& p, const Splitting& s, const Qoi& q,
                         const MultiMesh& mesh, Scheme scheme);

// one "row col value" triplet per line, row-major order, %.17g
void write_triplets(const SpMat& A, std::ostream& os);

}  // namespace wrgoal
