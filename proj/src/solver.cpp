#include "solver.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <vector>

namespace wrgoal {

struct LevelFactorization::Impl {
  Eigen::SparseLU<SpMat> lu;
};

LevelFactorization::LevelFactorization(const SpMat& F_hat) {
  auto impl = std::make_shared<Impl>();
  impl->lu.compute(F_hat);
  if (impl->lu.info() != Eigen::Success)
    throw Error(Error::runtime, "system matrix factorization failed (singular?)");
  impl_ = std::move(impl);
}

Vec LevelFactorization::solve(const Vec& rhs) const {
  Vec x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success || !x.allFinite())
    throw Error(Error::runtime, "forward solve failed");
  return x;
}

Vec LevelFactorization::solve_transposed(const Vec& rhs) const {
  Vec x = impl_->lu.transpose().solve(rhs);
  if (impl_->lu.info() != Eigen::Success || !x.allFinite())
    throw Error(Error::runtime, "transposed solve failed");
  return x;
}

Vec next_iterate(const LevelFactorization& lu, const AssembledSystem& sys, const Vec& prev) {
  return lu.solve(sys.G - sys.F_check * prev);
}

Vec dual_terminal(const LevelFactorization& lu, const AssembledSystem& sys) {
  return lu.solve_transposed(sys.H);
}

Vec dual_shift(const LevelFactorization& lu, const AssembledSystem& sys, const Vec& next) {
  return lu.solve_transposed(Vec(-(sys.F_check.transpose() * next)));
}

double sup_distance(const DiscreteFunction& a, const DiscreteFunction& b) {
  const MultiMesh& mesh = *a.mesh;
  if (b.mesh.get() != a.mesh.get() || a.family != b.family)
    throw Error(Error::invalid_argument, "sup_distance needs waveforms on one mesh");
  std::vector<double> pts;
  for (int i = 0; i < mesh.m(); ++i)
    pts.insert(pts.end(), mesh.grid(i).begin(), mesh.grid(i).end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (a.family == Family::c) {
    const size_t nn = pts.size();
    for (size_t k = 0; k + 1 < nn; ++k) pts.push_back(0.5 * (pts[k] + pts[k + 1]));
  }
  double sup = 0.0;
  for (double t : pts) {
    double s2 = 0.0;
    for (int i = 0; i < mesh.m(); ++i) {
      const double d = a.eval(i, t) - b.eval(i, t);
      s2 += d * d;
    }
    sup = std::max(sup, std::sqrt(s2));
  }
  return sup;
}

}  // namespace wrgoal
