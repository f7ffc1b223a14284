#pragma once

#include <vector>

#include "model.hpp"

namespace wrgoal {

// Cell j of component i spans (t_{i,j-1}, t_{i,j}]; j runs 1..n_i.
// Components are 0-based internally; file outputs use 1-based indices.
struct CellId {
  int i = 0;
  int j = 1;
  friend bool operator==(const CellId&, const CellId&) = default;
};

class MultiMesh {
 public:
  MultiMesh() = default;
  MultiMesh(std::vector<std::vector<double>> grids, int level);

  int m() const { return static_cast<int>(t_.size()); }
  int n(int i) const { return static_cast<int>(t_[i].size()) - 1; }
  long N() const;
  int level() const { return level_; }
  const std::vector<double>& grid(int i) const { return t_[i]; }

  // Flat dof layout: component-major, n_i + 1 coefficients per component.
  std::vector<int> offsets() const;
  int dofs() const;

 private:
  std::vector<std::vector<double>> t_;
  int level_ = 0;
};

// n_init equidistant points per component, then each tau inserted; a tau within
// 1e-12*(tn-t0) of an existing point snaps that point onto tau exactly, so qoi
// times are always exact breakpoints.
MultiMesh init_mesh(double t0, double tn, int m, int n_init, const std::vector<double>& taus);

// The ceil(p*N) cells with the largest values; ties broken by (i, j) ascending.
// local[i] holds the n_i cell values of component i.
std::vector<CellId> select_cells(const MultiMesh& mesh,
                                 const std::vector<std::vector<double>>& local, double p);

MultiMesh bisect_cells(const MultiMesh& mesh, const std::vector<CellId>& cells);

}  // namespace wrgoal
