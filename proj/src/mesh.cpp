#include "mesh.hpp"

#include <algorithm>
#include <cmath>

namespace wrgoal {

MultiMesh::MultiMesh(std::vector<std::vector<double>> grids, int level)
    : t_(std::move(grids)), level_(level) {
  for (const auto& g : t_) {
    if (g.size() < 2) throw Error(Error::invalid_argument, "component grid needs >= 2 points");
    for (size_t j = 1; j < g.size(); ++j)
      if (!(g[j] > g[j - 1]))
        throw Error(Error::invalid_argument, "component breakpoints must increase strictly");
  }
  for (const auto& g : t_)
    if (g.front() != t_[0].front() || g.back() != t_[0].back())
      throw Error(Error::invalid_argument, "components must share the global endpoints");
}

long MultiMesh::N() const {
  long s = 0;
  for (int i = 0; i < m(); ++i) s += n(i);
  return s;
}

std::vector<int> MultiMesh::offsets() const {
  std::vector<int> off(m() + 1, 0);
  for (int i = 0; i < m(); ++i) off[i + 1] = off[i] + n(i) + 1;
  return off;
}

int MultiMesh::dofs() const { return offsets().back(); }

MultiMesh init_mesh(double t0, double tn, int m, int n_init, const std::vector<double>& taus) {
  if (n_init < 2) throw Error(Error::invalid_argument, "n_init must be at least 2");
  if (!(tn > t0)) throw Error(Error::invalid_argument, "interval must satisfy t0 < tn");
  const double tol = 1e-12 * (tn - t0);
  std::vector<double> pts(n_init);
  for (int k = 0; k < n_init; ++k)
    pts[k] = t0 + (tn - t0) * static_cast<double>(k) / (n_init - 1);
  pts.front() = t0;
  pts.back() = tn;
  std::vector<std::vector<double>> grids;
  grids.reserve(m);
  for (int i = 0; i < m; ++i) {
    std::vector<double> g = pts;
    for (double tau : taus) {
      auto nearest = std::min_element(g.begin(), g.end(), [tau](double a, double b) {
        return std::abs(a - tau) < std::abs(b - tau);
      });
      if (std::abs(*nearest - tau) <= tol)
        *nearest = tau;
      else
        g.push_back(tau);
    }
    std::sort(g.begin(), g.end());
    grids.push_back(std::move(g));
  }
  return MultiMesh(std::move(grids), 0);
}

std::vector<CellId> select_cells(const MultiMesh& mesh,
                                 const std::vector<std::vector<double>>& local, double p) {
  if (!(p > 0.0) || p > 1.0) throw Error(Error::invalid_argument, "fraction must lie in (0, 1]");
  if (static_cast<int>(local.size()) != mesh.m())
    throw Error(Error::invalid_argument, "estimator map does not match the mesh");
  struct Entry {
    double v;
    int i, j;
  };
  std::vector<Entry> flat;
  flat.reserve(mesh.N());
  for (int i = 0; i < mesh.m(); ++i) {
    if (static_cast<int>(local[i].size()) != mesh.n(i))
      throw Error(Error::invalid_argument, "estimator map does not match the mesh");
    for (int j = 1; j <= mesh.n(i); ++j) flat.push_back({local[i][j - 1], i, j});
  }
  if (flat.empty()) throw Error(Error::invalid_argument, "estimator map is empty");
  const auto want = static_cast<size_t>(std::ceil(p * static_cast<double>(mesh.N())));
  std::stable_sort(flat.begin(), flat.end(), [](const Entry& a, const Entry& b) {
    if (a.v != b.v) return a.v > b.v;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<CellId> out;
  out.reserve(want);
  for (size_t k = 0; k < want && k < flat.size(); ++k) out.push_back({flat[k].i, flat[k].j});
  return out;
}

MultiMesh bisect_cells(const MultiMesh& mesh, const std::vector<CellId>& cells) {
  std::vector<std::vector<double>> grids;
  grids.reserve(mesh.m());
  for (int i = 0; i < mesh.m(); ++i) grids.push_back(mesh.grid(i));
  for (const auto& c : cells) {
    if (c.i < 0 || c.i >= mesh.m() || c.j < 1 || c.j > mesh.n(c.i))
      throw Error(Error::invalid_argument, "cell id outside the mesh");
    const auto& g = mesh.grid(c.i);
    grids[c.i].push_back(0.5 * (g[c.j - 1] + g[c.j]));
  }
  for (auto& g : grids) std::sort(g.begin(), g.end());
  return MultiMesh(std::move(grids), mesh.level() + 1);
}

}  // namespace wrgoal
