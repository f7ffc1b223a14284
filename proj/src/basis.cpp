#include "basis.hpp"

#include <algorithm>
#include <cmath>

namespace wrgoal {

Family trial_family(Scheme s) {
  return s == Scheme::explicit_euler ? Family::a : Family::c;
}

namespace {

// index of the last breakpoint <= x (right-closed at nodes)
int cell_right(const std::vector<double>& t, double x) {
  auto it = std::upper_bound(t.begin(), t.end(), x);
  return static_cast<int>(it - t.begin()) - 1;
}

// index of the last breakpoint < x (left limit at nodes)
int cell_left(const std::vector<double>& t, double x) {
  auto it = std::lower_bound(t.begin(), t.end(), x);
  return static_cast<int>(it - t.begin()) - 1;
}

int clampi(int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); }

}  // namespace

double eval_family(Family f, const std::vector<double>& t, const double* c, double x, int side) {
  const int n = static_cast<int>(t.size()) - 1;
  switch (f) {
    case Family::a: {
      int j = side < 0 ? cell_left(t, x) : cell_right(t, x);
      return c[clampi(j, 0, n)];
    }
    case Family::b: {
      // coefficient j covers (t_{j-1}, t_j]
      int j = side > 0 ? cell_right(t, x) + 1 : cell_left(t, x) + 1;
      return c[clampi(j, 0, n)];
    }
    case Family::c: {
      if (x <= t.front()) return c[0];
      if (x >= t.back()) return c[n];
      int j = clampi(cell_left(t, x) + 1, 1, n);
      const double s = (x - t[j - 1]) / (t[j] - t[j - 1]);
      return c[j - 1] + (c[j] - c[j - 1]) * s;
    }
  }
  return 0.0;
}

double hat_value(const std::vector<double>& t, int j, double x) {
  const int n = static_cast<int>(t.size()) - 1;
  if (j > 0 && t[j - 1] <= x && x <= t[j]) {
    const double d = t[j] - t[j - 1];
    return d > 0 ? (x - t[j - 1]) / d : 0.0;
  }
  if (j < n && t[j] <= x && x <= t[j + 1]) {
    const double d = t[j + 1] - t[j];
    return d > 0 ? (t[j + 1] - x) / d : 0.0;
  }
  return 0.0;
}

double deriv_in_cell(Family f, const std::vector<double>& t, const double* c, int j) {
  if (f != Family::c) return 0.0;
  return (c[j] - c[j - 1]) / (t[j] - t[j - 1]);
}

double DiscreteFunction::eval(int i, double t, int side) const {
  const auto off = mesh->offsets();
  return eval_family(family, mesh->grid(i), coeffs.data() + off[i], t, side);
}

Vec DiscreteFunction::eval(double t, int side) const {
  Vec v(mesh->m());
  for (int i = 0; i < mesh->m(); ++i) v[i] = eval(i, t, side);
  return v;
}

DiscreteFunction constant_waveform(std::shared_ptr<const MultiMesh> mesh, Family fam,
                                   const Vec& value) {
  DiscreteFunction f;
  f.family = fam;
  f.coeffs = Vec(mesh->dofs());
  const auto off = mesh->offsets();
  for (int i = 0; i < mesh->m(); ++i)
    f.coeffs.segment(off[i], mesh->n(i) + 1).setConstant(value[i]);
  f.mesh = std::move(mesh);
  return f;
}

DiscreteFunction transfer_waveform(const DiscreteFunction& f,
                                   std::shared_ptr<const MultiMesh> fine) {
  const MultiMesh& coarse = *f.mesh;
  if (fine->m() != coarse.m())
    throw Error(Error::invalid_argument, "waveform transfer across different dimensions");
  for (int i = 0; i < coarse.m(); ++i) {
    const auto& cg = coarse.grid(i);
    const auto& fg = fine->grid(i);
    for (double x : cg)
      if (!std::binary_search(fg.begin(), fg.end(), x))
        throw Error(Error::invalid_argument, "waveform transfer target is not a refinement");
  }
  DiscreteFunction out;
  out.family = f.family;
  out.coeffs = Vec(fine->dofs());
  const auto off = fine->offsets();
  for (int i = 0; i < fine->m(); ++i) {
    const auto& fg = fine->grid(i);
    for (size_t j = 0; j < fg.size(); ++j)
      out.coeffs[off[i] + static_cast<int>(j)] = f.eval(i, fg[j]);
  }
  out.mesh = std::move(fine);
  return out;
}

double qoi_of_discrete(const DiscreteFunction& f, const Qoi& q) {
  double s = 0.0;
  for (const auto& term : q.terms)
    for (int i = 0; i < f.mesh->m(); ++i)
      if (term.weight[i] != 0.0) s += term.weight[i] * f.eval(i, term.tau);
  return s;
}

}  // namespace wrgoal
