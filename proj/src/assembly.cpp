#include "assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace wrgoal {

namespace {

double forcing_integral(const Signal& Y, int i, double T0, double T1, Family trial) {
  // left rectangle for family a, trapezoid for family c: the quadrature that
  // collapses the scheme onto classical explicit Euler / Crank-Nicolson
  const double dt = T1 - T0;
  const double v = trial == Family::a ? Y.eval(i, T0) * dt
                                      : 0.5 * dt * (Y.eval(i, T0) + Y.eval(i, T1));
  if (!std::isfinite(v)) throw Error(Error::runtime, "non-finite forcing value");
  return v;
}

}  // namespace

AssembledSystem assemble(const Problem& p, const Splitting& s, const Qoi& q,
                         const MultiMesh& mesh, Scheme scheme) {
  const Family fam = trial_family(scheme);
  const int m = mesh.m();
  const auto off = mesh.offsets();
  const int nd = mesh.dofs();

  std::vector<Eigen::Triplet<double>> th, tc;
  AssembledSystem out;
  out.trial = fam;
  out.G = Vec::Zero(nd);
  out.H = Vec::Zero(nd);

  for (int i = 0; i < m; ++i) {
    const auto& ti = mesh.grid(i);
    th.emplace_back(off[i], off[i], 1.0);  // initial-condition row
    out.G[off[i]] = p.u0[i];

    for (int jh = 1; jh <= mesh.n(i); ++jh) {
      const int r = off[i] + jh;
      const double T0 = ti[jh - 1], T1 = ti[jh];
      // derivative atom of the trial jump at T1 tested right-closed, plus the
      // nodal difference for the hat family; both reduce to the same pair
      th.emplace_back(r, off[i] + jh, 1.0);
      th.emplace_back(r, off[i] + jh - 1, -1.0);
      out.G[r] = forcing_integral(p.Y, i, T0, T1, fam);

      for (int ii = 0; ii < m; ++ii) {
        const double bh = s.B_hat(i, ii), bc = s.B_check(i, ii);
        if (bh == 0.0 && bc == 0.0) continue;
        const auto& tj = mesh.grid(ii);
        const int nj = mesh.n(ii);
        if (fam == Family::a) {
          // trial coefficient jj is constant on [tj[jj], tj[jj+1]); exact overlap
          int lo = static_cast<int>(std::upper_bound(tj.begin(), tj.end(), T0) - tj.begin()) - 1;
          lo = std::max(lo, 0);
          for (int jj = lo; jj < nj && tj[jj] < T1; ++jj) {
            const double ov = std::min(T1, tj[jj + 1]) - std::max(T0, tj[jj]);
            if (ov <= 0.0) continue;
            if (bh != 0.0) th.emplace_back(r, off[ii] + jj, bh * ov);
            if (bc != 0.0) tc.emplace_back(r, off[ii] + jj, bc * ov);
          }
        } else {
          // hats are linear on merged subcells; trapezoid is exact there
          std::vector<double> cuts{T0};
          auto first = std::upper_bound(tj.begin(), tj.end(), T0);
          for (auto it = first; it != tj.end() && *it < T1; ++it) cuts.push_back(*it);
          cuts.push_back(T1);
          for (size_t sc = 0; sc + 1 < cuts.size(); ++sc) {
            const double a0 = cuts[sc], a1 = cuts[sc + 1];
            const double mid = 0.5 * (a0 + a1);
            int qc = static_cast<int>(std::upper_bound(tj.begin(), tj.end(), mid) - tj.begin()) - 1;
            qc = std::max(0, std::min(qc, nj - 1));
            for (int jj = qc; jj <= qc + 1; ++jj) {
              const double v = 0.5 * (a1 - a0) * (hat_value(tj, jj, a0) + hat_value(tj, jj, a1));
              if (v == 0.0) continue;
              if (bh != 0.0) th.emplace_back(r, off[ii] + jj, bh * v);
              if (bc != 0.0) tc.emplace_back(r, off[ii] + jj, bc * v);
            }
          }
        }
      }
    }

    for (const auto& term : q.terms) {
      if (term.weight[i] == 0.0) continue;
      auto it = std::lower_bound(ti.begin(), ti.end(), term.tau);
      int qn = static_cast<int>(it - ti.begin());
      if (qn > 0 && (qn == static_cast<int>(ti.size()) ||
                     std::abs(ti[qn - 1] - term.tau) < std::abs(ti[qn] - term.tau)))
        --qn;
      if (std::abs(ti[qn] - term.tau) > 1e-9)
        throw Error(Error::runtime, "qoi time is not a mesh breakpoint");
      out.H[off[i] + qn] += term.weight[i];
    }
  }

  out.F_hat = SpMat(nd, nd);
  out.F_check = SpMat(nd, nd);
  out.F_hat.setFromTriplets(th.begin(), th.end());
  out.F_check.setFromTriplets(tc.begin(), tc.end());
  out.F_hat.makeCompressed();
  out.F_check.makeCompressed();
  return out;
}

void write_triplets(const SpMat& A, std::ostream& os) {
  struct T {
    int r, c;
    double v;
  };
  std::vector<T> all;
  all.reserve(A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      all.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
  std::sort(all.begin(), all.end(), [](const T& a, const T& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  char buf[64];
  for (const auto& t : all) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", t.r, t.c, t.v);
    os << buf;
  }
}

}  // namespace wrgoal
