#include "estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wrgoal {

namespace {
const double kGaussX[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double kGaussW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
}  // namespace

double poisson_upper_tail(double x, int K) {
  if (x <= 0.0) return 0.0;
  double term = std::exp(-x + K * std::log(x) - std::lgamma(K + 1.0));
  double s = term;
  int k = K;
  while (term > 1e-20 * std::max(s, 1e-300) && k < K + 10000) {
    ++k;
    term *= x / k;
    s += term;
  }
  return std::min(1.0, s);
}

double splitting_bound(double L1, double L2, double sup_e0, int K, const Qoi& q, double t0) {
  if (L1 >= 0.0) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto& term : q.terms)
    s += term.weight.norm() * poisson_upper_tail(-L1 * (term.tau - t0), K);
  return std::pow(L2 / (-L1), K) * sup_e0 * s;
}

DualWeight::DualWeight(const std::vector<double>& grid, Family family, const double* z,
                       const std::map<int, double>& jumps)
    : t_(grid), fam_(family) {
  const int n = static_cast<int>(t_.size()) - 1;
  z_.assign(z, z + n + 1);
  jump_.assign(n + 1, 0.0);
  for (const auto& [q, v] : jumps)
    if (q >= 0 && q <= n) jump_[q] = v;
  degenerate_ = (n + 1) < 3;
  if (fam_ != Family::a) {
    patch_.push_back(0);
    for (int q = 1; q < n; ++q)
      if (jump_[q] != 0.0) patch_.push_back(q);
    patch_.push_back(n);
  }
}

double DualWeight::value(double t, int cell) const {
  if (degenerate_) return 0.0;
  const int n = static_cast<int>(t_.size()) - 1;
  const int j = std::clamp(cell, 1, n);
  if (fam_ == Family::a) {
    const double v0 = z_[j - 1] - jump_[j - 1];
    const double s = (t - t_[j - 1]) / (t_[j] - t_[j - 1]);
    return v0 + (z_[j] - v0) * s;
  }
  // locate the patch [patch_[p], patch_[p+1]] holding cell j
  size_t p = 0;
  for (size_t q = 0; q + 1 < patch_.size(); ++q)
    if (patch_[q] < j && j <= patch_[q + 1]) {
      p = q;
      break;
    }
  const int qlo = patch_[p], qhi = patch_[p + 1];
  auto node_value = [&](int q) {
    return (q == qlo && qlo > 0) ? z_[q] - jump_[q] : z_[q];
  };
  if (qhi - qlo < 2) {
    const double v0 = node_value(qlo), v1 = node_value(qhi);
    if (qhi == qlo) return v0;
    const double s = (t - t_[qlo]) / (t_[qhi] - t_[qlo]);
    return v0 + (v1 - v0) * s;
  }
  const int lo = std::min(std::max(j - 1, qlo), qhi - 2);
  const double x0 = t_[lo], x1 = t_[lo + 1], x2 = t_[lo + 2];
  const double y0 = node_value(lo), y1 = node_value(lo + 1), y2 = node_value(lo + 2);
  return y0 * (t - x1) * (t - x2) / ((x0 - x1) * (x0 - x2)) +
         y1 * (t - x0) * (t - x2) / ((x1 - x0) * (x1 - x2)) +
         y2 * (t - x0) * (t - x1) / ((x2 - x0) * (x2 - x1));
}

double DualWeight::left_limit(int j) const {
  if (degenerate_) return 0.0;
  return z_[std::clamp(j, 0, static_cast<int>(z_.size()) - 1)];
}

double DualWeight::proxy_value(double t, int cell) const {
  if (degenerate_) return 0.0;
  return value(t, cell) - eval_family(fam_, t_, z_.data(), t);
}

EstimatorReport local_dwr_estimates(const Splitting& s, const Signal& Y,
                                    const MultiMesh& mesh, Family fam,
                                    const std::vector<Vec>& iterates,
                                    const std::vector<Vec>& duals,
                                    const EstimateOptions& opt) {
  const int m = mesh.m();
  const auto off = mesh.offsets();
  const int K = static_cast<int>(iterates.size()) - 1;
  if (K < 1 || static_cast<int>(duals.size()) != K)
    throw Error(Error::invalid_argument, "need K iterates beyond the seed and K duals");

  EstimatorReport rep;
  rep.K = K;
  rep.mu_local.resize(m);
  for (int i = 0; i < m; ++i) rep.mu_local[i] = Vec::Zero(mesh.n(i));
  rep.mu_k.assign(K, rep.mu_local);

  // interior QoI event nodes per component: the terminal dual jumps there
  std::vector<std::map<int, double>> evmap(m);
  for (const auto& term : opt.events) {
    for (int i = 0; i < m; ++i) {
      if (term.weight[i] == 0.0) continue;
      const auto& ti = mesh.grid(i);
      if (term.tau >= ti.back() - 1e-12) continue;
      auto it = std::lower_bound(ti.begin(), ti.end(), term.tau);
      int q = static_cast<int>(it - ti.begin());
      if (q > 0 && (q == static_cast<int>(ti.size()) ||
                    std::abs(ti[q - 1] - term.tau) < std::abs(ti[q] - term.tau)))
        --q;
      if (std::abs(ti[q] - term.tau) < 1e-9 && q > 0 && q < static_cast<int>(ti.size()) - 1)
        evmap[i][q] = term.weight[i];
    }
  }

  const int nsub = std::max(1, opt.subdivisions);
  for (int k = 1; k <= K; ++k) {
    const Vec& uk = iterates[k];
    const Vec& um = iterates[k - 1];
    const Vec& zk = duals[k - 1];
    std::vector<DualWeight> w;
    if (!opt.oracle) {
      w.reserve(m);
      for (int i = 0; i < m; ++i)
        w.emplace_back(mesh.grid(i), fam, zk.data() + off[i],
                       k == K ? evmap[i] : std::map<int, double>{});
    }
    for (int i = 0; i < m; ++i) {
      const auto& ti = mesh.grid(i);
      for (int jh = 1; jh <= mesh.n(i); ++jh) {
        const double T0 = ti[jh - 1], T1 = ti[jh];
        std::vector<double> cuts{T0};
        for (int ii = 0; ii < m; ++ii) {
          const auto& tj = mesh.grid(ii);
          auto first = std::upper_bound(tj.begin(), tj.end(), T0);
          for (auto it = first; it != tj.end() && *it < T1; ++it) cuts.push_back(*it);
        }
        cuts.push_back(T1);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        double Q = 0.0;
        for (size_t c = 0; c + 1 < cuts.size(); ++c) {
          for (int sb = 0; sb < nsub; ++sb) {
            const double a0 = cuts[c] + (cuts[c + 1] - cuts[c]) * sb / nsub;
            const double a1 = cuts[c] + (cuts[c + 1] - cuts[c]) * (sb + 1) / nsub;
            const double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
            for (int g = 0; g < 3; ++g) {
              const double x = mid + half * kGaussX[g];
              const double qw = half * kGaussW[g];
              double rho = Y.eval(i, x) - deriv_in_cell(fam, ti, uk.data() + off[i], jh);
              for (int ii = 0; ii < m; ++ii) {
                const double bh = s.B_hat(i, ii), bc = s.B_check(i, ii);
                if (bh != 0.0)
                  rho -= bh * eval_family(fam, mesh.grid(ii), uk.data() + off[ii], x);
                if (bc != 0.0)
                  rho -= bc * eval_family(fam, mesh.grid(ii), um.data() + off[ii], x);
              }
              const double wgt = opt.oracle ? opt.oracle(k, i, x, 0) : w[i].value(x, jh);
              Q += qw * rho * wgt;
            }
          }
        }
        if (fam == Family::a) {
          const double jump = uk[off[i] + jh] - uk[off[i] + jh - 1];
          const double wl = opt.oracle ? opt.oracle(k, i, T1, -1) : w[i].left_limit(jh);
          Q -= jump * wl;
        }
        if (opt.oracle && opt.residual_rows)
          Q -= zk[off[i] + jh] * (*opt.residual_rows)[k - 1][off[i] + jh];
        rep.mu_k[k - 1][i][jh - 1] = std::abs(Q);
        rep.mu_local[i][jh - 1] += std::abs(Q);
        rep.signed_total += Q;
      }
    }
  }
  for (int i = 0; i < m; ++i) rep.mu_total += rep.mu_local[i].sum();
  return rep;
}

}  // namespace wrgoal
