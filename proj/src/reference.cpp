#include "reference.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace wrgoal {

namespace {

using OdeRhs = std::function<Vec(double, const Vec&)>;

void rk4(const OdeRhs& f, const Vec& y0, double t0, double tn, int nsteps,
         std::vector<double>& ts, std::vector<Vec>& ys) {
  ts.resize(nsteps + 1);
  ys.resize(nsteps + 1);
  const double h = (tn - t0) / nsteps;
  for (int s = 0; s <= nsteps; ++s) ts[s] = t0 + (tn - t0) * s / nsteps;
  ts[0] = t0;
  ts[nsteps] = tn;
  ys[0] = y0;
  for (int s = 0; s < nsteps; ++s) {
    const double t = ts[s];
    const Vec& y = ys[s];
    const Vec k1 = f(t, y);
    const Vec k2 = f(t + h / 2, y + (h / 2) * k1);
    const Vec k3 = f(t + h / 2, y + (h / 2) * k2);
    const Vec k4 = f(t + h, y + h * k3);
    ys[s + 1] = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
}

Vec hermite(const std::vector<double>& ts, const std::vector<Vec>& ys,
            const std::vector<Vec>& fs, double t) {
  int j = static_cast<int>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin()) - 1;
  j = std::clamp(j, 0, static_cast<int>(ts.size()) - 2);
  const double h = ts[j + 1] - ts[j];
  const double s = (t - ts[j]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * ys[j] + (h10 * h) * fs[j] + h01 * ys[j + 1] + (h11 * h) * fs[j + 1];
}

}  // namespace

ReferenceSolution::ReferenceSolution(const Problem& p, int nsteps) : nsteps_(nsteps) {
  p.validate();
  auto f = [&p](double t, const Vec& y) -> Vec { return p.Y.eval(t) - p.B * y; };
  rk4(f, p.u0, p.t0, p.tn, nsteps, ts_, ys_);
  fs_.resize(ts_.size());
  for (size_t s = 0; s < ts_.size(); ++s) fs_[s] = f(ts_[s], ys_[s]);
}

Vec ReferenceSolution::eval(double t) const { return hermite(ts_, ys_, fs_, t); }

double ReferenceSolution::qoi(const Qoi& q) const {
  return evaluate_qoi(q, [this](double t, int) { return eval(t); });
}

GatedReference reference_solve(const Problem& p, const Qoi& q) {
  ReferenceSolution coarse(p, 1 << 16);
  ReferenceSolution fine(p, 1 << 17);
  const double Jc = coarse.qoi(q), Jf = fine.qoi(q);
  const double delta = std::abs(Jc - Jf);
  if (!(delta < 1e-9))
    throw Error(Error::runtime, "reference self-convergence gate failed");
  return GatedReference{std::move(fine), Jf, delta};
}

double true_goal_error(const GatedReference& ref, const Qoi& q, const DiscreteFunction& u) {
  return std::abs(ref.J - qoi_of_discrete(u, q));
}

std::vector<DiscreteFunction> stacked_solve(const Problem& p, const Splitting& s, const Qoi& q,
                                            const std::shared_ptr<const MultiMesh>& mesh,
                                            Scheme scheme, int K, const Vec& u0_coeffs) {
  if (K < 1) throw Error(Error::invalid_argument, "stacked_solve needs K >= 1");
  const AssembledSystem sys = assemble(p, s, q, *mesh, scheme);
  const int nd = mesh->dofs();
  Mat A = Mat::Zero(K * nd, K * nd);
  Vec R(K * nd);
  const Mat Fh = Mat(sys.F_hat), Fc = Mat(sys.F_check);
  for (int k = 0; k < K; ++k) {
    A.block(k * nd, k * nd, nd, nd) = Fh;
    if (k > 0) A.block(k * nd, (k - 1) * nd, nd, nd) = Fc;
    R.segment(k * nd, nd) = sys.G;
  }
  R.head(nd) -= Fc * u0_coeffs;
  const Vec X = A.partialPivLu().solve(R);
  if (!X.allFinite()) throw Error(Error::runtime, "stacked system is singular");
  std::vector<DiscreteFunction> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k)
    out.push_back(DiscreteFunction{mesh, sys.trial, X.segment(k * nd, nd)});
  return out;
}

StackedAdjoint::StackedAdjoint(const Splitting& s, const Qoi& q, int K, double t0, double tn,
                               int nsteps) {
  const int m = static_cast<int>(s.B_hat.rows());
  const Mat BhT = s.B_hat.transpose();
  const Mat BcT = s.B_check.transpose();

  std::vector<double> events{t0, tn};
  for (const auto& term : q.terms)
    if (term.tau > t0 + 1e-12 && term.tau < tn - 1e-12) events.push_back(term.tau);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  // rhs(t, side): side < 0 requests the left limit at event times
  using Rhs = std::function<Vec(double, int)>;
  auto solve_block = [&](const Rhs& rhs, Vec z_end, bool jumps) {
    std::vector<Segment> segs;
    for (int e = static_cast<int>(events.size()) - 2; e >= 0; --e) {
      const double a = events[e], b = events[e + 1];
      const int nloc = std::max(8, static_cast<int>(nsteps * (b - a) / (tn - t0)));
      // -z' + Bhat^T z = rhs  =>  z' = Bhat^T z - rhs; integrate b -> a by
      // time reversal s = a + b - t
      auto f = [&](double t, const Vec& y) -> Vec {
        return BhT * y - rhs(t, std::abs(t - b) < 1e-14 ? -1 : 0);
      };
      std::vector<double> ss;
      std::vector<Vec> ws;
      rk4([&](double sv, const Vec& y) -> Vec { return -f(b + a - sv, y); }, z_end, a, b, nloc,
          ss, ws);
      Segment seg;
      const size_t np = ss.size();
      seg.ts.resize(np);
      seg.ys.resize(np);
      seg.fs.resize(np);
      for (size_t r = 0; r < np; ++r) {
        seg.ts[r] = (b + a) - ss[np - 1 - r];
        seg.ys[r] = ws[np - 1 - r];
        seg.fs[r] = f(seg.ts[r], seg.ys[r]);
      }
      z_end = seg.ys.front();
      if (jumps && std::abs(a - t0) > 1e-14)
        for (const auto& term : q.terms)
          if (std::abs(term.tau - a) < 1e-12) z_end += term.weight;
      segs.insert(segs.begin(), std::move(seg));
    }
    return segs;
  };

  blocks_.resize(K);
  Vec termK = Vec::Zero(m);
  for (const auto& term : q.terms)
    if (std::abs(term.tau - tn) < 1e-12) termK += term.weight;
  blocks_[K - 1] =
      solve_block([m](double, int) -> Vec { return Vec::Zero(m); }, termK, true);
  for (int k = K - 1; k >= 1; --k) {
    auto rhs = [this, &BcT, k](double t, int side) -> Vec {
      return -(BcT * value(k + 1, t, side));
    };
    blocks_[k - 1] = solve_block(rhs, Vec::Zero(m), false);
  }
}

Vec StackedAdjoint::value(int k, double t, int side) const {
  const auto& segs = blocks_.at(k - 1);
  for (const auto& seg : segs) {
    const double lo = seg.ts.front(), hi = seg.ts.back();
    if ((lo < t && t < hi) || (side >= 0 && std::abs(t - lo) < 1e-14) ||
        (side < 0 && std::abs(t - hi) < 1e-14))
      return hermite(seg.ts, seg.ys, seg.fs, t);
  }
  if (std::abs(t - segs.front().ts.front()) < 1e-14) return segs.front().ys.front();
  if (std::abs(t - segs.back().ts.back()) < 1e-14) return segs.back().ys.back();
  for (const auto& seg : segs)
    if (seg.ts.front() <= t && t <= seg.ts.back()) return hermite(seg.ts, seg.ys, seg.fs, t);
  throw Error(Error::invalid_argument, "adjoint evaluation outside the interval");
}

double StackedAdjoint::value(int k, int i, double t, int side) const {
  return value(k, t, side)[i];
}

}  // namespace wrgoal
