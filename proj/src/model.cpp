#include "model.hpp"

#include <cmath>

namespace wrgoal {

double SignalTerm::eval(double t) const {
  switch (kind) {
    case constant: return a;
    case sine: return a * std::sin(b * t);
    case cosine: return a * std::cos(b * t);
    case power: return a * std::pow(t, b);
  }
  return 0.0;
}

double Signal::eval(int i, double t) const {
  double s = 0.0;
  for (const auto& term : comps[i]) s += term.eval(t);
  return s;
}

Vec Signal::eval(double t) const {
  Vec v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = eval(i, t);
  return v;
}

void Problem::validate() const {
  if (m <= 0) throw Error(Error::invalid_argument, "problem dimension must be positive");
  if (!(tn > t0)) throw Error(Error::invalid_argument, "interval must satisfy t0 < tn");
  if (B.rows() != m || B.cols() != m)
    throw Error(Error::invalid_argument, "coupling matrix must be m x m");
  if (!B.allFinite()) throw Error(Error::invalid_argument, "coupling matrix has non-finite entries");
  if (u0.size() != m) throw Error(Error::invalid_argument, "initial vector must have length m");
  if (Y.dim() != m) throw Error(Error::invalid_argument, "signal must have m components");
  for (const auto& comp : Y.comps)
    for (const auto& term : comp) {
      if (!std::isfinite(term.a) || !std::isfinite(term.b))
        throw Error(Error::invalid_argument, "signal term has non-finite parameters");
      if (term.kind == SignalTerm::power) {
        if (term.b < 0.0)
          throw Error(Error::invalid_argument, "power term exponent must be nonnegative");
        if (t0 < 0.0 && term.b != std::floor(term.b))
          throw Error(Error::invalid_argument,
                      "non-integer power exponent needs a nonnegative time interval");
      }
    }
}

Qoi Qoi::make(std::vector<QoiTerm> terms, const Problem& p) {
  for (const auto& term : terms) {
    if (term.tau < p.t0 || term.tau > p.tn)
      throw Error(Error::invalid_argument, "qoi time outside the problem interval");
    if (term.weight.size() != p.m)
      throw Error(Error::invalid_argument, "qoi weight must have length m");
    if (!term.weight.allFinite())
      throw Error(Error::invalid_argument, "qoi weight has non-finite entries");
  }
  for (size_t r = 1; r < terms.size(); ++r)
    if (!(terms[r].tau > terms[r - 1].tau))
      throw Error(Error::invalid_argument, "qoi times must be strictly increasing");
  if (terms.empty() || terms.back().tau != p.tn)
    terms.push_back({p.tn, Vec::Zero(p.m)});
  Qoi q;
  q.terms = std::move(terms);
  return q;
}

Splitting build_splitting(const Mat& B, SplitKind kind) {
  const auto m = B.rows();
  Mat S(m, m);
  switch (kind) {
    case SplitKind::jacobi: S = Mat::Identity(m, m); break;
    case SplitKind::gauss_seidel:
      S = Mat::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) S(i, j) = 1.0;
      break;
    case SplitKind::full: S = Mat::Ones(m, m); break;
  }
  return build_splitting(B, S);
}

Splitting build_splitting(const Mat& B, const Mat& mask) {
  if (B.rows() != B.cols()) throw Error(Error::invalid_argument, "B must be square");
  if (mask.rows() != B.rows() || mask.cols() != B.cols())
    throw Error(Error::invalid_argument, "splitting mask shape mismatch");
  for (Eigen::Index i = 0; i < mask.rows(); ++i)
    for (Eigen::Index j = 0; j < mask.cols(); ++j)
      if (mask(i, j) != 0.0 && mask(i, j) != 1.0)
        throw Error(Error::invalid_argument, "splitting mask entries must be 0 or 1");
  Splitting s;
  s.B_hat = mask.cwiseProduct(B);
  s.B_check = B - s.B_hat;  // exact: masked entries cancel bitwise
  auto [l1, l2] = lipschitz_constants(s.B_hat, s.B_check);
  s.L1 = l1;
  s.L2 = l2;
  return s;
}

std::pair<double, double> lipschitz_constants(const Mat& B_hat, const Mat& B_check) {
  if (!B_hat.allFinite() || !B_check.allFinite())
    throw Error(Error::invalid_argument, "non-finite matrix entries");
  Mat sym = -0.5 * (B_hat + B_hat.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  double L1 = es.eigenvalues().maxCoeff();
  double L2 = 0.0;
  if (B_check.size() > 0 && B_check.cwiseAbs().maxCoeff() > 0.0) {
    Eigen::JacobiSVD<Mat> svd(B_check);
    L2 = svd.singularValues()(0);
  }
  return {L1, L2};
}

double evaluate_qoi(const Qoi& q, const std::function<Vec(double, int)>& U, int side) {
  double s = 0.0;
  for (size_t r = 0; r < q.terms.size(); ++r) {
    const bool terminal = (r + 1 == q.terms.size());
    s += q.terms[r].weight.dot(U(q.terms[r].tau, terminal ? 0 : side));
  }
  return s;
}

}  // namespace wrgoal
