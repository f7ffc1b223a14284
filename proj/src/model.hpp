#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wrgoal {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
  enum Kind { invalid_argument, parse, runtime, io };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Forcing signals are finite term lists (constant, a*sin(wt), a*cos(wt), a*t^q)
// so per-cell forcing integrals behave under fixed low-order quadrature.
struct SignalTerm {
  enum Kind { constant, sine, cosine, power };
  Kind kind = constant;
  double a = 0.0;  // amplitude, or the constant itself
  double b = 0.0;  // omega for sine/cosine, exponent q for power
  double eval(double t) const;
};

struct Signal {
  std::vector<std::vector<SignalTerm>> comps;
  int dim() const { return static_cast<int>(comps.size()); }
  double eval(int i, double t) const;
  Vec eval(double t) const;
};

struct Problem {
  int m = 0;
  double t0 = 0.0, tn = 1.0;
  Mat B;
  Signal Y;
  Vec u0;
  void validate() const;  // throws Error::invalid_argument
};

struct QoiTerm {
  double tau = 0.0;
  Vec weight;
};

// Terms strictly increasing in tau, all inside [t0, tn]; the last term always
// sits at tn (zero weight appended if the caller did not place one there).
struct Qoi {
  std::vector<QoiTerm> terms;
  static Qoi make(std::vector<QoiTerm> terms, const Problem& p);
};

enum class SplitKind { jacobi, gauss_seidel, full };

struct Splitting {
  Mat B_hat, B_check;
  double L1 = 0.0;  // log norm of the rhs Jacobian -B_hat; < 0 means dissipative
  double L2 = 0.0;  // spectral norm of B_check
};

Splitting build_splitting(const Mat& B, SplitKind kind);
Splitting build_splitting(const Mat& B, const Mat& mask);
std::pair<double, double> lipschitz_constants(const Mat& B_hat, const Mat& B_check);

// side: -1 left limit, 0 pointwise, +1 right limit; forwarded to the evaluator
// at interior taus (the terminal tau is always evaluated pointwise).
double evaluate_qoi(const Qoi& q, const std::function<Vec(double, int)>& U, int side = 0);

enum class Scheme { explicit_euler, crank_nicolson };

}  // namespace wrgoal
