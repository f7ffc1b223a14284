#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace testutil {

inline wrgoal::SignalTerm sig_const(double c) {
  return {wrgoal::SignalTerm::constant, c, 0.0};
}

inline wrgoal::SignalTerm sig_sine(double a, double w) {
  return {wrgoal::SignalTerm::sine, a, w};
}

inline wrgoal::Problem make_problem(const wrgoal::Mat& B, const wrgoal::Vec& u0, double t0,
                                    double tn,
                                    std::vector<std::vector<wrgoal::SignalTerm>> comps) {
  wrgoal::Problem p;
  p.m = static_cast<int>(B.rows());
  p.t0 = t0;
  p.tn = tn;
  p.B = B;
  p.Y.comps = std::move(comps);
  p.u0 = u0;
  return p;
}

inline wrgoal::Problem scalar_problem(double b, double y_const, double u0, double t0, double tn) {
  wrgoal::Mat B(1, 1);
  B(0, 0) = b;
  wrgoal::Vec v(1);
  v[0] = u0;
  std::vector<std::vector<wrgoal::SignalTerm>> comps(1);
  if (y_const != 0.0) comps[0].push_back(sig_const(y_const));
  return make_problem(B, v, t0, tn, std::move(comps));
}

// Classical one-step values at the grid points; oracles for the one-shot
// solve under the decoupled (B_check = 0) splitting.
inline std::vector<wrgoal::Vec> forward_euler_steps(const wrgoal::Problem& p,
                                                    const std::vector<double>& t) {
  std::vector<wrgoal::Vec> u{p.u0};
  for (size_t s = 0; s + 1 < t.size(); ++s) {
    const double h = t[s + 1] - t[s];
    u.push_back(u.back() + h * (p.Y.eval(t[s]) - p.B * u.back()));
  }
  return u;
}

inline std::vector<wrgoal::Vec> trapezoid_steps(const wrgoal::Problem& p,
                                                const std::vector<double>& t) {
  const wrgoal::Mat I = wrgoal::Mat::Identity(p.m, p.m);
  std::vector<wrgoal::Vec> u{p.u0};
  for (size_t s = 0; s + 1 < t.size(); ++s) {
    const double h = t[s + 1] - t[s];
    const wrgoal::Vec rhs =
        u.back() + h * (0.5 * (p.Y.eval(t[s]) + p.Y.eval(t[s + 1])) - 0.5 * p.B * u.back());
    u.push_back((I + 0.5 * h * p.B).partialPivLu().solve(rhs));
  }
  return u;
}

// Runs f, expecting a wrgoal::Error of the given kind; returns its message,
// or a diagnostic string when nothing (or the wrong thing) was thrown.
template <typename F>
std::string error_message(F&& f, wrgoal::Error::Kind kind) {
  try {
    f();
  } catch (const wrgoal::Error& e) {
    if (e.kind == kind) return e.what();
    return std::string("[wrong kind] ") + e.what();
  } catch (const std::exception& e) {
    return std::string("[wrong type] ") + e.what();
  }
  return "[no error thrown]";
}

inline bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace testutil
