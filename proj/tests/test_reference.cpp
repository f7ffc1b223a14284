#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "helpers.hpp"
#include "reference.hpp"
#include "solver.hpp"

using namespace wrgoal;
using testutil::contains;
using testutil::error_message;
using testutil::fit_slope;
using testutil::make_problem;
using testutil::scalar_problem;
using testutil::sig_sine;

namespace {

Problem coupled2() {
  Mat B(2, 2);
  B << 10.0, -1.0, 1.0, 10.0;
  Vec u0(2);
  u0 << -0.1, 0.1;
  return make_problem(B, u0, 0.0, 3.0, {{sig_sine(10.0, 1.0)}, {sig_sine(1.0, 10.0)}});
}

Qoi coupled2_qoi(const Problem& p) {
  Vec w1(2), w2(2);
  w1 << 1.0, 0.0;
  w2 << 1.0, 2.0;
  return Qoi::make({{2.0, w1}, {3.0, w2}}, p);
}

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("zero coupling and forcing freeze the initial state") {
  Mat B = Mat::Zero(2, 2);
  Vec u0(2);
  u0 << 1.0, -2.0;
  const Problem p = make_problem(B, u0, 0.0, 1.0, {{}, {}});
  const ReferenceSolution sol(p, 32);
  for (double t : {0.0, 0.37, 0.5, 1.0}) CHECK((sol.eval(t) - u0).norm() <= 1e-14);
  const Qoi q = Qoi::make({{1.0, Vec::Ones(2)}}, p);
  CHECK(sol.qoi(q) == -1.0);
}

TEST_CASE("the gated reference resolves a scalar decay to ten digits") {
  const Problem p = scalar_problem(1.0, 0.0, 1.0, 0.0, 1.0);
  const Qoi q = Qoi::make({{1.0, Vec::Ones(1)}}, p);
  const GatedReference ref = reference_solve(p, q);
  CHECK(std::abs(ref.J - std::exp(-1.0)) < 1e-10);
  CHECK(ref.gate_delta < 1e-9);
  CHECK(ref.sol.steps() == (1 << 17));  // the finer of the two runs is kept
  CHECK(true_goal_error(ref, q, [&] {
          auto mesh = std::make_shared<const MultiMesh>(init_mesh(0.0, 1.0, 1, 3, {}));
          return constant_waveform(mesh, Family::a, p.u0);
        }()) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("step halving shows fourth-order decay") {
  const Problem p = coupled2();
  const ReferenceSolution truth(p, 1 << 15);
  std::vector<double> lh, le;
  for (int nsteps : {64, 128, 256, 512}) {
    const ReferenceSolution sol(p, nsteps);
    lh.push_back(std::log(3.0 / nsteps));
    le.push_back(std::log((sol.eval(3.0) - truth.eval(3.0)).norm()));
  }
  const double slope = fit_slope(lh, le);
  CHECK(slope > 3.7);
  CHECK(slope < 4.3);
}

TEST_CASE("evaluation between steps stays on the trajectory") {
  const Problem p = scalar_problem(1.0, 0.0, 1.0, 0.0, 1.0);
  const ReferenceSolution sol(p, 64);
  for (double t : {0.03141, 0.3141, 0.77, 0.999})
    CHECK(std::abs(sol.eval(0, t) - std::exp(-t)) < 1e-9);
}

TEST_CASE("the self-convergence gate rejects what it cannot resolve") {
  // stiffness far beyond the fixed step budget blows up the one-step method,
  // so the two resolutions cannot agree
  const Problem p = scalar_problem(1e12, 0.0, 1.0, 0.0, 1.0);
  const Qoi q = Qoi::make({{1.0, Vec::Ones(1)}}, p);
  CHECK(contains(error_message([&] { reference_solve(p, q); }, Error::runtime), "gate"));
}

TEST_CASE("one stacked sweep equals the sequential sweep") {
  const Problem p = coupled2();
  const Qoi q = coupled2_qoi(p);
  const Splitting s = build_splitting(p.B, SplitKind::jacobi);
  for (Scheme scheme : {Scheme::explicit_euler, Scheme::crank_nicolson}) {
    auto mesh = std::make_shared<const MultiMesh>(init_mesh(0.0, 3.0, 2, 16, {2.0, 3.0}));
    const AssembledSystem sys = assemble(p, s, q, *mesh, scheme);
    const LevelFactorization lu(sys.F_hat);
    const Vec u0w = constant_waveform(mesh, sys.trial, p.u0).coeffs;
    const Vec u1 = next_iterate(lu, sys, u0w);
    const auto blocks = stacked_solve(p, s, q, mesh, scheme, 1, u0w);
    REQUIRE(blocks.size() == 1);
    CHECK((blocks[0].coeffs - u1).norm() <= 1e-12 * (1.0 + u1.norm()));
  }
}

TEST_CASE("a decoupled stack repeats one block") {
  const Problem p = coupled2();
  const Qoi q = coupled2_qoi(p);
  const Splitting s = build_splitting(p.B, SplitKind::full);
  auto mesh = std::make_shared<const MultiMesh>(init_mesh(0.0, 3.0, 2, 16, {2.0, 3.0}));
  const Vec u0w = constant_waveform(mesh, Family::a, p.u0).coeffs;
  const auto blocks = stacked_solve(p, s, q, mesh, Scheme::explicit_euler, 3, u0w);
  REQUIRE(blocks.size() == 3);
  CHECK((blocks[1].coeffs - blocks[0].coeffs).norm() <= 1e-12);
  CHECK((blocks[2].coeffs - blocks[0].coeffs).norm() <= 1e-12);
}

TEST_CASE("three stacked sweeps match three sequential sweeps") {
  const Problem p = coupled2();
  const Qoi q = coupled2_qoi(p);
  const Splitting s = build_splitting(p.B, SplitKind::jacobi);
  auto mesh = std::make_shared<const MultiMesh>(init_mesh(0.0, 3.0, 2, 16, {2.0, 3.0}));
  const AssembledSystem sys = assemble(p, s, q, *mesh, Scheme::explicit_euler);
  const LevelFactorization lu(sys.F_hat);
  const Vec u0w = constant_waveform(mesh, sys.trial, p.u0).coeffs;
  std::vector<Vec> seq{u0w};
  for (int k = 0; k < 3; ++k) seq.push_back(next_iterate(lu, sys, seq.back()));
  const auto blocks = stacked_solve(p, s, q, mesh, Scheme::explicit_euler, 3, u0w);
  for (int k = 0; k < 3; ++k)
    CHECK((blocks[k].coeffs - seq[k + 1]).norm() <= 1e-10 * (1.0 + seq[k + 1].norm()));
}

TEST_CASE("the stacked adjoint solves the scalar closed form") {
  Mat B(1, 1);
  B << 2.0;
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  const Problem p = scalar_problem(2.0, 0.0, 1.0, 0.0, 1.0);
  Vec w(1);
  w << 3.0;
  const Qoi q = Qoi::make({{1.0, w}}, p);
  const StackedAdjoint adj(s, q, 1, 0.0, 1.0);
  for (double t : {0.0, 0.25, 0.6, 1.0})
    CHECK(adj.value(1, 0, t) == doctest::Approx(3.0 * std::exp(-2.0 * (1.0 - t))).epsilon(1e-9));
}

TEST_CASE("interior qoi events jump the terminal adjoint") {
  Mat B(1, 1);
  B << 2.0;
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  const Problem p = scalar_problem(2.0, 0.0, 1.0, 0.0, 1.0);
  Vec wi(1), wt(1);
  wi << 1.5;
  wt << 3.0;
  const Qoi q = Qoi::make({{0.5, wi}, {1.0, wt}}, p);
  const StackedAdjoint adj(s, q, 1, 0.0, 1.0);

  const double right = 3.0 * std::exp(-2.0 * 0.5);
  CHECK(adj.value(1, 0, 0.5) == doctest::Approx(right).epsilon(1e-9));
  CHECK(adj.value(1, 0, 0.5, -1) == doctest::Approx(right + 1.5).epsilon(1e-9));
  CHECK(adj.value(1, 0, 0.25) ==
        doctest::Approx((right + 1.5) * std::exp(-2.0 * 0.25)).epsilon(1e-9));
}

TEST_CASE("deeper blocks end at zero and vanish when decoupled") {
  const Problem p = coupled2();
  const Qoi q = coupled2_qoi(p);
  const Splitting jac = build_splitting(p.B, SplitKind::jacobi);
  const StackedAdjoint adj(jac, q, 2, 0.0, 3.0);
  for (int i = 0; i < 2; ++i) CHECK(adj.value(1, i, 3.0) == 0.0);
  CHECK(adj.value(1, 3.0).norm() == 0.0);
  CHECK(adj.value(2, 0, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(adj.value(2, 1, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
  // coupling feeds the deeper block away from the end
  CHECK(std::abs(adj.value(1, 0, 1.0)) + std::abs(adj.value(1, 1, 1.0)) > 0.0);

  const Splitting full = build_splitting(p.B, SplitKind::full);
  const StackedAdjoint adj_full(full, q, 2, 0.0, 3.0);
  for (double t : {0.0, 0.7, 2.0, 3.0}) {
    CHECK(adj_full.value(1, 0, t) == 0.0);
    CHECK(adj_full.value(1, 1, t) == 0.0);
  }
}

}  // TEST_SUITE
