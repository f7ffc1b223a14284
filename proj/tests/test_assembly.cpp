#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "assembly.hpp"
#include "helpers.hpp"
#include "solver.hpp"

using namespace wrgoal;
using testutil::contains;
using testutil::error_message;
using testutil::make_problem;
using testutil::sig_const;
using testutil::sig_sine;

namespace {

Problem coupled3() {
  Mat B(3, 3);
  B << 1.8, -0.4, 0.3,
       0.2, 2.1, -0.5,
       -0.3, 0.6, 1.5;
  Vec u0(3);
  u0 << 1.0, -0.5, 0.25;
  return make_problem(B, u0, 0.0, 1.0,
                      {{sig_sine(2.0, 3.0)},
                       {sig_const(1.0), sig_sine(-1.0, 7.0)},
                       {sig_const(-0.5)}});
}

// One decoupled solve on a uniform grid, nodal values returned step-wise.
std::vector<Vec> one_shot_nodal(const Problem& p, Scheme scheme, int cells) {
  auto mesh = std::make_shared<const MultiMesh>(init_mesh(p.t0, p.tn, p.m, cells + 1, {}));
  const Splitting s = build_splitting(p.B, SplitKind::full);
  const Qoi q = Qoi::make({}, p);
  const AssembledSystem sys = assemble(p, s, q, *mesh, scheme);
  const LevelFactorization lu(sys.F_hat);
  const Vec u = next_iterate(lu, sys, constant_waveform(mesh, sys.trial, p.u0).coeffs);
  std::vector<Vec> nodal;
  const auto off = mesh->offsets();
  for (int j = 0; j <= cells; ++j) {
    Vec v(p.m);
    for (int i = 0; i < p.m; ++i) v[i] = u[off[i] + j];
    nodal.push_back(v);
  }
  return nodal;
}

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("one decoupled solve walks the forward-euler recursion") {
  const Problem p = coupled3();
  const int cells = 20;
  const auto got = one_shot_nodal(p, Scheme::explicit_euler, cells);
  std::vector<double> t(cells + 1);
  for (int j = 0; j <= cells; ++j) t[j] = j * 1.0 / cells;
  const auto want = testutil::forward_euler_steps(p, t);
  REQUIRE(got.size() == want.size());
  for (size_t j = 0; j < got.size(); ++j)
    CHECK((got[j] - want[j]).norm() <= 1e-12 * (1.0 + want[j].norm()));
}

TEST_CASE("one decoupled solve walks the trapezoid recursion") {
  const Problem p = coupled3();
  const int cells = 20;
  const auto got = one_shot_nodal(p, Scheme::crank_nicolson, cells);
  std::vector<double> t(cells + 1);
  for (int j = 0; j <= cells; ++j) t[j] = j * 1.0 / cells;
  const auto want = testutil::trapezoid_steps(p, t);
  REQUIRE(got.size() == want.size());
  for (size_t j = 0; j < got.size(); ++j)
    CHECK((got[j] - want[j]).norm() <= 1e-12 * (1.0 + want[j].norm()));
}

TEST_CASE("initial rows pin the starting values") {
  const Problem p = coupled3();
  auto mesh = init_mesh(0.0, 1.0, 3, 9, {});
  const Splitting s = build_splitting(p.B, SplitKind::jacobi);
  const AssembledSystem sys = assemble(p, s, Qoi::make({}, p), mesh, Scheme::explicit_euler);
  const auto off = mesh.offsets();
  const Mat Fh = Mat(sys.F_hat);
  const Mat Fc = Mat(sys.F_check);
  for (int i = 0; i < 3; ++i) {
    CHECK(Fh(off[i], off[i]) == 1.0);
    CHECK(Fh.row(off[i]).cwiseAbs().sum() == 1.0);
    CHECK(Fc.row(off[i]).cwiseAbs().sum() == 0.0);
    CHECK(sys.G[off[i]] == p.u0[i]);
    CHECK(sys.H[off[i]] == 0.0);
  }
}

TEST_CASE("qoi weights land on their breakpoints") {
  Mat B(2, 2);
  B << 10.0, -1.0, 1.0, 10.0;
  Vec u0(2);
  u0 << -0.1, 0.1;
  const Problem p =
      make_problem(B, u0, 0.0, 3.0, {{sig_sine(10.0, 1.0)}, {sig_sine(1.0, 10.0)}});
  Vec w1(2), w2(2);
  w1 << 1.0, 0.0;
  w2 << 1.0, 2.0;
  const Qoi q = Qoi::make({{2.0, w1}, {3.0, w2}}, p);
  auto mesh = std::make_shared<const MultiMesh>(init_mesh(0.0, 3.0, 2, 32, {2.0, 3.0}));
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  const AssembledSystem sys = assemble(p, s, q, *mesh, Scheme::explicit_euler);

  const auto off = mesh->offsets();
  const auto& g0 = mesh->grid(0);
  const int j2 = static_cast<int>(std::lower_bound(g0.begin(), g0.end(), 2.0) - g0.begin());
  const int j3 = static_cast<int>(g0.size()) - 1;
  CHECK(sys.H[off[0] + j2] == 1.0);
  CHECK(sys.H[off[0] + j3] == 1.0);
  CHECK(sys.H[off[1] + j3] == 2.0);
  CHECK(sys.H.cwiseAbs().sum() == 4.0);

  // the functional of any coefficient vector is the plain dot product
  const LevelFactorization lu(sys.F_hat);
  DiscreteFunction u;
  u.mesh = mesh;
  u.family = sys.trial;
  u.coeffs = next_iterate(lu, sys, constant_waveform(mesh, sys.trial, u0).coeffs);
  CHECK(std::abs(qoi_of_discrete(u, q) - u.coeffs.dot(sys.H)) <= 1e-13);
}

TEST_CASE("qoi times must lie on the mesh") {
  const Problem p = coupled3();
  Vec w = Vec::Ones(3);
  const Qoi q = Qoi::make({{0.123456, w}}, p);
  auto mesh = init_mesh(0.0, 1.0, 3, 9, {});  // 0.123456 not a breakpoint
  const Splitting s = build_splitting(p.B, SplitKind::jacobi);
  CHECK(contains(error_message(
                     [&] { assemble(p, s, q, mesh, Scheme::explicit_euler); }, Error::runtime),
                 "breakpoint"));
}

TEST_CASE("non-finite forcing is reported") {
  Mat B = Mat::Identity(1, 1);
  Vec u0 = Vec::Ones(1);
  // t^(1/2) at t in [-1, ...] is blocked by validation; force a NaN through
  // an unvalidated problem instead
  Problem p = make_problem(B, u0, -1.0, 1.0, {{{SignalTerm::power, 1.0, 0.5}}});
  auto mesh = init_mesh(-1.0, 1.0, 1, 9, {});
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  CHECK(contains(error_message(
                     [&] { assemble(p, s, Qoi::make({}, p), mesh, Scheme::explicit_euler); },
                     Error::runtime),
                 "non-finite"));
}

TEST_CASE("mass blocks integrate nodal interpolants of lines exactly across grids") {
  // two components on deliberately different nonuniform grids
  Mat B(2, 2);
  B << 1.3, -0.7, 0.45, 2.2;
  Vec u0(2);
  const double alpha[2] = {0.8, -0.3}, beta[2] = {-1.1, 0.9};
  u0 << alpha[0], alpha[1];
  const Problem p = make_problem(B, u0, 0.0, 1.0, {{}, {}});
  const MultiMesh mesh({{0.0, 0.3, 0.55, 1.0}, {0.0, 0.25, 0.5, 0.8, 1.0}}, 0);
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  const AssembledSystem sys = assemble(p, s, Qoi::make({}, p), mesh, Scheme::crank_nicolson);

  const auto off = mesh.offsets();
  Vec c(mesh.dofs());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j <= mesh.n(i); ++j) c[off[i] + j] = alpha[i] + beta[i] * mesh.grid(i)[j];

  const Vec r = Mat(sys.F_hat) * c + Mat(sys.F_check) * c;
  for (int i = 0; i < 2; ++i) {
    CHECK(r[off[i]] == doctest::Approx(alpha[i]).epsilon(1e-14));  // value at t0 = 0
    for (int j = 1; j <= mesh.n(i); ++j) {
      const double T0 = mesh.grid(i)[j - 1], T1 = mesh.grid(i)[j];
      double want = beta[i] * (T1 - T0);
      for (int ip = 0; ip < 2; ++ip)
        want += B(i, ip) * (alpha[ip] * (T1 - T0) + beta[ip] * 0.5 * (T1 * T1 - T0 * T0));
      CHECK(r[off[i] + j] == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("held-forward mass matches midpoint sums on merged cuts") {
  Mat B(2, 2);
  B << 1.3, -0.7, 0.45, 2.2;
  const Problem p = make_problem(B, Vec::Zero(2), 0.0, 1.0, {{}, {}});
  const MultiMesh mesh({{0.0, 0.3, 0.55, 1.0}, {0.0, 0.25, 0.5, 0.8, 1.0}}, 0);
  const Splitting s = build_splitting(B, SplitKind::jacobi);
  const AssembledSystem sys = assemble(p, s, Qoi::make({}, p), mesh, Scheme::explicit_euler);

  const auto off = mesh.offsets();
  const Vec c = Vec::LinSpaced(mesh.dofs(), -1.0, 1.0);
  const Vec r = Mat(sys.F_hat) * c + Mat(sys.F_check) * c;

  // independent quadrature: union of both grids cut against each test cell,
  // midpoint value of the held-forward trial times the subcell width
  std::vector<double> cuts;
  for (int i = 0; i < 2; ++i)
    cuts.insert(cuts.end(), mesh.grid(i).begin(), mesh.grid(i).end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (int i = 0; i < 2; ++i) {
    const auto& gi = mesh.grid(i);
    for (int j = 1; j <= mesh.n(i); ++j) {
      const double T0 = gi[j - 1], T1 = gi[j];
      double want = c[off[i] + j] - c[off[i] + j - 1];  // derivative atoms
      for (size_t q = 0; q + 1 < cuts.size(); ++q) {
        const double a = std::max(T0, cuts[q]), b = std::min(T1, cuts[q + 1]);
        if (b <= a) continue;
        const double mid = 0.5 * (a + b);
        for (int ip = 0; ip < 2; ++ip)
          want += B(i, ip) * (b - a) *
                  eval_family(Family::a, mesh.grid(ip), c.data() + off[ip], mid);
      }
      CHECK(r[off[i] + j] == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("triplet dumps are row-major with full precision") {
  SpMat A(2, 2);
  std::vector<Eigen::Triplet<double>> trips = {{1, 0, 0.1}, {0, 0, 1.0}, {1, 1, -2.5}};
  A.setFromTriplets(trips.begin(), trips.end());
  std::ostringstream os;
  write_triplets(A, os);
  CHECK(os.str() == "0 0 1\n1 0 0.10000000000000001\n1 1 -2.5\n");
}

}  // TEST_SUITE
