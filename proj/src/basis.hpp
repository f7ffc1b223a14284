#pragma once

#include <memory>

#include "mesh.hpp"

namespace wrgoal {

// Family a: piecewise constants, coefficient j is the value held on
// [t_j, t_{j+1}) with the first/last cells extended (nodal value held forward).
// Family b: right-closed counterparts, coefficient j lives on (t_{j-1}, t_j].
// Family c: continuous piecewise linear hats, coefficient j nodal at t_j.
enum class Family { a, b, c };

Family trial_family(Scheme s);

// side matters only at breakpoints: <0 takes the left limit, >=0 the value
// under the family's own closure convention.
double eval_family(Family f, const std::vector<double>& t, const double* c, double x,
                   int side = 0);
double hat_value(const std::vector<double>& t, int j, double x);
// slope inside the open cell (t_{j-1}, t_j)
double deriv_in_cell(Family f, const std::vector<double>& t, const double* c, int j);

struct DiscreteFunction {
  std::shared_ptr<const MultiMesh> mesh;
  Family family = Family::a;
  Vec coeffs;  // flat, component-major, n_i + 1 per component

  double eval(int i, double t, int side = 0) const;
  Vec eval(double t, int side = 0) const;
};

DiscreteFunction constant_waveform(std::shared_ptr<const MultiMesh> mesh, Family fam,
                                   const Vec& value);

// Pointwise re-representation on a refinement (superset of breakpoints);
// exact by nestedness for all families.
DiscreteFunction transfer_waveform(const DiscreteFunction& f,
                                   std::shared_ptr<const MultiMesh> fine);

double qoi_of_discrete(const DiscreteFunction& f, const Qoi& q);

}  // namespace wrgoal
