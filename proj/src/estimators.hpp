#pragma once

#include <functional>
#include <map>
#include <vector>

#include "assembly.hpp"
#include "basis.hpp"
#include "mesh.hpp"

namespace wrgoal {

// P(Poisson(x) >= K), evaluated by a stable term recurrence, clamped to [0,1].
double poisson_upper_tail(double x, int K);

// A-priori bound on the QoI splitting error after K sweeps,
//   nu = (L2/-L1)^K * sup_e0 * sum_r ||J_r|| * P(Poisson(-L1 (tau_r - t0)) >= K).
// Requires a dissipative implicit part (L1 < 0); otherwise the bound carries
// no information and +inf is returned so the caller falls back to the sweep cap.
double splitting_bound(double L1, double L2, double sup_e0, int K, const Qoi& q, double t0);

// Dual weight for one component, reconstructed one order above the discrete
// dual: a line through the nodal values of a piecewise-constant dual, local
// quadratics through the nodal values of a hat dual (stencil centered where
// possible, one-sided at the ends).  Dual coefficient j is nodal at t_j (left
// limit).  `jumps` lists interior nodes where the dual is discontinuous (QoI
// event times of the terminal dual): the reconstruction breaks there and the
// cell to the right sees the right limit z - jump.
// Fewer than 3 nodes: no reconstruction, the weight is identically zero.
class DualWeight {
 public:
  DualWeight(const std::vector<double>& grid, Family family, const double* z,
             const std::map<int, double>& jumps = {});

  // weight at t strictly inside cell (t_{cell-1}, t_cell), cell 1-based
  double value(double t, int cell) const;
  // left limit at node j; pairs with the jump atom of a piecewise-constant iterate
  double left_limit(int j) const;
  // reconstruction minus the discrete dual itself (the adjoint-error proxy)
  double proxy_value(double t, int cell) const;

 private:
  std::vector<double> t_;
  Family fam_;
  std::vector<double> z_;
  std::vector<double> jump_;
  std::vector<int> patch_;  // hat family: patch boundaries at jump nodes
  bool degenerate_ = false;
};

// Exact-weight replacement for tests: (sweep k, component i, time t, side),
// side < 0 requesting the left limit at discontinuities.
using OracleWeight = std::function<double(int, int, double, int)>;

struct EstimateOptions {
  OracleWeight oracle;  // replaces the reconstructed weight when set
  // per-sweep solver residual rows; with an oracle weight the discrete-dual
  // part of the pairing is subtracted through these instead of by quadrature
  const std::vector<Vec>* residual_rows = nullptr;
  int subdivisions = 1;        // quadrature panels per merged subcell
  std::vector<QoiTerm> events;  // interior QoI events (terminal dual breaks there)
};

struct EstimatorReport {
  int level = 0;
  int K = 0;
  double nu = 0.0;
  double mu_total = 0.0;
  double signed_total = 0.0;            // no absolute values; DWR identity checks
  std::vector<Vec> mu_local;            // [i](j-1), accumulated over sweeps
  std::vector<std::vector<Vec>> mu_k;   // [k-1][i](j-1), one sweep's share
};

// Localized discretization estimators.  For each sweep k and cell (i,j):
//   mu_{k,i,j} = | int_{cell} rho_{k,i} w_{k,i} dt  -  [U_k]_{i,j} w_{k,i}(t_j^-) |
// with rho the interior residual of iterate pair (U_k, U_{k-1}) and w the
// reconstructed dual of matching stack depth (duals[k-1], terminal last).
// Quadrature: Gauss-3 on merged subcells (exact for these integrands).
EstimatorReport local_dwr_estimates(const Splitting& s, const Signal& Y,
                                    const MultiMesh& mesh, Family fam,
                                    const std::vector<Vec>& iterates,
                                    const std::vector<Vec>& duals,
                                    const EstimateOptions& opt = {});

}  // namespace wrgoal
