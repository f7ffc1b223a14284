#include "driver.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace wrgoal {

void RunConfig::validate() const {
  if (levels < 0) throw Error(Error::invalid_argument, "levels must be >= 0");
  if (k_max < 1) throw Error(Error::invalid_argument, "kmax must be >= 1");
  if (!(fraction > 0.0) || fraction > 1.0)
    throw Error(Error::invalid_argument, "fraction must be in (0,1]");
  if (n_init < 2) throw Error(Error::invalid_argument, "n-init must be >= 2");
}

bool stopping_check(double mu_total, double nu) { return mu_total > nu; }

RunHistory run(const Problem& p, const Qoi& q, const RunConfig& cfg) {
  p.validate();
  cfg.validate();
  const Splitting s = build_splitting(p.B, cfg.splitting);
  const Family fam = trial_family(cfg.scheme);

  std::vector<double> taus;
  for (const auto& term : q.terms) taus.push_back(term.tau);
  auto mesh = std::make_shared<const MultiMesh>(init_mesh(p.t0, p.tn, p.m, cfg.n_init, taus));

  EstimateOptions opt;
  for (const auto& term : q.terms)
    if (term.tau < p.tn - 1e-12) opt.events.push_back(term);

  RunHistory hist;
  DiscreteFunction final_it;

  for (int l = 0; l <= cfg.levels; ++l) {
    const auto t_start = std::chrono::steady_clock::now();
    Vec w0;
    if (l == 0) {
      w0 = constant_waveform(mesh, fam, p.u0).coeffs;
    } else {
      const auto& rec = hist.levels.back();
      std::vector<std::vector<double>> loc(p.m);
      for (int i = 0; i < p.m; ++i)
        loc[i].assign(rec.mu_local[i].data(), rec.mu_local[i].data() + rec.mu_local[i].size());
      auto fine = std::make_shared<const MultiMesh>(
          bisect_cells(*mesh, select_cells(*mesh, loc, cfg.fraction)));
      w0 = transfer_waveform(final_it, fine).coeffs;
      mesh = std::move(fine);
    }

    const AssembledSystem sys = assemble(p, s, q, *mesh, cfg.scheme);
    const LevelFactorization lu(sys.F_hat);

    std::vector<Vec> iterates{w0};
    std::vector<Vec> duals;
    double sup_e0 = 0.0, nu = 0.0;
    EstimatorReport rep;
    int K = 0;
    while (K < cfg.k_max) {
      ++K;
      iterates.push_back(next_iterate(lu, sys, iterates.back()));
      if (K == 1) {
        sup_e0 = sup_distance(DiscreteFunction{mesh, fam, iterates[1]},
                              DiscreteFunction{mesh, fam, iterates[0]});
        duals = {dual_terminal(lu, sys)};
      } else {
        duals.insert(duals.begin(), dual_shift(lu, sys, duals.front()));
      }
      rep = local_dwr_estimates(s, p.Y, *mesh, fam, iterates, duals, opt);
      nu = splitting_bound(s.L1, s.L2, sup_e0, K, q, p.t0);
      if (!std::isfinite(rep.mu_total))
        throw Error(Error::runtime, "non-finite error estimate at level " + std::to_string(l) +
                                        ", sweep " + std::to_string(K));
      if (stopping_check(rep.mu_total, nu)) break;
    }

    final_it = DiscreteFunction{mesh, fam, iterates.back()};
    LevelRecord rec;
    rec.level = l;
    rec.N = mesh->N();
    rec.K = K;
    rec.nu = nu;
    rec.mu_total = rep.mu_total;
    rec.J = qoi_of_discrete(final_it, q);
    rec.mu_local = rep.mu_local;
    for (int i = 0; i < p.m; ++i) rec.mesh_grids.push_back(mesh->grid(i));
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            t_start)
                      .count();
    hist.levels.push_back(std::move(rec));
  }

  hist.final_mesh = mesh;
  hist.final_iterate = final_it;
  return hist;
}

}  // namespace wrgoal
