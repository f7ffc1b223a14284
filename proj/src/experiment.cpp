#include "experiment.hpp"

#include <cmath>

#include "reference.hpp"

namespace wrgoal {

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.config = cfg;
  cfg.problem.validate();
  const Qoi q = Qoi::make(cfg.qoi_terms, cfg.problem);
  const GatedReference ref = reference_solve(cfg.problem, q);
  res.reference_J = ref.J;
  res.gate_delta = ref.gate_delta;

  for (const Variant& v : cfg.variants) {
    RunConfig rc;
    rc.scheme = v.scheme;
    rc.splitting = cfg.splitting;
    rc.levels = v.goal ? cfg.levels : cfg.uniform_levels;
    rc.fraction = v.goal ? cfg.fraction : 1.0;
    rc.k_max = cfg.k_max;
    rc.n_init = cfg.n_init;

    VariantResult vr;
    vr.variant = v;
    vr.history = run(cfg.problem, q, rc);
    for (const auto& rec : vr.history.levels)
      vr.errors.push_back(std::abs(rec.J - ref.J));
    res.variants.push_back(std::move(vr));
  }
  return res;
}

}  // namespace wrgoal
