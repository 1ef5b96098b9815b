#include "abcover/analysis.hpp"

namespace abcover {

AnalysisReport analyze(const CoverConfiguration& config, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.config = config;
  r.gate = options.gate;
  r.validation = validate(config);
  if (!r.validation.ok()) return r;

  r.dim = total_dim(config);
  r.deg_albanese = degree_albanese(config);
  r.omega_summands = omega_pushforward(config);
  r.h_omega = h_omega(config);
  r.chi_omega = euler_char_omega(config);

  const auto* pq = std::get_if<ProductQuotient>(&config);
  if (pq && !options.omega_only) {
    r.diamond = hodge_diamond(*pq);
    r.betti = betti_and_euler(*r.diamond);
    r.rct = RctVerdict{*r.diamond == torus_diamond(r.diamond->n), RctLevel::FullDiamond};
  } else {
    r.rct = RctVerdict{torsion_factor_criterion(config), RctLevel::OmegaLevel};
  }

  for (int i = 0; i <= r.dim; ++i) r.loci.push_back(v_locus(config, i, options.sign));
  r.s_f = s_f(config);
  r.general_type_proxy = general_type_proxy(config);

  Facts facts{r.chi_omega, r.rct, r.general_type_proxy, r.betti};
  r.verdicts = verdicts(config, options.gate, facts);
  return r;
}

}  // namespace abcover
