#include "abcover/theorems.hpp"

#include <algorithm>

#include "abcover/error.hpp"

namespace abcover {

namespace {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<Int> prime_square_root(Int n) {
  for (Int p = 2; p * p <= n; ++p) {
    if (p * p == n) return is_prime(p) ? std::optional<Int>(p) : std::nullopt;
  }
  return std::nullopt;
}

bool prime_exponent(const FiniteAbelianGroup& g) { return g.is_trivial() || is_prime(g.exponent()); }

// Genus of C_j / <h_j>: the characters trivial on h_j survive.
Int quotient_genus(const FactorDatum& f, const Element& h) {
  const auto m = f.group.moduli();
  Int g = 1;
  for (Int k = 1; k < f.group.order(); ++k) {
    const Element chi = coords::element_at(m, k);
    if (pairing(m, chi, h).num == 0) g += f.classes[static_cast<std::size_t>(k)].degree;
  }
  return g;
}

bool acts_freely_on_factor(const FactorDatum& f, const Element& h) {
  const Int ord = coords::element_order(f.group.moduli(), h);
  return factor_genus(f) - 1 == ord * (quotient_genus(f, h) - 1);
}

}  // namespace

Int degree_albanese(const CoverConfiguration& config) {
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) return pq->subgroup.index();
  return std::get<DirectBoxCover>(config).group.order();
}

Int factor_degree(const ProductQuotient& pq, std::size_t k) {
  const std::size_t n = pq.factors.size();
  if (n < 2) throw Unsupported("factor degrees need at least two factors");
  if (k >= n) throw MalformedInput("factor index out of range");
  std::vector<bool> keep(n, true);
  keep[k] = false;
  return project(pq.subgroup, keep).index();
}

std::optional<Int> smallest_prime(Int n) {
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n > 1 ? std::optional<Int>(n) : std::nullopt;
}

bool gate_open(Gate gate, const Facts& facts) {
  if (!facts.general_type_proxy) return false;
  return gate == Gate::Rct ? facts.rct.certified : facts.chi_omega == 0;
}

TheoremC theorem_c_verdict(Int degree, Gate gate, const Facts& facts) {
  TheoremC out;
  out.applicable = gate_open(gate, facts);
  for (Int p = 2; p * p <= degree; ++p) {
    if (is_prime(p) && degree % (p * p) == 0) {
      out.witness_prime = p;
      break;
    }
  }
  out.holds = out.witness_prime.has_value();
  return out;
}

TheoremD theorem_d_verdict(const CoverConfiguration& config, Int degree, Gate gate, const Facts& facts) {
  TheoremD out;
  for (const auto& b : bases(config)) out.m += b.simple_factors;
  out.p = smallest_prime(degree);
  out.vacuous = !out.p.has_value();
  out.applicable = gate_open(gate, facts) && !out.vacuous;
  out.holds = out.vacuous || out.m >= *out.p + 1;
  return out;
}

Extremal extremal_verdict(const CoverConfiguration& config, Int degree, Gate gate, const Facts& facts) {
  Extremal out;
  const auto p = prime_square_root(degree);
  out.applicable = p.has_value() && gate_open(gate, facts);
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    out.quotient_group = quotient_structure(pq->subgroup);
  } else {
    out.quotient_group = std::get<DirectBoxCover>(config).group;
  }
  out.holds = p.has_value() && out.quotient_group == FiniteAbelianGroup::elementary(*p, 2);
  return out;
}

DegaCheck dega_inequality_check(const ProductQuotient& pq) {
  DegaCheck out;
  const std::size_t n = pq.factors.size();
  const auto checks = projection_checks(pq.subgroup);
  if (n < 2 || !checks.all_surjective()) return out;
  out.applicable = true;

  // Route 1: group orders.
  const Int deg = pq.subgroup.index();
  Int rhs = 0;
  Int product = 1;
  for (const auto& f : pq.factors) product *= f.group.order();
  for (std::size_t k = 0; k < n; ++k) {
    const Int dk = factor_degree(pq, k);
    rhs += dk - 1;
    if (!checks.injective_omitting[k][k]) out.injectivity_gap = true;
    // The closed formula agrees with the image formula exactly when the
    // omitted projection is injective.
    const Int closed = product / pq.factors[k].group.order() / pq.subgroup.order();
    if (checks.injective_omitting[k][k] && closed != dk) out.routes_agree = false;
  }
  out.lhs = deg - 1;
  out.rhs = rhs;

  // Route 2: count omega summands, globally and those trivial on factor k.
  const auto ambient = pq.subgroup.ambient();
  const auto characters = elements(annihilator(pq.subgroup));
  Int count = static_cast<Int>(characters.size());
  Int rhs_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Int dk = 0;
    for (const auto& psi : characters) {
      if (coords::is_zero(ambient.component(psi, k))) ++dk;
    }
    rhs_count += dk - 1;
  }
  if (count - 1 != out.lhs || rhs_count != out.rhs) out.routes_agree = false;
  out.holds = out.lhs <= out.rhs;
  return out;
}

Smoothness smoothness(const ProductQuotient& pq) {
  for (const auto& f : pq.factors) {
    if (!prime_exponent(f.group)) return Smoothness::Unknown;
  }
  const auto ambient = pq.subgroup.ambient();
  bool all_free = true;
  bool reflection = false;
  for (const auto& h : elements(pq.subgroup)) {
    if (coords::is_zero(h)) continue;
    bool free = false;
    std::size_t moving = 0;
    for (std::size_t j = 0; j < pq.factors.size(); ++j) {
      const Element hj = ambient.component(h, j);
      if (coords::is_zero(hj)) continue;
      ++moving;
      if (acts_freely_on_factor(pq.factors[j], hj)) free = true;
    }
    if (!free) {
      all_free = false;
      if (moving == 1) reflection = true;
    }
  }
  if (all_free) return Smoothness::Smooth;
  return reflection ? Smoothness::Unknown : Smoothness::Singular;
}

std::vector<std::string> consistency_guard(const VerdictSheet& sheet, const Facts& facts) {
  std::vector<std::string> alerts;
  if (sheet.smooth == Smoothness::Smooth && facts.general_type_proxy && facts.rct.certified) {
    alerts.push_back("smooth general-type configuration certified as a rational cohomology torus");
  }
  if (facts.rct.certified && facts.rct.level == RctLevel::FullDiamond && facts.betti &&
      facts.betti->chi_top != 0) {
    alerts.push_back("rational cohomology torus with nonzero topological Euler characteristic");
  }
  if (sheet.theorem_c.applicable && !sheet.theorem_c.holds) {
    alerts.push_back("degree not divisible by a prime square under the theorem hypotheses");
  }
  if (sheet.theorem_d.applicable && !sheet.theorem_d.holds) {
    alerts.push_back("fewer than p+1 simple factors under the theorem hypotheses");
  }
  if (sheet.extremal.applicable && !sheet.extremal.holds) {
    alerts.push_back("degree p^2 but the Galois group is not (Z/p)^2");
  }
  if (sheet.dega.applicable && !sheet.dega.routes_agree) {
    alerts.push_back("degree inequality: group-order and summand-count routes disagree");
  }
  return alerts;
}

VerdictSheet verdicts(const CoverConfiguration& config, Gate gate, const Facts& facts) {
  VerdictSheet sheet;
  sheet.deg_albanese = degree_albanese(config);
  sheet.smallest_prime = smallest_prime(sheet.deg_albanese);
  sheet.theorem_c = theorem_c_verdict(sheet.deg_albanese, gate, facts);
  sheet.theorem_d = theorem_d_verdict(config, sheet.deg_albanese, gate, facts);
  sheet.extremal = extremal_verdict(config, sheet.deg_albanese, gate, facts);
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    if (pq->factors.size() >= 2) {
      for (std::size_t k = 0; k < pq->factors.size(); ++k) sheet.factor_degrees.push_back(factor_degree(*pq, k));
    }
    const auto checks = projection_checks(pq->subgroup);
    sheet.structure = StructureChecks{checks.surjective_onto, checks.injective_omitting};
    sheet.dega = dega_inequality_check(*pq);
    sheet.smooth = smoothness(*pq);
  }
  sheet.alerts = consistency_guard(sheet, facts);
  return sheet;
}

}  // namespace abcover
