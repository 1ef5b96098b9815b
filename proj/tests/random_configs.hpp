#pragma once

// Random valid product quotients over small groups, for property tests.

#include <random>

#include "abcover/cover.hpp"

namespace testing_support {

using namespace abcover;

inline FactorDatum random_factor(const FiniteAbelianGroup& g, const FiniteAbelianGroup& t, std::mt19937& rng) {
  std::uniform_int_distribution<Int> degree(0, 2);
  const auto tm = t.moduli();
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto f = FactorDatum::blank(BaseFactor{1, 1, t}, g);
    for (std::size_t c = 1; c < f.classes.size(); ++c) {
      const Int d = degree(rng);
      Element tag = coords::zero(tm);
      if (d == 0) tag = coords::element_at(tm, std::uniform_int_distribution<Int>(1, t.order() - 1)(rng));
      f.classes[c] = BundleClass{d, tag};
    }
    if (validate_factor(f).ok()) return f;
  }
  auto f = FactorDatum::blank(BaseFactor{1, 1, t}, g);
  for (std::size_t c = 1; c < f.classes.size(); ++c) f.classes[c] = BundleClass{1, coords::zero(tm)};
  return f;
}

/// Two or three factors from Z/2, Z/3, (Z/2)^2 and a random subgroup.
inline ProductQuotient random_pq(std::mt19937& rng, std::size_t max_factors = 3) {
  const std::vector<std::pair<FiniteAbelianGroup, FiniteAbelianGroup>> kinds = {
      {FiniteAbelianGroup({2}), FiniteAbelianGroup({2, 2})},
      {FiniteAbelianGroup({3}), FiniteAbelianGroup({3, 3})},
      {FiniteAbelianGroup({2, 2}), FiniteAbelianGroup({2, 2})},
  };
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_factors)(rng);
  ProductQuotient pq;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& k = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    pq.factors.push_back(random_factor(k.first, k.second, rng));
  }
  const auto amb = pq.ambient();
  const auto m = amb.moduli();
  std::vector<Element> gens;
  for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k) {
    Element x(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) x[i] = std::uniform_int_distribution<Int>(0, m[i] - 1)(rng);
    gens.push_back(x);
  }
  pq.subgroup = subgroup_from_generators(amb, gens);
  return pq;
}

}  // namespace testing_support
