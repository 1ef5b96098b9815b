#include "abcover/sheaf.hpp"

#include <algorithm>

#include "abcover/error.hpp"

namespace abcover {

namespace {

std::vector<Element> sorted_elements(const Subgroup& s) {
  auto out = elements(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Int> factor_vector(const BundleClass& c, Int dim) {
  std::vector<Int> v(static_cast<std::size_t>(dim) + 1, 0);
  if (c.is_trivial()) {
    for (Int q = 0; q <= dim; ++q) v[static_cast<std::size_t>(q)] = binomial(dim, q);
  } else if (c.degree > 0) {
    v.front() = c.degree;
  } else if (c.degree < 0) {
    v.back() = -c.degree;
  }
  return v;
}

void require_curves(const ProductQuotient& pq) {
  for (const auto& f : pq.factors) {
    if (f.base.base_dim != 1) throw Unsupported("p-form pushforwards need curve factors");
  }
}

}  // namespace

Int binomial(Int n, Int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Summand> omega_pushforward(const CoverConfiguration& config) {
  std::vector<Summand> out;
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    const auto ambient = pq->subgroup.ambient();
    for (const auto& psi : sorted_elements(annihilator(pq->subgroup))) {
      Summand s;
      s.character = psi;
      for (std::size_t j = 0; j < pq->factors.size(); ++j) {
        s.classes.push_back(pq->factors[j].at(ambient.component(psi, j)));
        s.subset.push_back(j);
      }
      out.push_back(std::move(s));
    }
    return out;
  }
  const auto& box = std::get<DirectBoxCover>(config);
  const auto qm = box.group.moduli();
  std::vector<std::size_t> all(box.factors.size());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  coords::for_each_element(qm, [&](const Element& tau) {
    out.push_back(Summand{box.at(tau), tau, all});
  });
  return out;
}

std::vector<Summand> omega_p_pushforward(const ProductQuotient& pq, int p) {
  require_curves(pq);
  const int n = static_cast<int>(pq.factors.size());
  if (p < 0 || p > n) throw MalformedInput("form degree out of range");
  const auto ambient = pq.subgroup.ambient();
  const auto characters = sorted_elements(annihilator(pq.subgroup));
  // Subsets J of size p in lexicographic order of their sorted index lists.
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + p, true);
  do {
    std::vector<std::size_t> j;
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) j.push_back(static_cast<std::size_t>(i));
    }
    subsets.push_back(std::move(j));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(subsets.begin(), subsets.end());

  std::vector<Summand> out;
  for (const auto& subset : subsets) {
    std::vector<bool> in_j(static_cast<std::size_t>(n), false);
    for (auto j : subset) in_j[j] = true;
    for (const auto& psi : characters) {
      // psi_j = chi_j on J and psi_k = chi_k^{-1} off J.
      Summand s;
      s.character = psi;
      s.subset = subset;
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const auto& f = pq.factors[j];
        const Element comp = ambient.component(psi, j);
        if (in_j[j]) {
          s.classes.push_back(f.at(comp));
        } else {
          s.classes.push_back(inverse(f.at(coords::neg(f.group.moduli(), comp)), f.base.torsion_group));
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Int> cohomology_vector(const std::vector<BundleClass>& classes, const std::vector<Int>& dims) {
  if (classes.size() != dims.size()) throw MalformedInput("one dimension per class required");
  std::vector<Int> v{1};
  for (std::size_t j = 0; j < classes.size(); ++j) v = convolve(v, factor_vector(classes[j], dims[j]));
  return v;
}

std::vector<Int> h_omega(const CoverConfiguration& config) {
  const auto dims = base_dims(config);
  std::vector<Int> total(static_cast<std::size_t>(total_dim(config)) + 1, 0);
  for (const auto& s : omega_pushforward(config)) {
    const auto v = cohomology_vector(s.classes, dims);
    for (std::size_t q = 0; q < v.size(); ++q) total[q] += v[q];
  }
  return total;
}

Int euler_char_omega(const CoverConfiguration& config) {
  Int chi = 0;
  for (const auto& s : omega_pushforward(config)) {
    Int term = 1;
    for (const auto& c : s.classes) term *= c.degree;
    chi += term;
  }
  return chi;
}

HodgeDiamond torus_diamond(int n) {
  HodgeDiamond d{n, std::vector<std::vector<Int>>(static_cast<std::size_t>(n) + 1,
                                                   std::vector<Int>(static_cast<std::size_t>(n) + 1))};
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) d.h[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = binomial(n, p) * binomial(n, q);
  }
  return d;
}

HodgeDiamond hodge_diamond(const ProductQuotient& pq) {
  require_curves(pq);
  const int n = static_cast<int>(pq.factors.size());
  const std::vector<Int> dims(static_cast<std::size_t>(n), 1);
  HodgeDiamond d{n, std::vector<std::vector<Int>>(static_cast<std::size_t>(n) + 1,
                                                   std::vector<Int>(static_cast<std::size_t>(n) + 1, 0))};
  for (int p = 0; p <= n; ++p) {
    for (const auto& s : omega_p_pushforward(pq, p)) {
      const auto v = cohomology_vector(s.classes, dims);
      for (int q = 0; q <= n; ++q) d.h[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] += v[static_cast<std::size_t>(q)];
    }
  }
  return d;
}

bool torsion_factor_criterion(const CoverConfiguration& config) {
  for (const auto& s : omega_pushforward(config)) {
    bool trivial = true, has_torsion = false;
    for (const auto& c : s.classes) {
      trivial = trivial && c.is_trivial();
      has_torsion = has_torsion || c.is_torsion();
    }
    if (!trivial && !has_torsion) return false;
  }
  return true;
}

RctVerdict is_rct(const CoverConfiguration& config) {
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    const auto d = hodge_diamond(*pq);
    return RctVerdict{d == torus_diamond(d.n), RctLevel::FullDiamond};
  }
  return RctVerdict{torsion_factor_criterion(config), RctLevel::OmegaLevel};
}

BettiEuler betti_and_euler(const HodgeDiamond& d) {
  BettiEuler out;
  out.betti.assign(static_cast<std::size_t>(2 * d.n) + 1, 0);
  for (int p = 0; p <= d.n; ++p) {
    for (int q = 0; q <= d.n; ++q) out.betti[static_cast<std::size_t>(p + q)] += d.h[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  }
  for (std::size_t k = 0; k < out.betti.size(); ++k) out.chi_top += (k % 2 ? -1 : 1) * out.betti[k];
  return out;
}

}  // namespace abcover
