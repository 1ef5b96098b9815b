#include "abcover/cover.hpp"

#include <set>
#include <sstream>

#include "abcover/error.hpp"

namespace abcover {

namespace {

std::string tuple_string(const Element& x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
  out << ")";
  return out.str();
}

std::string factor_label(std::size_t j) { return "factor " + std::to_string(j); }

// Constraints shared by a factor's class map and one slot of a box cover:
// the map tau -> classes(tau) over the characters of `group`.
void check_class_map(const FiniteAbelianGroup& group, const BaseFactor& base,
                     const std::function<const BundleClass&(Int)>& cls, const std::string& where,
                     bool require_nontrivial, bool require_injective,
                     std::vector<Violation>& out) {
  const auto m = group.moduli();
  const auto t = base.torsion_group.moduli();
  const Int n = group.order();
  bool shapes_ok = true;
  for (Int k = 0; k < n; ++k) {
    const auto& c = cls(k);
    const std::string at = where + " character " + tuple_string(coords::element_at(m, k));
    if (!coords::is_valid(t, c.torsion)) {
      out.push_back({"torsion-tag", at, "torsion tag is not an element of the torsion group"});
      shapes_ok = false;
      continue;
    }
    if (k == 0) {
      if (!c.is_trivial()) out.push_back({"trivial-character", at, "class of 1 must be trivial"});
      continue;
    }
    if (c.degree < 0) out.push_back({"degree-sign", at, "degree must be >= 0"});
    if (require_nontrivial && c.is_trivial()) {
      out.push_back({"trivial-class", at, "trivial class at nontrivial character"});
    }
  }
  if (!shapes_ok) return;
  for (Int a = 1; a < n; ++a) {
    const Element x = coords::element_at(m, a);
    for (Int b = a; b < n; ++b) {
      const Element y = coords::element_at(m, b);
      const Int s = coords::index_of(m, coords::add(m, x, y));
      if (cls(a).degree + cls(b).degree < cls(s).degree) {
        out.push_back({"subadditivity", where + " characters " + tuple_string(x) + " and " + tuple_string(y),
                       std::to_string(cls(a).degree) + " + " + std::to_string(cls(b).degree) +
                           " < " + std::to_string(cls(s).degree)});
      }
    }
  }
  // K = degree-zero characters must form a subgroup carrying a homomorphic
  // torsion map (injective for genuine Galois data).
  std::vector<Int> kernel;
  for (Int k = 0; k < n; ++k) {
    if (cls(k).degree == 0) kernel.push_back(k);
  }
  const std::set<Int> kset(kernel.begin(), kernel.end());
  for (Int a : kernel) {
    for (Int b : kernel) {
      if (b < a) continue;
      const Element x = coords::element_at(m, a), y = coords::element_at(m, b);
      const Int s = coords::index_of(m, coords::add(m, x, y));
      const std::string at = where + " characters " + tuple_string(x) + " and " + tuple_string(y);
      if (!kset.count(s)) {
        out.push_back({"degree-zero-subgroup", at, "degree-zero characters are not closed under products"});
        continue;
      }
      if (coords::add(t, cls(a).torsion, cls(b).torsion) != cls(s).torsion) {
        out.push_back({"torsion-homomorphism", at, "torsion tags are not additive on degree-zero characters"});
      }
    }
  }
  if (require_injective) {
    std::set<Element> seen;
    for (Int a : kernel) {
      if (!seen.insert(cls(a).torsion).second) {
        out.push_back({"torsion-injective",
                       where + " character " + tuple_string(coords::element_at(m, a)),
                       "torsion map on degree-zero characters is not injective"});
      }
    }
  }
}

void check_base(const BaseFactor& b, const std::string& where, std::vector<Violation>& out) {
  if (b.base_dim < 1) out.push_back({"base-dim", where, "base dimension must be >= 1"});
  if (b.simple_factors < 1 || b.simple_factors > std::max<Int>(b.base_dim, 1)) {
    out.push_back({"simple-factors", where, "simple factor count must lie in [1, base_dim]"});
  }
}

}  // namespace

BundleClass trivial_class(const FiniteAbelianGroup& torsion_group) {
  return BundleClass{0, coords::zero(torsion_group.moduli())};
}

BundleClass inverse(const BundleClass& c, const FiniteAbelianGroup& torsion_group) {
  return BundleClass{-c.degree, coords::neg(torsion_group.moduli(), c.torsion)};
}

const BundleClass& FactorDatum::at(const Element& chi) const {
  return classes.at(static_cast<std::size_t>(coords::index_of(group.moduli(), chi)));
}

BundleClass& FactorDatum::at(const Element& chi) {
  return classes.at(static_cast<std::size_t>(coords::index_of(group.moduli(), chi)));
}

FactorDatum FactorDatum::blank(BaseFactor base, FiniteAbelianGroup group) {
  FactorDatum f{std::move(base), std::move(group), {}};
  f.classes.assign(static_cast<std::size_t>(f.group.order()), trivial_class(f.base.torsion_group));
  return f;
}

ProductGroup ProductQuotient::ambient() const {
  std::vector<FiniteAbelianGroup> groups;
  for (const auto& f : factors) groups.push_back(f.group);
  return ProductGroup(std::move(groups));
}

const std::vector<BundleClass>& DirectBoxCover::at(const Element& tau) const {
  return classes.at(static_cast<std::size_t>(coords::index_of(group.moduli(), tau)));
}

DirectBoxCover DirectBoxCover::blank(std::vector<BaseFactor> factors, FiniteAbelianGroup group) {
  DirectBoxCover box{std::move(factors), std::move(group), {}};
  std::vector<BundleClass> row;
  for (const auto& b : box.factors) row.push_back(trivial_class(b.torsion_group));
  box.classes.assign(static_cast<std::size_t>(box.group.order()), row);
  return box;
}

std::vector<BaseFactor> bases(const CoverConfiguration& config) {
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    std::vector<BaseFactor> out;
    for (const auto& f : pq->factors) out.push_back(f.base);
    return out;
  }
  return std::get<DirectBoxCover>(config).factors;
}

std::vector<Int> base_dims(const CoverConfiguration& config) {
  std::vector<Int> out;
  for (const auto& b : bases(config)) out.push_back(b.base_dim);
  return out;
}

Int total_dim(const CoverConfiguration& config) {
  Int n = 0;
  for (Int a : base_dims(config)) n += a;
  return n;
}

ValidationReport validate_factor(const FactorDatum& f, std::size_t index) {
  ValidationReport report;
  const std::string where = factor_label(index);
  check_base(f.base, where, report.violations);
  if (f.classes.size() != static_cast<std::size_t>(f.group.order())) {
    report.violations.push_back({"class-count", where, "one class per character required"});
    return report;
  }
  check_class_map(
      f.group, f.base, [&](Int k) -> const BundleClass& { return f.classes[static_cast<std::size_t>(k)]; },
      where, true, true, report.violations);
  return report;
}

ValidationReport validate(const CoverConfiguration& config) {
  ValidationReport report;
  auto& out = report.violations;
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    if (pq->factors.empty()) out.push_back({"factor-count", "factors", "at least one factor required"});
    for (std::size_t j = 0; j < pq->factors.size(); ++j) {
      const auto& f = pq->factors[j];
      if (f.base.base_dim != 1) {
        out.push_back({"curve-factor", factor_label(j), "product quotients need one-dimensional bases"});
      }
      auto sub = validate_factor(f, j);
      out.insert(out.end(), sub.violations.begin(), sub.violations.end());
    }
    if (!(pq->subgroup.ambient() == pq->ambient())) {
      out.push_back({"subgroup-ambient", "subgroup", "subgroup does not live in the product of factor groups"});
    }
    return report;
  }
  const auto& box = std::get<DirectBoxCover>(config);
  if (box.factors.empty()) out.push_back({"factor-count", "factors", "at least one factor required"});
  for (std::size_t j = 0; j < box.factors.size(); ++j) check_base(box.factors[j], factor_label(j), out);
  if (box.classes.size() != static_cast<std::size_t>(box.group.order())) {
    out.push_back({"class-count", "classes", "one class tuple per character required"});
    return report;
  }
  for (std::size_t k = 0; k < box.classes.size(); ++k) {
    if (box.classes[k].size() != box.factors.size()) {
      out.push_back({"class-count", "classes", "one class per factor required"});
      return report;
    }
  }
  for (std::size_t j = 0; j < box.factors.size(); ++j) {
    check_class_map(
        box.group, box.factors[j],
        [&](Int k) -> const BundleClass& { return box.classes[static_cast<std::size_t>(k)][j]; },
        factor_label(j), false, false, out);
  }
  if (!out.empty()) return report;
  const auto m = box.group.moduli();
  for (std::size_t k = 1; k < box.classes.size(); ++k) {
    bool any = false;
    for (const auto& c : box.classes[k]) any = any || !c.is_trivial();
    if (!any) {
      out.push_back({"connectedness", "character " + tuple_string(coords::element_at(m, static_cast<Int>(k))),
                     "every factor class is trivial"});
    }
  }
  return report;
}

void require_valid(const CoverConfiguration& config) {
  const auto report = validate(config);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ValidationError(v.constraint + " at " + v.location + ": " + v.detail);
  }
}

Int factor_genus(const FactorDatum& f) {
  if (f.base.base_dim != 1) throw Unsupported("genus is defined for curve factors only");
  Int g = 1;
  for (std::size_t k = 1; k < f.classes.size(); ++k) g += f.classes[k].degree;
  return g;
}

Element box_character_to_product(const ProductQuotient& pq, const Element& tau) {
  const auto structure = decompose(annihilator(pq.subgroup));
  return structure.embed(pq.subgroup.ambient().moduli(), tau);
}

DirectBoxCover to_box_cover(const ProductQuotient& pq) {
  const auto ambient = pq.subgroup.ambient();
  const auto structure = decompose(annihilator(pq.subgroup));
  std::vector<BaseFactor> factors;
  for (const auto& f : pq.factors) factors.push_back(f.base);
  auto box = DirectBoxCover::blank(std::move(factors), structure.group);
  const auto qm = box.group.moduli();
  coords::for_each_element(qm, [&](const Element& tau) {
    const Element psi = structure.embed(ambient.moduli(), tau);
    auto& row = box.classes[static_cast<std::size_t>(coords::index_of(qm, tau))];
    for (std::size_t j = 0; j < pq.factors.size(); ++j) row[j] = pq.factors[j].at(ambient.component(psi, j));
  });
  return box;
}

DirectBoxCover twist(const DirectBoxCover& box, const std::vector<std::vector<Element>>& images) {
  const auto qm = box.group.moduli();
  const std::size_t n = box.factors.size();
  if (images.size() != qm.size()) throw MalformedInput("twist: one image per generator of the group");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != n) throw MalformedInput("twist: one torsion element per factor");
    for (std::size_t j = 0; j < n; ++j) {
      const auto t = box.factors[j].torsion_group.moduli();
      coords::require_valid(t, images[i][j], "twist image " + std::to_string(i));
      if (!coords::is_zero(coords::scale(t, qm[i], images[i][j]))) {
        throw MalformedInput("twist: image of generator " + std::to_string(i) +
                             " has order not dividing " + std::to_string(qm[i]));
      }
    }
  }
  DirectBoxCover out = box;
  coords::for_each_element(qm, [&](const Element& tau) {
    auto& row = out.classes[static_cast<std::size_t>(coords::index_of(qm, tau))];
    for (std::size_t j = 0; j < n; ++j) {
      const auto t = box.factors[j].torsion_group.moduli();
      for (std::size_t i = 0; i < qm.size(); ++i) {
        row[j].torsion = coords::add(t, row[j].torsion, coords::scale(t, tau[i], images[i][j]));
      }
    }
  });
  require_valid(out);
  return out;
}

PullbackResult etale_pullback(const DirectBoxCover& box, const std::vector<PullbackFactor>& maps) {
  const std::size_t n = box.factors.size();
  if (maps.size() != n) throw MalformedInput("pullback: one map per factor");
  std::vector<BaseFactor> factors = box.factors;
  for (std::size_t j = 0; j < n; ++j) {
    const auto src = box.factors[j].torsion_group.moduli();
    const auto dst = maps[j].target.moduli();
    if (maps[j].multiplier < 1) throw MalformedInput("pullback: multiplier must be >= 1");
    if (maps[j].images.size() != src.size()) throw MalformedInput("pullback: one image per generator");
    for (std::size_t i = 0; i < src.size(); ++i) {
      coords::require_valid(dst, maps[j].images[i], "pullback image " + std::to_string(i));
      if (!coords::is_zero(coords::scale(dst, src[i], maps[j].images[i]))) {
        throw MalformedInput("pullback: torsion map is not a homomorphism");
      }
    }
    factors[j].torsion_group = maps[j].target;
  }
  PullbackResult result{DirectBoxCover{factors, box.group, box.classes}, false};
  for (std::size_t k = 0; k < box.classes.size(); ++k) {
    bool all_trivial = true;
    for (std::size_t j = 0; j < n; ++j) {
      auto& c = result.cover.classes[k][j];
      c.degree *= maps[j].multiplier;
      c.torsion = hom_apply(maps[j].target.moduli(), maps[j].images, c.torsion);
      all_trivial = all_trivial && c.is_trivial();
    }
    if (k > 0 && all_trivial) result.disconnected = true;
  }
  return result;
}

}  // namespace abcover
