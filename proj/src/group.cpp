#include "abcover/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "abcover/error.hpp"

namespace abcover {

namespace {

using Wide = __int128;

Int mod(Wide a, Int m) {
  Wide r = a % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

// g = s*a + t*b, g = gcd(a, b) >= 0.
void xgcd(Int a, Int b, Int& g, Int& s, Int& t) {
  Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Int ipow(Int b, int e) {
  Int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Upper-triangular Hermite basis of span(rows) + diag(moduli) Z^r.
std::vector<Int> modular_hermite(std::span<const Int> moduli, std::vector<Element> work) {
  const std::size_t r = moduli.size();
  std::vector<Int> h(r * r, 0);
  for (auto& v : work) {
    for (std::size_t k = 0; k < r; ++k) v[k] = mod(v[k], moduli[k]);
  }
  for (std::size_t c = 0; c < r; ++c) {
    Element pivot(r, 0);
    pivot[c] = moduli[c];
    std::vector<Element> next;
    next.reserve(work.size());
    for (auto& v : work) {
      if (v[c] != 0) {
        Int g, s, t;
        xgcd(pivot[c], v[c], g, s, t);
        const Int a = pivot[c] / g;
        const Int b = v[c] / g;
        Element np(r, 0), nv(r, 0);
        np[c] = g;
        for (std::size_t k = c + 1; k < r; ++k) {
          np[k] = mod(Wide(s) * pivot[k] + Wide(t) * v[k], moduli[k]);
          nv[k] = mod(Wide(a) * v[k] - Wide(b) * pivot[k], moduli[k]);
        }
        pivot = std::move(np);
        v = std::move(nv);
      }
      if (std::any_of(v.begin() + static_cast<std::ptrdiff_t>(c) + 1, v.end(),
                      [](Int x) { return x != 0; })) {
        next.push_back(std::move(v));
      }
    }
    work = std::move(next);
    std::copy(pivot.begin(), pivot.end(), h.begin() + static_cast<std::ptrdiff_t>(c * r));
  }
  // Reduce entries right of each pivot into [0, h_jj).
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const Int piv = h[j * r + j];
      Int q = h[i * r + j] / piv;
      if (h[i * r + j] - q * piv < 0) --q;
      if (q == 0) continue;
      for (std::size_t k = j; k < r; ++k) h[i * r + k] -= q * h[j * r + k];
    }
  }
  return h;
}

// Normalizes a direct sum of cyclic subgroups <g_i> of order c_i into
// invariant-factor form via primary components.
GroupStructure normalize_cyclic(std::span<const Int> moduli, const std::vector<Int>& orders,
                                const std::vector<Element>& gens) {
  std::map<Int, std::vector<std::pair<Int, Element>>> primary;  // p -> (p^e, generator)
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] <= 1) continue;
    for (auto [p, e] : factorize(orders[i])) {
      const Int pe = ipow(p, e);
      primary[p].emplace_back(pe, coords::scale(moduli, orders[i] / pe, gens[i]));
    }
  }
  std::size_t count = 0;
  for (auto& [p, parts] : primary) {
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    count = std::max(count, parts.size());
  }
  // Slot k (0 = largest) collects the k-th largest power of every prime.
  std::vector<Int> factor(count, 1);
  std::vector<Element> gen(count, coords::zero(moduli));
  for (auto& [p, parts] : primary) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      factor[k] *= parts[k].first;
      gen[k] = coords::add(moduli, gen[k], parts[k].second);
    }
  }
  std::reverse(factor.begin(), factor.end());
  std::reverse(gen.begin(), gen.end());
  return GroupStructure{FiniteAbelianGroup(factor), gen};
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  if (factors_.size() > kMaxGroupRank) throw MalformedInput("group rank exceeds 16");
  Wide order = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw MalformedInput("invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
      throw MalformedInput("invariant factors must form a divisor chain");
    }
    order *= factors_[i];
    if (order > kMaxGroupOrder) throw MalformedInput("group order exceeds 2^32");
  }
  order_ = static_cast<Int>(order);
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(Int n) {
  if (n < 1) throw MalformedInput("cyclic group order must be positive");
  return n == 1 ? FiniteAbelianGroup{} : FiniteAbelianGroup({n});
}

FiniteAbelianGroup FiniteAbelianGroup::elementary(Int p, std::size_t rank) {
  return FiniteAbelianGroup(std::vector<Int>(rank, p));
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<Int>& orders) {
  std::map<Int, std::vector<Int>> primary;
  for (Int c : orders) {
    if (c < 1) throw MalformedInput("cyclic orders must be positive");
    for (auto [p, e] : factorize(c)) primary[p].push_back(ipow(p, e));
  }
  std::size_t count = 0;
  for (auto& [p, powers] : primary) {
    std::sort(powers.rbegin(), powers.rend());
    count = std::max(count, powers.size());
  }
  std::vector<Int> factor(count, 1);
  for (auto& [p, powers] : primary) {
    for (std::size_t k = 0; k < powers.size(); ++k) factor[k] *= powers[k];
  }
  std::reverse(factor.begin(), factor.end());
  return FiniteAbelianGroup(factor);
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) out << " x ";
    out << "Z/" << factors_[i];
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// ProductGroup

ProductGroup::ProductGroup(std::vector<FiniteAbelianGroup> factors) : factors_(std::move(factors)) {
  Wide order = 1;
  for (const auto& f : factors_) {
    offsets_.push_back(moduli_.size());
    moduli_.insert(moduli_.end(), f.invariant_factors().begin(), f.invariant_factors().end());
    order *= f.order();
    if (order > kMaxGroupOrder) throw MalformedInput("product order exceeds 2^32");
  }
  if (moduli_.size() > kMaxGroupRank) throw MalformedInput("product rank exceeds 16");
  order_ = static_cast<Int>(order);
}

ProductGroup::ProductGroup(const FiniteAbelianGroup& single)
    : ProductGroup(std::vector<FiniteAbelianGroup>{single}) {}

Element ProductGroup::component(const Element& x, std::size_t j) const {
  const auto begin = x.begin() + static_cast<std::ptrdiff_t>(offsets_.at(j));
  return Element(begin, begin + static_cast<std::ptrdiff_t>(factors_[j].rank()));
}

Element ProductGroup::join(const std::vector<Element>& parts) const {
  if (parts.size() != factors_.size()) throw MalformedInput("wrong number of components");
  Element out;
  out.reserve(moduli_.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].size() != factors_[j].rank()) throw MalformedInput("component has wrong rank");
    out.insert(out.end(), parts[j].begin(), parts[j].end());
  }
  return out;
}

ProductGroup ProductGroup::restrict_to(const std::vector<bool>& keep) const {
  std::vector<FiniteAbelianGroup> kept;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (keep.at(j)) kept.push_back(factors_[j]);
  }
  return ProductGroup(std::move(kept));
}

Element ProductGroup::restrict_element(const Element& x, const std::vector<bool>& keep) const {
  Element out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (!keep.at(j)) continue;
    const auto part = component(x, j);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// coords

namespace coords {

bool is_valid(std::span<const Int> moduli, const Element& x) {
  if (x.size() != moduli.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= moduli[i]) return false;
  }
  return true;
}

void require_valid(std::span<const Int> moduli, const Element& x, const std::string& what) {
  if (x.size() != moduli.size()) {
    throw MalformedInput(what + ": expected " + std::to_string(moduli.size()) +
                         " coordinates, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= moduli[i]) {
      throw MalformedInput(what + ": coordinate " + std::to_string(i) + " = " +
                           std::to_string(x[i]) + " outside [0, " + std::to_string(moduli[i]) +
                           ")");
    }
  }
}

Element reduce(std::span<const Int> moduli, Element x) {
  if (x.size() != moduli.size()) throw MalformedInput("dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], moduli[i]);
  return x;
}

Element zero(std::span<const Int> moduli) { return Element(moduli.size(), 0); }

bool is_zero(const Element& x) {
  return std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
}

Element add(std::span<const Int> moduli, const Element& a, const Element& b) {
  Element out(moduli.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(Wide(a[i]) + b[i], moduli[i]);
  return out;
}

Element sub(std::span<const Int> moduli, const Element& a, const Element& b) {
  Element out(moduli.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(Wide(a[i]) - b[i], moduli[i]);
  return out;
}

Element neg(std::span<const Int> moduli, const Element& a) {
  Element out(moduli.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(-Wide(a[i]), moduli[i]);
  return out;
}

Element scale(std::span<const Int> moduli, Int k, const Element& a) {
  Element out(moduli.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(Wide(k) * a[i], moduli[i]);
  return out;
}

Int element_order(std::span<const Int> moduli, const Element& x) {
  Int order = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Int o = moduli[i] / std::gcd(moduli[i], x[i]);
    order = std::lcm(order, o);
  }
  return order;
}

Int group_order(std::span<const Int> moduli) {
  Int order = 1;
  for (Int m : moduli) order *= m;
  return order;
}

Int index_of(std::span<const Int> moduli, const Element& x) {
  Int idx = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) idx = idx * moduli[i] + x[i];
  return idx;
}

Element element_at(std::span<const Int> moduli, Int index) {
  Element x(moduli.size());
  for (std::size_t i = moduli.size(); i-- > 0;) {
    x[i] = index % moduli[i];
    index /= moduli[i];
  }
  return x;
}

void for_each_element(std::span<const Int> moduli, const std::function<void(const Element&)>& fn) {
  Element x(moduli.size(), 0);
  while (true) {
    fn(x);
    std::size_t i = moduli.size();
    while (i > 0) {
      --i;
      if (++x[i] < moduli[i]) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (moduli.empty()) return;
  }
}

}  // namespace coords

// ---------------------------------------------------------------------------
// pairing

Rational pairing(std::span<const Int> moduli, const Element& chi, const Element& x) {
  if (chi.size() != moduli.size() || x.size() != moduli.size()) {
    throw MalformedInput("pairing: dimension mismatch");
  }
  Int lcm = 1;
  for (Int m : moduli) lcm = std::lcm(lcm, m);
  Wide acc = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    acc += Wide(mod(chi[i], moduli[i])) * mod(x[i], moduli[i]) % moduli[i] * (lcm / moduli[i]);
    acc %= lcm;
  }
  Int num = static_cast<Int>(acc);
  const Int g = std::gcd(num, lcm);
  return Rational{num / g, lcm / g};
}

// ---------------------------------------------------------------------------
// Subgroup

std::vector<Element> Subgroup::basis() const {
  const auto m = ambient_.moduli();
  const std::size_t r = m.size();
  std::vector<Element> out;
  for (std::size_t i = 0; i < r; ++i) {
    Element row(hermite_.begin() + static_cast<std::ptrdiff_t>(i * r),
                hermite_.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
    row = coords::reduce(m, std::move(row));
    if (!coords::is_zero(row)) out.push_back(std::move(row));
  }
  return out;
}

bool Subgroup::contains(const Element& x) const {
  const auto m = ambient_.moduli();
  if (x.size() != m.size()) return false;
  const std::size_t r = m.size();
  Element y = coords::reduce(m, x);
  for (std::size_t c = 0; c < r; ++c) {
    const Int piv = hermite_[c * r + c];
    if (y[c] % piv != 0) return false;
    const Int q = y[c] / piv;
    if (q == 0) continue;
    for (std::size_t k = c; k < r; ++k) y[k] = mod(Wide(y[k]) - Wide(q) * hermite_[c * r + k], m[k]);
  }
  return true;
}

Subgroup subgroup_from_generators(const ProductGroup& ambient, std::span<const Element> gens) {
  const auto m = ambient.moduli();
  std::vector<Element> rows;
  rows.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    coords::require_valid(m, gens[i], "generator " + std::to_string(i));
    rows.push_back(gens[i]);
  }
  Subgroup s;
  s.ambient_ = ambient;
  s.hermite_ = modular_hermite(m, std::move(rows));
  Int pivots = 1;
  for (std::size_t i = 0; i < m.size(); ++i) pivots *= s.hermite_[i * m.size() + i];
  s.order_ = ambient.order() / pivots;
  return s;
}

Subgroup trivial_subgroup(const ProductGroup& ambient) {
  return subgroup_from_generators(ambient, {});
}

Subgroup whole_group(const ProductGroup& ambient) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < ambient.rank(); ++i) {
    Element e(ambient.rank(), 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return subgroup_from_generators(ambient, gens);
}

Element hom_apply(std::span<const Int> target_moduli, const std::vector<Element>& images,
                  const Element& x) {
  Element out = coords::zero(target_moduli);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    out = coords::add(target_moduli, out, coords::scale(target_moduli, x[i], images[i]));
  }
  return out;
}

namespace {

// Generators of the kernel of the map sending source coordinate generator i
// (of order sm[i]) to images[i] in prod Z/tm. Images must be valid.
std::vector<Element> kernel_generators(std::span<const Int> sm, std::span<const Int> tm,
                                       const std::vector<Element>& images) {
  // Lattice rows (image_i | e_i) modulo (target moduli | source moduli); rows
  // whose pivot lies in the source block have zero target part.
  const std::size_t k = tm.size();
  const std::size_t r = sm.size();
  std::vector<Int> moduli(tm.begin(), tm.end());
  moduli.insert(moduli.end(), sm.begin(), sm.end());
  std::vector<Element> rows;
  for (std::size_t i = 0; i < r; ++i) {
    Element row(k + r, 0);
    std::copy(images[i].begin(), images[i].end(), row.begin());
    row[k + i] = 1;
    rows.push_back(std::move(row));
  }
  const auto h = modular_hermite(moduli, std::move(rows));
  std::vector<Element> gens;
  for (std::size_t i = k; i < k + r; ++i) {
    Element g(h.begin() + static_cast<std::ptrdiff_t>(i * (k + r) + k),
              h.begin() + static_cast<std::ptrdiff_t>((i + 1) * (k + r)));
    gens.push_back(coords::reduce(sm, std::move(g)));
  }
  return gens;
}

}  // namespace

Subgroup hom_kernel(const ProductGroup& source, const ProductGroup& target,
                    const std::vector<Element>& images) {
  const auto sm = source.moduli();
  const auto tm = target.moduli();
  if (images.size() != sm.size()) throw MalformedInput("homomorphism: one image per generator");
  for (std::size_t i = 0; i < images.size(); ++i) {
    coords::require_valid(tm, images[i], "homomorphism image " + std::to_string(i));
    if (!coords::is_zero(coords::scale(tm, sm[i], images[i]))) {
      throw MalformedInput("homomorphism: image " + std::to_string(i) +
                           " has order not dividing " + std::to_string(sm[i]));
    }
  }
  return subgroup_from_generators(source, kernel_generators(sm, tm, images));
}

Subgroup annihilator(const Subgroup& h) {
  const auto& g = h.ambient();
  const auto m = g.moduli();
  const auto basis = h.basis();
  Int lcm = 1;
  for (Int x : m) lcm = std::lcm(lcm, x);
  // chi -> (<chi, b>)_b as elements of (Z/lcm)^k.
  const std::vector<Int> target(basis.size(), lcm);
  std::vector<Element> images;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Element img;
    for (const auto& b : basis) img.push_back(mod(Wide(b[i]) * (lcm / m[i]), lcm));
    images.push_back(std::move(img));
  }
  return subgroup_from_generators(g, kernel_generators(m, target, images));
}

Subgroup project(const Subgroup& h, const std::vector<bool>& keep) {
  const auto& g = h.ambient();
  const ProductGroup image_ambient = g.restrict_to(keep);
  std::vector<Element> gens;
  for (const auto& b : h.basis()) gens.push_back(g.restrict_element(b, keep));
  return subgroup_from_generators(image_ambient, gens);
}

bool ProjectionChecks::all_surjective() const {
  return std::all_of(surjective_onto.begin(), surjective_onto.end(), [](bool b) { return b; });
}

bool ProjectionChecks::all_pairwise_injective() const {
  for (std::size_t i = 0; i < injective_omitting.size(); ++i) {
    for (std::size_t j = i + 1; j < injective_omitting.size(); ++j) {
      if (!injective_omitting[i][j]) return false;
    }
  }
  return true;
}

ProjectionChecks projection_checks(const Subgroup& h) {
  const std::size_t n = h.ambient().factor_count();
  ProjectionChecks out;
  out.surjective_onto.resize(n);
  out.injective_omitting.assign(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<bool> keep(n, false);
    keep[j] = true;
    out.surjective_onto[j] = project(h, keep).is_whole();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<bool> keep(n, true);
      keep[i] = keep[j] = false;
      const bool inj = project(h, keep).order() == h.order();
      out.injective_omitting[i][j] = out.injective_omitting[j][i] = inj;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure

Element GroupStructure::embed(std::span<const Int> ambient_moduli, const Element& c) const {
  return hom_apply(ambient_moduli, generators, c);
}

GroupStructure decompose(const Subgroup& s) {
  const auto m = s.ambient().moduli();
  const auto gens = s.basis();
  const std::size_t k = gens.size();
  if (k == 0) return GroupStructure{};
  Int n = 1;
  for (const auto& x : gens) n = std::lcm(n, coords::element_order(m, x));
  // Relation lattice of the generators, containing n Z^k.
  const std::vector<Int> source(k, n);
  const auto rel_gens = kernel_generators(source, m, gens);
  std::vector<Int> a = modular_hermite(source, rel_gens);  // k x k, rows span the relations mod n

  // Diagonalize modulo n with unimodular row and column operations, keeping
  // vinv = V^{-1} so that coordinate e_i in the new basis is row i of vinv.
  std::vector<Int> vinv(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) vinv[i * k + i] = 1;
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * k + j]; };
  for (std::size_t t = 0; t < k; ++t) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      // Clear row t with column operations.
      for (std::size_t j = t + 1; j < k; ++j) {
        if (at(t, j) == 0) continue;
        Int g, x, y;
        xgcd(at(t, t), at(t, j), g, x, y);
        const Int p = at(t, t) / g, q = at(t, j) / g;
        for (std::size_t i = 0; i < k; ++i) {
          const Int ct = at(i, t), cj = at(i, j);
          at(i, t) = mod(Wide(x) * ct + Wide(y) * cj, n);
          at(i, j) = mod(Wide(p) * cj - Wide(q) * ct, n);
        }
        for (std::size_t c = 0; c < k; ++c) {
          const Int rt = vinv[t * k + c], rj = vinv[j * k + c];
          vinv[t * k + c] = mod(Wide(p) * rt + Wide(q) * rj, n);
          vinv[j * k + c] = mod(Wide(-y) * rt + Wide(x) * rj, n);
        }
      }
      // Clear column t with row operations.
      for (std::size_t i = t + 1; i < k; ++i) {
        if (at(i, t) == 0) continue;
        Int g, x, y;
        xgcd(at(t, t), at(i, t), g, x, y);
        const Int p = at(t, t) / g, q = at(i, t) / g;
        for (std::size_t c = 0; c < k; ++c) {
          const Int rt = at(t, c), ri = at(i, c);
          at(t, c) = mod(Wide(x) * rt + Wide(y) * ri, n);
          at(i, c) = mod(Wide(p) * ri - Wide(q) * rt, n);
        }
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (at(t, j) != 0) dirty = true;
      }
    }
  }
  std::vector<Int> orders(k);
  std::vector<Element> cyclic_gens(k);
  for (std::size_t i = 0; i < k; ++i) {
    orders[i] = std::gcd(at(i, i), n);
    Element coeff(vinv.begin() + static_cast<std::ptrdiff_t>(i * k),
                  vinv.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    cyclic_gens[i] = hom_apply(m, gens, coeff);
  }
  return normalize_cyclic(m, orders, cyclic_gens);
}

std::vector<Element> elements(const Subgroup& s) {
  const auto structure = decompose(s);
  const auto m = s.ambient().moduli();
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(s.order()));
  coords::for_each_element(structure.group.moduli(), [&](const Element& c) {
    out.push_back(structure.embed(m, c));
  });
  return out;
}

FiniteAbelianGroup quotient_structure(const Subgroup& h) { return decompose(annihilator(h)).group; }

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Subgroup> enumerate_subgroups(const ProductGroup& g,
                                          const std::function<bool(const Subgroup&)>& predicate,
                                          Int order_bound) {
  if (g.order() > order_bound) {
    throw ResourceExceeded("subgroup enumeration: group order " + std::to_string(g.order()) +
                           " exceeds bound " + std::to_string(order_bound));
  }
  const auto m = g.moduli();
  // Distinct cyclic subgroups act as join generators.
  std::map<std::vector<Int>, Element> cyclic;
  coords::for_each_element(m, [&](const Element& x) {
    if (coords::is_zero(x)) return;
    const Element gen[] = {x};
    auto c = subgroup_from_generators(g, gen);
    cyclic.emplace(c.hermite(), x);
  });
  std::map<std::vector<Int>, Subgroup> seen;
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  seen.emplace(frontier.front().hermite(), frontier.front());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& k : frontier) {
      auto base = k.basis();
      for (const auto& [key, x] : cyclic) {
        if (k.contains(x)) continue;
        base.push_back(x);
        auto joined = subgroup_from_generators(g, base);
        base.pop_back();
        if (seen.emplace(joined.hermite(), joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [key, s] : seen) {
    if (!predicate || predicate(s)) out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

std::vector<Automorphism> automorphisms(const FiniteAbelianGroup& g, Int candidate_bound) {
  const auto m = g.moduli();
  const std::size_t r = m.size();
  std::vector<std::vector<Element>> candidates(r);
  Wide total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    coords::for_each_element(m, [&](const Element& x) {
      if (coords::element_order(m, x) == m[i]) candidates[i].push_back(x);
    });
    total *= static_cast<Int>(candidates[i].size());
    if (total > candidate_bound) {
      throw ResourceExceeded("automorphism enumeration of " + g.to_string() + " exceeds bound");
    }
  }
  std::vector<Automorphism> out;
  Automorphism current(r);
  const ProductGroup pg(g);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      if (subgroup_from_generators(pg, current).is_whole()) out.push_back(current);
      return;
    }
    for (const auto& c : candidates[i]) {
      current[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace abcover
