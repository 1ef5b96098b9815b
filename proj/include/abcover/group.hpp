#pragma once

// Exact arithmetic of finite abelian groups Z/m_1 x ... x Z/m_r, their duals,
// subgroups and quotients.
//
// Elements and characters share one representation: an integer tuple with
// coordinate i reduced modulo m_i. The dual of prod Z/m_i is identified with
// prod Z/m_i through the pairing <chi, x> = sum chi_i x_i / m_i (mod 1), so a
// Subgroup value may live in a group or in its dual; the caller tracks which.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace abcover {

using Int = std::int64_t;
using Element = std::vector<Int>;

inline constexpr Int kMaxGroupOrder = Int{1} << 32;
inline constexpr std::size_t kMaxGroupRank = 16;

/// Group in invariant-factor form d_1 | d_2 | ... | d_r, every d_i >= 2.
/// The empty list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Int> invariant_factors);

  static FiniteAbelianGroup cyclic(Int n);
  static FiniteAbelianGroup elementary(Int p, std::size_t rank);
  /// Normalizes any direct sum of cyclic groups Z/c_1 + ... (c_i >= 1)
  /// into invariant-factor form.
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<Int>& orders);

  const std::vector<Int>& invariant_factors() const noexcept { return factors_; }
  std::span<const Int> moduli() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  Int order() const noexcept { return order_; }
  Int exponent() const noexcept { return factors_.empty() ? 1 : factors_.back(); }
  bool is_trivial() const noexcept { return factors_.empty(); }

  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }
  friend auto operator<=>(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ <=> b.factors_;
  }

 private:
  std::vector<Int> factors_;
  Int order_ = 1;
};

/// Explicit product G_1 x ... x G_m. Coordinates are the concatenation of the
/// factors' coordinates; factor boundaries are retained so projections are
/// meaningful.
class ProductGroup {
 public:
  ProductGroup() = default;
  explicit ProductGroup(std::vector<FiniteAbelianGroup> factors);
  ProductGroup(const FiniteAbelianGroup& single);  // NOLINT: one-factor product

  std::span<const Int> moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  Int order() const noexcept { return order_; }

  std::size_t factor_count() const noexcept { return factors_.size(); }
  const std::vector<FiniteAbelianGroup>& factors() const noexcept { return factors_; }
  const FiniteAbelianGroup& factor(std::size_t j) const { return factors_.at(j); }
  std::size_t offset(std::size_t j) const { return offsets_.at(j); }

  /// Coordinates of factor j inside x.
  Element component(const Element& x, std::size_t j) const;
  /// Reassembles an element from per-factor components.
  Element join(const std::vector<Element>& parts) const;
  /// Sub-product keeping the factors whose flag is set.
  ProductGroup restrict_to(const std::vector<bool>& keep) const;
  Element restrict_element(const Element& x, const std::vector<bool>& keep) const;

  friend bool operator==(const ProductGroup& a, const ProductGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<FiniteAbelianGroup> factors_;
  std::vector<std::size_t> offsets_;
  std::vector<Int> moduli_;
  Int order_ = 1;
};

/// Coordinate-level helpers shared by groups and products.
namespace coords {

bool is_valid(std::span<const Int> moduli, const Element& x);
/// Throws MalformedInput unless x is a reduced element of the group.
void require_valid(std::span<const Int> moduli, const Element& x, const std::string& what);
Element reduce(std::span<const Int> moduli, Element x);
Element zero(std::span<const Int> moduli);
bool is_zero(const Element& x);
Element add(std::span<const Int> moduli, const Element& a, const Element& b);
Element sub(std::span<const Int> moduli, const Element& a, const Element& b);
Element neg(std::span<const Int> moduli, const Element& a);
Element scale(std::span<const Int> moduli, Int k, const Element& a);
Int element_order(std::span<const Int> moduli, const Element& x);
Int group_order(std::span<const Int> moduli);

/// Mixed-radix index; index order equals lexicographic order of tuples.
Int index_of(std::span<const Int> moduli, const Element& x);
Element element_at(std::span<const Int> moduli, Int index);
void for_each_element(std::span<const Int> moduli, const std::function<void(const Element&)>& fn);

}  // namespace coords

/// Exact value of the pairing, a rational in [0, 1).
struct Rational {
  Int num = 0;
  Int den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational pairing(std::span<const Int> moduli, const Element& chi, const Element& x);

/// Subgroup in canonical form: the upper-triangular Hermite basis of the
/// lattice spanned by generator lifts and m_i e_i. Two values over the same
/// ambient compare equal iff they contain the same elements.
class Subgroup {
 public:
  Subgroup() = default;

  const ProductGroup& ambient() const noexcept { return ambient_; }
  /// Canonical r x r matrix, row-major; pivots h_ii divide m_i.
  const std::vector<Int>& hermite() const noexcept { return hermite_; }
  /// Canonical generators (rows of the Hermite matrix that are nonzero mod m).
  std::vector<Element> basis() const;
  Int order() const noexcept { return order_; }
  Int index() const noexcept { return ambient_.order() / order_; }
  bool contains(const Element& x) const;
  bool is_trivial() const noexcept { return order_ == 1; }
  bool is_whole() const noexcept { return order_ == ambient_.order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.hermite_ == b.hermite_;
  }
  /// Lexicographic on the canonical matrix (ambients assumed equal).
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) {
    return a.hermite_ <=> b.hermite_;
  }

 private:
  friend Subgroup subgroup_from_generators(const ProductGroup&, std::span<const Element>);
  ProductGroup ambient_;
  std::vector<Int> hermite_;
  Int order_ = 1;
};

Subgroup subgroup_from_generators(const ProductGroup& ambient, std::span<const Element> gens);
Subgroup trivial_subgroup(const ProductGroup& ambient);
Subgroup whole_group(const ProductGroup& ambient);

/// Characters trivial on H, as a subgroup of the dual (same coordinates).
Subgroup annihilator(const Subgroup& h);

/// Kernel of the homomorphism sending the i-th coordinate generator of
/// `source` to images[i] in `target`. Throws MalformedInput if the images do
/// not define a homomorphism.
Subgroup hom_kernel(const ProductGroup& source, const ProductGroup& target,
                    const std::vector<Element>& images);
Element hom_apply(std::span<const Int> target_moduli, const std::vector<Element>& images,
                  const Element& x);

/// Image of H under the projection onto the factors flagged in `keep`.
Subgroup project(const Subgroup& h, const std::vector<bool>& keep);

struct ProjectionChecks {
  std::vector<bool> surjective_onto;
  /// [i][j], i != j: projection omitting factors i and j is injective.
  /// [i][i]: projection omitting factor i alone is injective.
  std::vector<std::vector<bool>> injective_omitting;

  bool all_surjective() const;
  bool all_pairwise_injective() const;
};

ProjectionChecks projection_checks(const Subgroup& h);

/// Invariant-factor decomposition of a subgroup with explicit generators:
/// generators[i] has order invariant_factors[i] and the subgroup is their
/// internal direct sum.
struct GroupStructure {
  FiniteAbelianGroup group;
  std::vector<Element> generators;

  /// Element sum c_i * generators[i] for c in `group` coordinates.
  Element embed(std::span<const Int> ambient_moduli, const Element& c) const;
};

GroupStructure decompose(const Subgroup& s);
/// Every element of s, in the order of its decomposition coordinates.
std::vector<Element> elements(const Subgroup& s);
/// Structure of ambient / H, computed as the structure of its dual H^perp.
FiniteAbelianGroup quotient_structure(const Subgroup& h);

/// All subgroups satisfying `predicate`, each once, sorted by canonical form.
inline constexpr Int kDefaultEnumerationBound = 4096;
std::vector<Subgroup> enumerate_subgroups(
    const ProductGroup& g, const std::function<bool(const Subgroup&)>& predicate = {},
    Int order_bound = kDefaultEnumerationBound);

/// Automorphisms of g as images of its coordinate generators.
using Automorphism = std::vector<Element>;
std::vector<Automorphism> automorphisms(const FiniteAbelianGroup& g, Int candidate_bound = 1 << 20);

}  // namespace abcover
