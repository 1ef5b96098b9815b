#pragma once

// Class-level building data of abelian covers over products of abelian
// varieties, and the two configuration kinds the analysis accepts.

#include <string>
#include <variant>
#include <vector>

#include "abcover/group.hpp"

namespace abcover {

/// Formal line-bundle class on one base factor. `degree` is the Euler
/// characteristic of the class; `torsion` its tag in the factor's declared
/// torsion group. Cohomology never looks at the tag when degree != 0.
struct BundleClass {
  Int degree = 0;
  Element torsion;

  bool is_trivial() const { return degree == 0 && coords::is_zero(torsion); }
  bool is_torsion() const { return degree == 0 && !coords::is_zero(torsion); }

  friend bool operator==(const BundleClass&, const BundleClass&) = default;
  friend auto operator<=>(const BundleClass&, const BundleClass&) = default;
};

BundleClass trivial_class(const FiniteAbelianGroup& torsion_group);
/// Inverse class: negated degree and torsion.
BundleClass inverse(const BundleClass& c, const FiniteAbelianGroup& torsion_group);

struct BaseFactor {
  Int base_dim = 1;
  Int simple_factors = 1;
  FiniteAbelianGroup torsion_group;

  friend bool operator==(const BaseFactor&, const BaseFactor&) = default;
};

/// One abelian Galois cover of one base factor. classes[k] is the class of
/// the character with mixed-radix index k in `group` coordinates; entry 0
/// (trivial character) is always the trivial class.
struct FactorDatum {
  BaseFactor base;
  FiniteAbelianGroup group;
  std::vector<BundleClass> classes;

  const BundleClass& at(const Element& chi) const;
  BundleClass& at(const Element& chi);

  /// Datum with every class trivial, ready to be filled in.
  static FactorDatum blank(BaseFactor base, FiniteAbelianGroup group);
  friend bool operator==(const FactorDatum&, const FactorDatum&) = default;
};

/// (C_1 x ... x C_n) / H with every C_j a curve cover of an elliptic curve.
struct ProductQuotient {
  std::vector<FactorDatum> factors;
  Subgroup subgroup;

  ProductGroup ambient() const;
  friend bool operator==(const ProductQuotient&, const ProductQuotient&) = default;
};

/// Cover of a product base with group Q given directly by class tuples;
/// classes[k][j] is the class on factor j of the Q-character with index k.
struct DirectBoxCover {
  std::vector<BaseFactor> factors;
  FiniteAbelianGroup group;
  std::vector<std::vector<BundleClass>> classes;

  const std::vector<BundleClass>& at(const Element& tau) const;
  static DirectBoxCover blank(std::vector<BaseFactor> factors, FiniteAbelianGroup group);
  friend bool operator==(const DirectBoxCover&, const DirectBoxCover&) = default;
};

using CoverConfiguration = std::variant<ProductQuotient, DirectBoxCover>;

std::vector<BaseFactor> bases(const CoverConfiguration& config);
std::vector<Int> base_dims(const CoverConfiguration& config);
Int total_dim(const CoverConfiguration& config);

struct Violation {
  std::string constraint;  // short machine-stable identifier
  std::string location;    // factor / character the violation refers to
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const CoverConfiguration& config);
ValidationReport validate_factor(const FactorDatum& f, std::size_t index = 0);
/// Throws ValidationError listing the first violation unless `config` is valid.
void require_valid(const CoverConfiguration& config);

/// Genus of a curve factor: 1 + sum of the degrees of nontrivial characters.
Int factor_genus(const FactorDatum& f);

/// Same cover presented with Q = (prod G_j)/H; Q-characters are coordinates
/// of decompose(H^perp), so classes are read off the components of psi.
DirectBoxCover to_box_cover(const ProductQuotient& pq);
/// The H^perp element represented by a Q-character of to_box_cover(pq).
Element box_character_to_product(const ProductQuotient& pq, const Element& tau);

/// Adds t(tau) to every slot's torsion tag. `images[i]` is the value of t on
/// the i-th coordinate generator of Q, given as per-factor torsion elements.
DirectBoxCover twist(const DirectBoxCover& box, const std::vector<std::vector<Element>>& images);

struct PullbackFactor {
  Int multiplier = 1;
  FiniteAbelianGroup target;
  /// Images of the coordinate generators of the old torsion group.
  std::vector<Element> images;
};

struct PullbackResult {
  DirectBoxCover cover;
  bool disconnected = false;
};

PullbackResult etale_pullback(const DirectBoxCover& box, const std::vector<PullbackFactor>& maps);

}  // namespace abcover
