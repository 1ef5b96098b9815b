#pragma once

// Character-wise pushforwards of canonical sheaves and reflexive p-forms,
// Kunneth cohomology and the Hodge-theoretic invariants built from them.

#include <vector>

#include "abcover/cover.hpp"

namespace abcover {

/// One direct summand: a box product of classes, tagged by its character
/// (H^perp element for product quotients, Q-character for box covers) and,
/// for p-forms, by the sorted factor subset J.
struct Summand {
  std::vector<BundleClass> classes;
  Element character;
  std::vector<std::size_t> subset;

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Summands of the pushforward of omega, in increasing character order.
std::vector<Summand> omega_pushforward(const CoverConfiguration& config);
/// Summands of the pushforward of reflexive p-forms of a curve product
/// quotient, ordered by (J, character).
std::vector<Summand> omega_p_pushforward(const ProductQuotient& pq, int p);

/// (h^0, ..., h^N) of a box product over bases of the given dimensions.
std::vector<Int> cohomology_vector(const std::vector<BundleClass>& classes, const std::vector<Int>& dims);

std::vector<Int> h_omega(const CoverConfiguration& config);
/// Sum over summands of the product of degrees.
Int euler_char_omega(const CoverConfiguration& config);

struct HodgeDiamond {
  int n = 0;
  std::vector<std::vector<Int>> h;  // h[p][q]

  friend bool operator==(const HodgeDiamond&, const HodgeDiamond&) = default;
};

HodgeDiamond torus_diamond(int n);
HodgeDiamond hodge_diamond(const ProductQuotient& pq);

enum class RctLevel { FullDiamond, OmegaLevel };

struct RctVerdict {
  bool certified = false;
  RctLevel level = RctLevel::OmegaLevel;
};

/// Every nontrivial omega summand has a degree-zero nontrivial-torsion slot.
bool torsion_factor_criterion(const CoverConfiguration& config);
RctVerdict is_rct(const CoverConfiguration& config);

struct BettiEuler {
  std::vector<Int> betti;
  Int chi_top = 0;
};

BettiEuler betti_and_euler(const HodgeDiamond& d);

Int binomial(Int n, Int k);

}  // namespace abcover
