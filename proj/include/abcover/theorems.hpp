#pragma once

// Albanese-degree invariants and the verdicts derived from them.

#include <optional>
#include <string>
#include <vector>

#include "abcover/cover.hpp"
#include "abcover/sheaf.hpp"

namespace abcover {

/// Which hypothesis opens the degree theorems: an RCT certificate or
/// chi(omega) = 0, each together with the general-type proxy.
enum class Gate { Rct, Chi0 };

Int degree_albanese(const CoverConfiguration& config);
/// prod_{j != k} |G_j| / |image of H omitting factor k|.
Int factor_degree(const ProductQuotient& pq, std::size_t k);
std::optional<Int> smallest_prime(Int n);

struct TheoremC {
  bool applicable = false;
  std::optional<Int> witness_prime;
  bool holds = false;
};

struct TheoremD {
  bool applicable = false;
  bool vacuous = false;  // degree 1: no prime divisor
  Int m = 0;
  std::optional<Int> p;
  bool holds = false;
};

struct Extremal {
  bool applicable = false;
  FiniteAbelianGroup quotient_group;
  bool holds = false;
};

struct DegaCheck {
  bool applicable = false;  // needs a product quotient with surjective projections
  Int lhs = 0;              // deg - 1
  Int rhs = 0;              // sum_k (deg_k - 1)
  bool holds = false;
  bool routes_agree = true;
  /// Some projection omitting one factor fails to be injective, so the
  /// closed formula prod_{j != k} g_j / g and the image formula may differ.
  bool injectivity_gap = false;
};

/// Unknown outside the prime-order regime, and whenever a non-free element
/// fixes a divisor (the quotient may then still be smooth).
enum class Smoothness { Smooth, Singular, Unknown };

struct StructureChecks {
  std::vector<bool> surjective;
  std::vector<std::vector<bool>> pairwise_injective;
};

struct VerdictSheet {
  Int deg_albanese = 1;
  std::vector<Int> factor_degrees;
  std::optional<Int> smallest_prime;
  TheoremC theorem_c;
  TheoremD theorem_d;
  Extremal extremal;
  DegaCheck dega;
  std::optional<StructureChecks> structure;
  Smoothness smooth = Smoothness::Unknown;
  std::vector<std::string> alerts;
};

/// Invariants computed upstream that the verdicts depend on.
struct Facts {
  Int chi_omega = 0;
  RctVerdict rct;
  bool general_type_proxy = false;
  std::optional<BettiEuler> betti;
};

bool gate_open(Gate gate, const Facts& facts);

TheoremC theorem_c_verdict(Int degree, Gate gate, const Facts& facts);
TheoremD theorem_d_verdict(const CoverConfiguration& config, Int degree, Gate gate, const Facts& facts);
Extremal extremal_verdict(const CoverConfiguration& config, Int degree, Gate gate, const Facts& facts);
DegaCheck dega_inequality_check(const ProductQuotient& pq);
Smoothness smoothness(const ProductQuotient& pq);
std::vector<std::string> consistency_guard(const VerdictSheet& sheet, const Facts& facts);

VerdictSheet verdicts(const CoverConfiguration& config, Gate gate, const Facts& facts);

}  // namespace abcover
