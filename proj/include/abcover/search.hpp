#pragma once

// Bounded enumeration of product-quotient configurations with predicate
// filtering, symmetry reduction and deterministic parallel execution.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abcover/analysis.hpp"
#include "abcover/serialize.hpp"

namespace abcover {

inline constexpr std::string_view kCertificateSchema = "abcover-certs/1";

struct FactorTemplate {
  FiniteAbelianGroup group;
  FiniteAbelianGroup torsion_group;
  /// Degrees tried for every nontrivial character; 0 means a torsion class.
  Int min_degree = 0;
  Int max_degree = 1;
  Int base_dim = 1;
  friend bool operator==(const FactorTemplate&, const FactorTemplate&) = default;
};

/// off: every configuration. torsion: one per orbit of the torsion-group
/// automorphisms. full: additionally one per orbit of the automorphisms of
/// each G_j and of permutations of identical factors.
enum class SearchSymmetry { Off, Torsion, Full };

struct SearchSpec {
  std::vector<FactorTemplate> factors;
  bool require_surjective = false;
  bool require_pairwise_injective = false;
  /// Predicate names, each optionally prefixed with '!'; all must hold.
  std::vector<std::string> predicates;
  std::optional<Int> limit;
  Int max_space = 50'000'000;
  SearchSymmetry symmetry = SearchSymmetry::Off;
  Gate gate = Gate::Chi0;
};

/// Throws MalformedInput with a JSON pointer on schema errors.
SearchSpec search_spec_from_json(const Json& j);
Json to_json(const SearchSpec& spec);
const char* symmetry_name(SearchSymmetry s);

struct Certificate {
  Int index = 0;  // position in the enumeration order
  CoverConfiguration config;
  std::string digest;
  std::map<std::string, bool> flags;
};

Json to_json(const Certificate& c);

struct SearchResult {
  std::string spec_hash;
  SearchSymmetry symmetry = SearchSymmetry::Off;
  Int space_size = 0;  // estimate checked against max_space
  Int examined = 0;    // configurations analyzed
  Int matched = 0;     // before the output limit
  std::map<std::string, Int> flag_counts;
  std::vector<Certificate> certificates;

  Json header() const;
};

/// Throws ResourceExceeded when the estimate exceeds spec.max_space.
SearchResult run_search(const SearchSpec& spec, unsigned jobs = 1);
void write_jsonl(const SearchResult& result, std::ostream& out);

/// Subgroup count times the per-factor data counts under the spec's
/// torsion normalization.
Int estimate_space(const SearchSpec& spec);

/// Names understood in SearchSpec::predicates.
const std::vector<std::string>& predicate_names();
std::map<std::string, bool> predicate_flags(const AnalysisReport& report);

/// Digest of the JSON report of analyze(config) under `gate`.
std::string report_digest(const CoverConfiguration& config, Gate gate);

/// Orbit representative under automorphisms of each group and torsion
/// group, and optionally permutations of interchangeable factors. Equal
/// outputs iff equivalent inputs.
CoverConfiguration canonical_form(const CoverConfiguration& config, bool permutations = true);
std::string canonical_encoding(const CoverConfiguration& config, bool permutations = true);

}  // namespace abcover
