#pragma once

// Cohomological support loci V^i of the pushforward of omega. Every
// component is a translate of a coordinate subtorus, so it is stored as one
// entry per factor: either the whole dual factor or a single torsion point.

#include <optional>
#include <vector>

#include "abcover/cover.hpp"

namespace abcover {

struct LocusEntry {
  std::optional<Element> point;  // nullopt = whole dual factor

  bool full() const { return !point.has_value(); }
  friend bool operator==(const LocusEntry&, const LocusEntry&) = default;
  friend auto operator<=>(const LocusEntry& a, const LocusEntry& b) {
    // Full sorts first.
    if (a.full() != b.full()) return a.full() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.full()) return std::strong_ordering::equal;
    return *a.point <=> *b.point;
  }
};

struct LocusComponent {
  std::vector<LocusEntry> entries;
  Int codim = 0;
  /// Smallest summand character producing this component. Not part of the
  /// component's identity.
  Element witness;

  friend bool operator==(const LocusComponent& a, const LocusComponent& b) {
    return a.codim == b.codim && a.entries == b.entries;
  }
  friend auto operator<=>(const LocusComponent& a, const LocusComponent& b) {
    if (auto c = a.codim <=> b.codim; c != 0) return c;
    return a.entries <=> b.entries;
  }
};

/// a is contained in b.
bool contained_in(const LocusComponent& a, const LocusComponent& b);

/// Sign attached to the torsion tag of a degree-zero slot. The standard
/// convention places the component at -t (the twist trivializing the slot);
/// the flipped one exists only as a negative control for self-tests.
enum class SignConvention { Inverse, Flipped };

/// Maximal components of V^i, sorted.
std::vector<LocusComponent> v_locus(const CoverConfiguration& config, int i,
                                    SignConvention sign = SignConvention::Inverse);

struct SfEntry {
  LocusComponent component;
  int i = 0;
  friend bool operator==(const SfEntry&, const SfEntry&) = default;
};

/// Components T of V^i (i >= 1) with codim T = i.
std::vector<SfEntry> s_f(const CoverConfiguration& config);

/// Sufficient criterion for general type: each factor is whole in some
/// component of V^0.
bool general_type_proxy(const CoverConfiguration& config);

}  // namespace abcover
