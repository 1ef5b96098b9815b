#pragma once

// Gallery goldens plus exhaustive sweeps over the small configuration space,
// shared by the selftest subcommand and the acceptance binary.

#include <chrono>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abcover/search.hpp"

namespace abcover {

/// Curve product quotients with at most three factors drawn from Z/2, Z/3
/// and (Z/2)^2, every nontrivial character of degree 0..2, torsion groups
/// (Z/2)^2 for the 2-groups and (Z/3)^2 for Z/3, all subgroups. With
/// `four_z2` the four-factor Z/2 space is appended.
std::vector<SearchSpec> small_space_specs(bool four_z2, Gate gate = Gate::Chi0);

struct SweepTotals {
  Int specs_run = 0;
  Int specs_skipped = 0;
  Int examined = 0;
  std::map<std::string, Int> flag_counts;
  /// Configurations matching the spec predicates, across all specs.
  std::vector<Certificate> matches;

  bool complete() const { return specs_skipped == 0; }
  /// Examined configurations where `name` is false.
  Int count_false(const std::string& name) const;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Runs each spec with `predicates` substituted; specs not started before
/// the deadline are skipped.
SweepTotals sweep(const std::vector<SearchSpec>& specs, const std::vector<std::string>& predicates,
                  unsigned jobs = 1, const Deadline& deadline = std::nullopt);

enum class CheckStatus { Pass, Fail, Skipped };
const char* status_name(CheckStatus s);

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
};

struct SelftestOptions {
  std::optional<double> time_budget_seconds;
  /// Runs the goldens under the flipped sign convention (negative control).
  bool flip_sign_convention = false;
  unsigned jobs = 1;
};

struct SelftestSummary {
  std::vector<CheckOutcome> checks;
  int count(CheckStatus s) const;
  bool all_pass() const { return count(CheckStatus::Pass) == static_cast<int>(checks.size()); }
};

/// Streams one line per check to `log` when given.
SelftestSummary run_selftest(const SelftestOptions& options, std::ostream* log = nullptr);

}  // namespace abcover
