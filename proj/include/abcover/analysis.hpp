#pragma once

// Full pipeline over one configuration.

#include <optional>
#include <vector>

#include "abcover/cover.hpp"
#include "abcover/loci.hpp"
#include "abcover/sheaf.hpp"
#include "abcover/theorems.hpp"

namespace abcover {

struct AnalysisReport {
  CoverConfiguration config;
  ValidationReport validation;
  Gate gate = Gate::Chi0;
  // Everything below is filled only when validation passes.
  Int dim = 0;
  Int deg_albanese = 0;
  std::vector<Summand> omega_summands;
  std::vector<Int> h_omega;
  Int chi_omega = 0;
  RctVerdict rct;
  std::optional<HodgeDiamond> diamond;
  std::optional<BettiEuler> betti;
  std::vector<std::vector<LocusComponent>> loci;  // V^0 .. V^dim
  std::vector<SfEntry> s_f;
  bool general_type_proxy = false;
  VerdictSheet verdicts;

  bool valid() const { return validation.ok(); }
  const std::vector<std::string>& alerts() const { return verdicts.alerts; }
};

struct AnalyzeOptions {
  Gate gate = Gate::Chi0;
  /// Skip the p-form diamond even for curve product quotients.
  bool omega_only = false;
  SignConvention sign = SignConvention::Inverse;
};

AnalysisReport analyze(const CoverConfiguration& config, const AnalyzeOptions& options = {});

}  // namespace abcover
