#pragma once

// Builders for the named example constructions, each with expected
// invariants to compare a fresh analysis against.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "abcover/analysis.hpp"
#include "abcover/serialize.hpp"

namespace abcover {

struct GalleryEntry {
  std::string name;
  std::string summary;
  Json default_params;
  std::function<CoverConfiguration(const Json& params)> build;
  /// Expected values of observed(), restricted to the fields that matter
  /// for this entry and these parameters.
  std::function<Json(const Json& params)> golden;
};

const std::vector<GalleryEntry>& gallery();
/// Throws ParameterError for unknown names.
const GalleryEntry& gallery_entry(std::string_view name);

/// Merges `params` over the entry's defaults and builds the configuration;
/// throws ParameterError on out-of-range parameters.
CoverConfiguration build(std::string_view name, const Json& params = Json::object());

/// Flat summary of a report JSON used by golden comparisons.
Json observed(const Json& report);

struct GoldenMismatch {
  std::string field;
  Json expected;
  Json got;
};

struct GoldenResult {
  std::string name;
  Json params;
  bool pass = false;
  std::vector<GoldenMismatch> mismatches;
};

GoldenResult golden_check(std::string_view name, const Json& params = Json::object(),
                          const AnalyzeOptions& options = {});

/// Parameterizations exercised by the self-test: every default plus the
/// extra primes and variants.
std::vector<std::pair<std::string, Json>> golden_cases();

}  // namespace abcover
