#pragma once

// JSON forms of configurations and reports, plus the text rendering of a
// report (computed from its JSON alone).

#include <string>
#include <string_view>

#include <json.hpp>

#include "abcover/analysis.hpp"

namespace abcover {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kConfigSchema = "abcover-config/1";
inline constexpr std::string_view kReportSchema = "abcover-report/1";

/// Comma-joined coordinates, the key format of class maps.
std::string character_key(const Element& chi);

Json group_to_json(const FiniteAbelianGroup& g);
Json to_json(const BundleClass& c);
Json to_json(const CoverConfiguration& config);
/// Throws MalformedInput carrying a JSON pointer on schema violations. The
/// result is structurally sound but not validated.
CoverConfiguration config_from_json(const Json& j);

Json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const Json& j);

std::string render_text(const Json& report);

const char* gate_name(Gate gate);
Gate parse_gate(std::string_view name);
const char* smoothness_name(Smoothness s);

}  // namespace abcover
