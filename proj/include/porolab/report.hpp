#pragma once

#include "porolab/csp.hpp"
#include "porolab/set.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>

namespace porolab {

inline constexpr const char* kToolName = "porolab";
inline constexpr const char* kToolVersion = "1.0.0";

/// Full analysis report for one set: porosity, gaps/universality, csp
/// certificate, constants. Deterministic key order, exact rationals as
/// "p/q" strings; byte-identical for identical (spec, depth, version).
nlohmann::ordered_json analyze_set(const SetSpec& spec, std::size_t depth);

std::string report_to_text(const nlohmann::ordered_json& report);

nlohmann::ordered_json verdict_json(const TailVerdict& v);

/// The published report schema (the same text ships as report.schema.json).
const std::string& report_schema_text();
nlohmann::json report_schema();

/// Minimal JSON-Schema checker covering the subset the published schema uses:
/// type, required, properties, additionalProperties, items, enum, pattern.
bool validate_schema(const nlohmann::json& doc, const nlohmann::json& schema, std::string* why);

/// Convenience: validate a report against the published schema.
bool validate_report(const nlohmann::json& report, std::string* why);

}  // namespace porolab
