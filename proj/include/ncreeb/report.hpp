#pragma once

#include <string>

#include "json.hpp"
#include "ncreeb/algebraic.hpp"
#include "ncreeb/planarity.hpp"
#include "ncreeb/reeb.hpp"
#include "ncreeb/theorems.hpp"

namespace ncreeb {

using Json = nlohmann::json;

// Structured reports. Every object carries "kind" and "version" keys; keys
// are sorted and rationals are num/den strings, so equal inputs give equal
// bytes.

Json graph_stats(const LeveledGraph& g);
Json to_json(const ConditionReport& r);
Json to_json(const TransversalityReport& r);
Json to_json(const PlanarityResult& r);
Json to_json(const LevelPlanarityResult& r);
Json to_json(const CertificateReport& r);
Json to_json(const FiberType& t);
Json to_json(const FamilyResult& f);
Json to_json(const IsoResult& r);

enum class ReportFormat { Text, Structured };

/// Structured: indented JSON. Text: one "key: value" line per top-level key,
/// nested values in compact JSON.
std::string render(const Json& j, ReportFormat f);

}  // namespace ncreeb
