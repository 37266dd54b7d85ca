#pragma once

#include <string>

#include <json.hpp>

#include "conc/concentration.hpp"
#include "conc/inequalities.hpp"
#include "conc/randvar.hpp"

namespace conc {

// Input documents. Coordinates and atom indices are 1-based on the wire and
// converted at this boundary.
SpacePtr parse_space(const nlohmann::json& doc);
RandomVariable parse_rv(const nlohmann::json& doc, const SpacePtr& space);
ProcessFamily parse_family(const nlohmann::json& doc, const SpacePtr& space);

nlohmann::json load_json_file(const std::string& path);  // ParseError / IoError

// Report serialisation.
nlohmann::json to_json(const SearchParams& params);
nlohmann::json to_json(const SubsetResult& result);
nlohmann::json to_json(const ConcentrationReport& report);
nlohmann::json to_json(const Lemma8Report& report);
nlohmann::json to_json(const Theorem9Report& report);
nlohmann::json to_json(const IneqReport& report);

// Canonical text form: objects with sorted keys, floats printed with 17
// significant digits, two-space indent, trailing newline. Byte-stable across
// runs, so reports can be compared with cmp/diff.
std::string canonical_dump(const nlohmann::json& doc);

void emit_report(const nlohmann::json& doc, const std::string& path);  // "-" = stdout

}  // namespace conc
