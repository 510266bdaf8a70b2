#ifndef CSTAR_IO_HPP
#define CSTAR_IO_HPP

#include <json.hpp>
#include <string>

#include "cstar/action.hpp"
#include "cstar/linearize.hpp"

namespace cstar {

using Json = nlohmann::json;

/// Parses a file as JSON; syntax errors surface as InputError with a
/// line/column diagnostic.
Json parse_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& origin = "<input>");

/// Action-spec document (format 1). Unknown keys are rejected.
ActionSpec action_spec_from_json(const Json& j);
Json action_spec_to_json(const ActionSpec& spec);
ActionSpec load_action_spec(const std::string& path);

/// Polynomial-map document, the shape cmd_linearize writes F in.
Json polymap_to_json(const PolyMap& F, const CVector& fixedPoint);
std::pair<PolyMap, CVector> polymap_from_json(const Json& j);

void write_json_file(const std::string& path, const Json& j);

/// Report fragments (format-1 report schema); all numeric fields are
/// checked finite on the way in.
Json validation_to_json(const ValidationReport& rep);
Json weights_to_json(const WeightData& w);
Json classification_to_json(const FixedPointClass& cls);
Json conjugacy_to_json(const ConjugacyReport& rep);

double require_finite(double v, const std::string& field);

}  // namespace cstar

#endif  // CSTAR_IO_HPP
