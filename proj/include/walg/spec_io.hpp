#pragma once

#include "walg/algebra.hpp"

#include <json.hpp>

#include <string>

namespace walg {

/// Builds and validates an AlgebraSpec from its JSON document. Errors are SpecError with a
/// location such as "generators[1].weight" or "structure_constants[3]".
AlgebraSpec load_spec(const nlohmann::json& doc);
AlgebraSpec load_spec_text(const std::string& text);
AlgebraSpec load_spec_file(const std::string& path);

nlohmann::ordered_json spec_to_json(const AlgebraSpec& spec);

/// Field expressions: {"kind": "identity"}, {"kind": "field", "symbol": s},
/// {"kind": "derivative", "of": e, "order": k}, {"kind": "nprod", "m": m, "left": e, "right": e},
/// {"kind": "qp", "left": e, "right": e, "n": k}, {"kind": "lincomb", "terms": [{"coeff": c, "expr": e}]}.
FieldExprPtr field_expr_from_json(const nlohmann::json& doc, const std::string& location);
nlohmann::ordered_json field_expr_to_json(const FieldExprPtr& f);

}  // namespace walg
