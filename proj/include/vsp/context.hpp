#pragma once

#include <string>
#include <string_view>

#include "vsp/element.hpp"
#include "vsp/field.hpp"
#include "vsp/model.hpp"

namespace vsp {

/// Model-context files are JSON documents of the form
///
///   {"field": "zp:3",
///    "descriptor": {"f_codim": "aleph0", "axes": [{"dim": 2, "count": "aleph0"}]},
///    "constants": {"c": {"axis": [[0, 1, "2"]], "free": [[0, "1"]]}}}
///
/// Cardinals are naturals or the string "aleph0"; scalars are strings.
Model parse_context(std::string_view text);
std::string serialize_context(const Model& model);
Model load_context(const std::string& path);

/// Parses the canonical element rendering, e.g. `e(A0,0) + 2*e(A1,3) + -1/2*f(0)`, or `0`.
ModelElement parse_element(std::string_view text, const FieldCtx& field);

}  // namespace vsp
