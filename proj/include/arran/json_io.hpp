#pragma once

#include <string>

#include "json.hpp"

#include "arran/arrangement.hpp"
#include "arran/character.hpp"
#include "arran/cyclo.hpp"
#include "arran/presentation.hpp"
#include "arran/rational.hpp"

namespace arran::io {

using json = nlohmann::json;

// Rationals travel as strings "p/q" ("p" when the denominator is 1); Cyclo
// values as {"order": N, "coeffs": ["p/q", ...]} over the power basis of
// Q(zeta_N). Parsers accept a bare rational wherever a Cyclo is expected and
// throw input_error with a short context string on malformed data.
json rational_to_json(const exact::Rational& r);
exact::Rational rational_from_json(const json& j);
json cyclo_to_json(const exact::Cyclo& v);
exact::Cyclo cyclo_from_json(const json& j);

// {"name": str, "cyclotomic_order": N, "lines": [[c, c, c], ...]}
json arrangement_to_json(const geom::Arrangement& arr);
geom::Arrangement arrangement_from_json(const json& j);

// {"order": N, "exponents": [int per line]}
json character_to_json(const Character& chi);
Character character_from_json(const json& j);
std::vector<Character> characters_from_json(const json& j);

// {"generators": g, "relators": [[signed indices], ...],
//  "meridians": [[signed indices] per line]}
cover::GroupPresentation presentation_from_json(const json& j);
json presentation_to_json(const cover::GroupPresentation& pres);

// Reads and parses a JSON file; errors carry the path.
json load_json_file(const std::string& path);

} // namespace arran::io
