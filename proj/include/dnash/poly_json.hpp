#pragma once

#include <json.hpp>

#include "dnash/unipoly.hpp"

namespace dnash {

/// JSON array of coefficient strings, index = power: t^2 - 1/2 -> ["-1/2", "0", "1"].
nlohmann::json poly_to_json(const UniPoly& p);
UniPoly poly_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& q);
/// Accepts a string ("3", "-1/4") or a JSON integer.
Rational rational_from_json(const nlohmann::json& j);

}  // namespace dnash
