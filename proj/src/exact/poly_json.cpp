#include "dnash/poly_json.hpp"

namespace dnash {

nlohmann::json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw Error("expected a rational string, got " + j.dump());
}

nlohmann::json poly_to_json(const UniPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coefficients()) arr.push_back(rational_to_json(c));
  return arr;
}

UniPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("polynomial JSON must be an array of coefficient strings");
  std::vector<Rational> c;
  c.reserve(j.size());
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return UniPoly(std::move(c));
}

}  // namespace dnash
