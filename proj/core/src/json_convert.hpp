#ifndef ETAFORGE_SRC_JSON_CONVERT_HPP
#define ETAFORGE_SRC_JSON_CONVERT_HPP

// Internal helpers shared by the .cpp files that speak JSON.  Integers are
// emitted as JSON numbers when they fit in int64 and as decimal strings
// otherwise; both shapes parse back exactly.

#include <nlohmann/json.hpp>

#include "etaforge/arithmetic.hpp"

namespace etaforge::detail {

inline nlohmann::json int_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

inline BigInt int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::domain_error("expected an integer (number or decimal string)");
}

}  // namespace etaforge::detail

#endif
