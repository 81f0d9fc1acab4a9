#ifndef ETAFORGE_SERIALIZE_HPP
#define ETAFORGE_SERIALIZE_HPP

#include <string>

#include "etaforge/qexp.hpp"
#include "etaforge/search.hpp"
#include "etaforge/theorems.hpp"

// JSON text forms for the engine's value types.  Policy for integers: emit a
// JSON number when the value fits in int64, otherwise a decimal string; the
// parsers accept both, so print/parse round-trips are exact at any size.

namespace etaforge {

std::string to_json_text(const SearchReport& report);
SearchReport report_from_json_text(const std::string& text);

std::string to_json_text(const CuspMatrix& matrix);
CuspMatrix matrix_from_json_text(const std::string& text);

// Decisions carry (n, k) alongside the verdict so a decision file is
// self-describing.
std::string decision_to_json_text(const Decision& decision, const Level& level, long k);
struct ParsedDecision {
  BigInt n;
  long k = 0;
  Decision decision;
};
ParsedDecision decision_from_json_text(const std::string& text);

std::string to_json_text(const QSeries& series);
QSeries qseries_from_json_text(const std::string& text);

// CSV rows for enumeration hits.  Fixed column order:
//   n,k,mode,bound,r,character,orders,cusp
// with r in canonical pair text, orders d:num/den joined by ';'.
std::string report_csv_header();
std::string to_csv_rows(const SearchReport& report);

}  // namespace etaforge

#endif
