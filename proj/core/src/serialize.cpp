#include "etaforge/serialize.hpp"

#include <sstream>

#include "json_convert.hpp"

namespace etaforge {

using nlohmann::json;
using detail::int_from_json;
using detail::int_to_json;

namespace {

json rational_pair(const Rational& v) {
  return json::array({int_to_json(BigInt(v.get_num())), int_to_json(BigInt(v.get_den()))});
}

json exponents_to_json(const EtaExponents& e) {
  json arr = json::array();
  for (const auto& [d, r] : e.nonzero_pairs()) {
    arr.push_back(json::array({int_to_json(d), int_to_json(r)}));
  }
  return arr;
}

EtaExponents exponents_from_json(const Level& level, const json& arr) {
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (const auto& item : arr) {
    pairs.emplace_back(int_from_json(item.at(0)), int_from_json(item.at(1)));
  }
  return EtaExponents::from_pairs(level, pairs);
}

json orders_to_json(const CuspOrderVector& orders) {
  json arr = json::array();
  for (std::size_t i = 0; i < orders.divisors().size(); ++i) {
    const Rational& v = orders.orders()[i];
    arr.push_back(json::array({int_to_json(orders.divisors()[i]),
                               int_to_json(BigInt(v.get_num())),
                               int_to_json(BigInt(v.get_den()))}));
  }
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json_text(const SearchReport& report) {
  json j;
  j["level"] = int_to_json(report.config.level.n());
  j["weight"] = report.config.k;
  j["mode"] = to_string(report.config.mode);
  j["bound"] = int_to_json(report.bound_used);
  j["nodes"] = report.nodes_explored;
  json hits = json::array();
  for (const auto& hit : report.hits) {
    json h;
    h["r"] = exponents_to_json(hit.exponents);
    h["character"] = int_to_json(hit.character.d_argument);
    h["orders"] = orders_to_json(hit.orders);
    h["cusp"] = hit.is_cusp_form;
    hits.push_back(std::move(h));
  }
  j["hits"] = std::move(hits);
  return dump(j);
}

SearchReport report_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  SearchConfig config(factorize(int_from_json(j.at("level"))));
  config.k = j.at("weight").get<long>();
  config.mode = search_mode_from_string(j.at("mode").get<std::string>());
  SearchReport report(std::move(config));
  report.bound_used = int_from_json(j.at("bound"));
  report.nodes_explored = j.at("nodes").get<std::uint64_t>();
  for (const auto& h : j.at("hits")) {
    EtaExponents e = exponents_from_json(report.config.level, h.at("r"));
    std::vector<BigInt> divisors;
    std::vector<Rational> orders;
    for (const auto& o : h.at("orders")) {
      divisors.push_back(int_from_json(o.at(0)));
      Rational v(int_from_json(o.at(1)), int_from_json(o.at(2)));
      v.canonicalize();
      orders.push_back(v);
    }
    report.hits.push_back(SearchHit{
        std::move(e),
        CharacterKernel{int_from_json(h.at("character"))},
        CuspOrderVector(std::move(divisors), std::move(orders)),
        h.at("cusp").get<bool>(),
    });
  }
  return report;
}

std::string to_json_text(const CuspMatrix& matrix) {
  json j;
  json divisors = json::array();
  for (const auto& d : matrix.level().divisors()) divisors.push_back(int_to_json(d));
  j["divisors"] = std::move(divisors);
  json rows = json::array();
  for (const auto& row : matrix.entries()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(int_to_json(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return dump(j);
}

CuspMatrix matrix_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  BigInt n = 1;
  for (const auto& d : j.at("divisors")) {
    const BigInt v = int_from_json(d);
    if (v > n) n = v;
  }
  std::vector<std::vector<BigInt>> entries;
  for (const auto& row : j.at("rows")) {
    std::vector<BigInt> r;
    for (const auto& v : row) r.push_back(int_from_json(v));
    entries.push_back(std::move(r));
  }
  return CuspMatrix(factorize(n), std::move(entries));
}

std::string decision_to_json_text(const Decision& decision, const Level& level, long k) {
  json j;
  j["n"] = int_to_json(level.n());
  j["k"] = k;
  j["verdict"] = to_string(decision.verdict);
  if (decision.witness) j["witness"] = exponents_to_json(*decision.witness);
  j["obstruction_note"] = decision.obstruction_note;
  j["theorem_refs"] = decision.theorem_refs;
  return dump(j);
}

ParsedDecision decision_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  ParsedDecision out;
  out.n = int_from_json(j.at("n"));
  out.k = j.at("k").get<long>();
  out.decision.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.contains("witness")) {
    out.decision.witness = exponents_from_json(factorize(out.n), j.at("witness"));
  }
  out.decision.obstruction_note = j.at("obstruction_note").get<std::string>();
  out.decision.theorem_refs = j.at("theorem_refs").get<std::vector<std::string>>();
  return out;
}

std::string to_json_text(const QSeries& series) {
  json j;
  j["lead"] = rational_pair(series.leading_exponent);
  json coeffs = json::array();
  for (const auto& c : series.coefficients) coeffs.push_back(int_to_json(c));
  j["coeffs"] = std::move(coeffs);
  return dump(j);
}

QSeries qseries_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  QSeries s;
  Rational lead(int_from_json(j.at("lead").at(0)), int_from_json(j.at("lead").at(1)));
  lead.canonicalize();
  s.leading_exponent = lead;
  for (const auto& c : j.at("coeffs")) s.coefficients.push_back(int_from_json(c));
  return s;
}

std::string report_csv_header() { return "n,k,mode,bound,r,character,orders,cusp"; }

std::string to_csv_rows(const SearchReport& report) {
  std::ostringstream os;
  for (const auto& hit : report.hits) {
    os << report.config.level.n().get_str() << ',' << report.config.k << ','
       << to_string(report.config.mode) << ',' << report.bound_used.get_str() << ',';
    // The pair text contains commas, so it is double-quoted per CSV rules.
    os << '"' << to_pair_text(hit.exponents) << '"' << ',';
    os << hit.character.d_argument.get_str() << ',';
    for (std::size_t i = 0; i < hit.orders.divisors().size(); ++i) {
      if (i > 0) os << ';';
      const Rational& v = hit.orders.orders()[i];
      os << hit.orders.divisors()[i].get_str() << ':' << v.get_num().get_str() << '/'
         << v.get_den().get_str();
    }
    os << ',' << (hit.is_cusp_form ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace etaforge
