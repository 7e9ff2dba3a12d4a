#include "bohrlab/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "bohrlab/errors.hpp"

namespace bohrlab {

Json to_json(const HomPoly& poly) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : poly.terms()) {
    Json t;
    t["alpha"] = std::vector<int>(alpha.exponents().begin(), alpha.exponents().end());
    t["re"] = c.real();
    t["im"] = c.imag();
    if (poly.exact()) t["exact"] = to_string(poly.exact()->at(alpha));
    terms.push_back(std::move(t));
  }
  Json j;
  j["n"] = poly.vars();
  j["m"] = poly.degree();
  j["terms"] = std::move(terms);
  return j;
}

HomPoly poly_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    HomPoly::Terms terms;
    for (const auto& t : j.at("terms")) {
      MultiIndex alpha(t.at("alpha").get<std::vector<int>>());
      const double re = t.at("re").get<double>();
      const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
      require(terms.emplace(std::move(alpha), Complex(re, im)).second, "duplicate term in polynomial");
    }
    return HomPoly(n, m, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

Json to_json(const TruncatedSeries& f) {
  Json j;
  j["n"] = f.vars();
  j["a0"] = {{"re", f.constant().real()}, {"im", f.constant().imag()}};
  Json parts = Json::array();
  for (const auto& p : f.parts()) parts.push_back(to_json(p));
  j["parts"] = std::move(parts);
  return j;
}

TruncatedSeries series_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const Json& a0 = j.at("a0");
    const Complex c(a0.at("re").get<double>(), a0.contains("im") ? a0.at("im").get<double>() : 0.0);
    std::vector<HomPoly> parts;
    for (const auto& p : j.at("parts")) parts.push_back(poly_from_json(p));
    return TruncatedSeries(n, c, std::move(parts));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed series JSON: ") + e.what());
  }
}

Json to_json(const CVector& z) {
  Json out = Json::array();
  for (const auto& v : z) out.push_back(Json::array({v.real(), v.imag()}));
  return out;
}

Json to_json(const NormEstimate& est) {
  Json j;
  j["value"] = est.value;
  j["witness"] = to_json(est.witness);
  j["converged"] = est.converged;
  j["restarts"] = est.restarts;
  j["gap"] = est.gap;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) {
    s = v.get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace bohrlab
