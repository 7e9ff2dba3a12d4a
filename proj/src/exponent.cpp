#include "bohrlab/exponent.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "bohrlab/errors.hpp"

namespace bohrlab {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

long long parse_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("cannot parse exponent component '" + std::string(s) + "'");
  }
  return v;
}

Rational parse_rational(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const long long num = parse_integer(s.substr(0, slash));
    const long long den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw ValidationError("exponent has zero denominator");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 15) throw ValidationError("exponent has too many decimals");
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const long long w = whole.empty() ? 0 : parse_integer(whole);
    const long long f = frac.empty() ? 0 : parse_integer(frac);
    return Rational(w * scale + f, scale);
  }
  return Rational(parse_integer(s));
}

}  // namespace

Exponent Exponent::from_reciprocal(Rational inv) {
  if (inv < Rational(0) || inv > Rational(1)) throw ValidationError("exponent must lie in [1, inf]");
  return Exponent(inv);
}

Exponent Exponent::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s == "inf" || s == "infinity") return infinity();
  if (s.empty()) throw ValidationError("empty exponent");
  const Rational p = parse_rational(s);
  if (p < Rational(1)) throw ValidationError("exponent must lie in [1, inf], got " + std::string(text));
  return from_reciprocal(Rational(1) / p);
}

double Exponent::value() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(inv_.denominator()) / static_cast<double>(inv_.numerator());
}

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  return to_string(Rational(1) / inv_);
}

std::optional<Rational> ExponentPair::beta() const {
  const Rational qc = q_conj().reciprocal();
  if (qc == Rational(0)) return std::nullopt;
  return (q.reciprocal() - p.reciprocal()) / qc;
}

}  // namespace bohrlab
