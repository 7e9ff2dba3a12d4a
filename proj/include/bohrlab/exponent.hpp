#pragma once

// Extended-real Hölder exponents p in [1, inf], stored exactly through their
// reciprocal 1/p in [0, 1] (so 1/inf = 0 and the conjugate of 1 is inf).

#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace bohrlab {

using Rational = boost::rational<long long>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

class Exponent {
 public:
  /// p = 2 by default.
  Exponent() : inv_(1, 2) {}

  /// Accepts "inf", integers, fractions "a/b" and plain decimals "1.5".
  static Exponent parse(std::string_view text);
  static Exponent from_reciprocal(Rational inv);
  static Exponent infinity() { return from_reciprocal(Rational(0)); }
  static Exponent integer(long long p) { return from_reciprocal(Rational(1, p)); }
  static Exponent ratio(long long num, long long den) {
    return from_reciprocal(Rational(den, num));
  }

  const Rational& reciprocal() const { return inv_; }
  bool is_infinite() const { return inv_ == Rational(0); }
  bool is_one() const { return inv_ == Rational(1); }
  /// p as a double; +inf for the infinite exponent.
  double value() const;
  double inv() const { return to_double(inv_); }
  Exponent conjugate() const { return from_reciprocal(Rational(1) - inv_); }
  std::string str() const;

  // Ordering by the exponent itself (reversed order of reciprocals).
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.inv_ == b.inv_; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.inv_ > b.inv_; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a.inv_ >= b.inv_; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return a.inv_ < b.inv_; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return a.inv_ <= b.inv_; }

 private:
  explicit Exponent(Rational inv) : inv_(inv) {}
  Rational inv_;
};

/// (p, q) with conjugates and beta = (1/q - 1/p) q'.
struct ExponentPair {
  Exponent p;
  Exponent q;

  Exponent p_conj() const { return p.conjugate(); }
  Exponent q_conj() const { return q.conjugate(); }
  /// Empty when q' is infinite (q = 1).
  std::optional<Rational> beta() const;
};

}  // namespace bohrlab
