#include "bohrlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohrlab/errors.hpp"

namespace bohrlab {

namespace {

// Compensated (Kahan-Babuska) summation.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double shape_multiplicity(int total, const std::vector<int>& parts) {
  BigInt mult = factorial(total);
  for (int v : parts) mult /= factorial(v);
  return to_double(mult);
}

double term(double multiplicity, double beta) {
  return beta == 0.0 ? 1.0 : std::pow(multiplicity, -beta);
}

void check_jsum_args(int m, int n, double beta) {
  require(m >= 1 && n >= 1, "j_sum needs m >= 1 and n >= 1");
  require(std::isfinite(beta), "j_sum needs a finite beta");
}

double log_e_factor(int m, const Exponent& base) {
  return 1.0 + static_cast<double>(m - 1) * base.inv();
}

}  // namespace

double j_sum_beta(int m, int n, double beta, JSumMethod method, std::size_t budget) {
  check_jsum_args(m, n, beta);
  if (m == 1) return 1.0;
  const int d = m - 1;
  if (method == JSumMethod::Automatic) {
    method = lambda_card(d, n) <= 4096 ? JSumMethod::Naive : JSumMethod::Partition;
  }
  KahanSum acc;
  if (method == JSumMethod::Naive) {
    LambdaStream s(d, n, budget);
    while (s.next()) acc.add(term(to_double(multiplicity(s.exponents())), beta));
  } else {
    for (const auto& shape : partition_shapes(d, n)) {
      acc.add(to_double(shape.arrangements) * term(shape_multiplicity(d, shape.parts), beta));
    }
  }
  return acc.value();
}

double j_sum(int m, int n, const ExponentPair& e, JSumMethod method) {
  const auto beta = e.beta();
  require(beta.has_value(), "j_sum needs q > 1");
  return j_sum_beta(m, n, to_double(*beta), method);
}

JSumSplit j_sum_k_split(int m, int n, double beta, int k) {
  check_jsum_args(m, n, beta);
  require(m >= 2 && k >= 1 && k <= m - 1, "k split needs 1 <= k <= m-1");
  KahanSum in, out;
  for (const auto& shape : partition_shapes(m - 1, n)) {
    const double v = to_double(shape.arrangements) * term(shape_multiplicity(m - 1, shape.parts), beta);
    (shape.parts.front() <= k ? in : out).add(v);
  }
  return {in.value(), out.value()};
}

std::vector<double> j_sum_shells(int m, int n, double beta) {
  check_jsum_args(m, n, beta);
  require(m >= 2, "shells need m >= 2");
  std::vector<KahanSum> acc(static_cast<std::size_t>(m - 1));
  for (const auto& shape : partition_shapes(m - 1, n)) {
    const double v = to_double(shape.arrangements) * term(shape_multiplicity(m - 1, shape.parts), beta);
    acc[static_cast<std::size_t>(shape.parts.front() - 1)].add(v);
  }
  std::vector<double> out;
  for (const auto& a : acc) out.push_back(a.value());
  return out;
}

double chi_upper_small_pq(int m, int n, const ExponentPair& e, LemmaBase base) {
  require(m >= 1 && n >= 1, "chi upper bound needs m >= 1 and n >= 1");
  require(e.q <= e.p && e.p <= Exponent::integer(2), "chi upper bound needs 1 <= q <= p <= 2");
  const Exponent& b = base == LemmaBase::P ? e.p : e.q;
  double factor = 1.0;
  if (!e.q.is_one()) factor = std::pow(j_sum(m, n, e), e.q_conj().inv());
  return static_cast<double>(m) * std::exp(log_e_factor(m, b)) * factor;
}

double lempoly_rhs(int m, int n, const Exponent& p, const IndexTuple& j) {
  require(m >= 2, "lempoly bound needs m >= 2");
  require(j.length() == m - 1, "slice index must have length m-1");
  const double jm = to_double(multiplicity(tuple_to_alpha(j, n)));
  return static_cast<double>(m) * std::exp(log_e_factor(m, p)) * std::pow(jm, p.inv());
}

BayartShape bayart_bound(int m, int n, const Exponent& p) {
  require(m >= 1 && n >= 1, "bayart bound needs m >= 1 and n >= 1");
  BayartShape out;
  double lg = std::log(static_cast<double>(m));
  if (m == 1) {
    lg = 1.0;
    out.log_substituted = true;
  }
  const double base = lg * to_double(factorial(m));
  const double nd = static_cast<double>(n);
  if (p <= Exponent::integer(2)) {
    const double ex = 1.0 - p.inv();
    out.value = std::pow(base, ex) * std::pow(nd, ex);
  } else {
    const double ex = static_cast<double>(m) * (0.5 - p.inv()) + 0.5;
    out.value = std::sqrt(base) * std::pow(nd, ex);
  }
  return out;
}

double coeff_chi_upper_generic(int m, int n, const Exponent& p) {
  require(m >= 1 && n >= 1, "generic bound needs m >= 1 and n >= 1");
  return to_double(lambda_card(m, n)) * std::pow(static_cast<double>(n), m * p.inv());
}

ChiUpper chi_upper_best(int m, int n, const ExponentPair& e, LemmaBase base) {
  if (m == 1) {
    // Linear forms: ||a||_{q'} / ||a||_{p'} is maximal at a flat or a unit vector.
    require(n >= 1, "chi upper bound needs n >= 1");
    const double ex = e.q_conj().inv() - e.p_conj().inv();
    return {std::max(1.0, std::pow(static_cast<double>(n), ex)), "linear-exact"};
  }
  ChiUpper best{coeff_chi_upper_generic(m, n, e.p), "generic"};
  const Exponent two = Exponent::integer(2);
  const Exponent pt = std::min(e.p, two);
  double lemma;
  if (e.q <= pt) {
    lemma = chi_upper_small_pq(m, n, {pt, e.q}, base);
  } else {
    const double shift = static_cast<double>(m) * (pt.inv() - e.q.inv());
    lemma = std::pow(static_cast<double>(n), shift) * chi_upper_small_pq(m, n, {pt, pt}, base);
  }
  if (lemma < best.value) {
    const bool direct = pt == e.p && e.q <= e.p;
    best = {lemma, direct ? "lemma" : "lemma-transfer"};
  }
  return best;
}

MinPowerLog min_power_log(double a, double b, double n) {
  require(a > 0.0 && b > 0.0 && n > 1.0, "min_power_log needs a, b > 0 and n > 1");
  const double ln = std::log(n);
  auto f = [&](double x) { return std::pow(x, a) * std::exp(b * ln / x); };
  MinPowerLog out;
  out.x_star = b * ln / a;
  out.value = f(out.x_star);
  std::vector<long long> cands{1};
  const double fl = std::floor(out.x_star);
  if (fl >= 1.0) cands.push_back(static_cast<long long>(fl));
  cands.push_back(std::max<long long>(1, static_cast<long long>(std::ceil(out.x_star))));
  out.integer_value = std::numeric_limits<double>::infinity();
  for (long long c : cands) {
    const double v = f(static_cast<double>(c));
    if (v < out.integer_value) {
      out.integer_value = v;
      out.m_star = c;
    }
  }
  return out;
}

std::string Envelope::regime() const {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += '+';
    s += name;
  };
  add(lemma1, "lemma1");
  add(lemma2, "lemma2");
  add(lemma3, "lemma3");
  return s.empty() ? "none" : s;
}

Envelope envelope_constant(int m, int n, const ExponentPair& e, double c) {
  require(n >= 2, "envelope needs n >= 2");
  require(!e.q.is_one() && e.q <= e.p && e.p <= Exponent::integer(2),
          "envelope needs 1 < q <= p <= 2");
  require(c > 1.0, "regime parameter c must exceed 1");
  const double ln = std::log(static_cast<double>(n));
  const double lln = std::log(ln);
  const double iqc = e.q_conj().inv();
  const double ipc = e.p_conj().inv();
  const double md = static_cast<double>(m);
  const double log_ratio = iqc * std::log(j_sum(m, n, e)) + md * ipc * lln - md * iqc * ln;
  Envelope out;
  out.constant = std::exp(log_ratio / md);
  out.lemma1 = md >= std::pow(ln, iqc > 0.0 ? ipc / iqc : 0.0);
  const double beta = to_double(*e.beta());
  out.lemma2 = beta == 0.0 || (lln > 0.0 && md <= ln / (lln * beta));
  out.lemma3 = std::pow(ln, 1.0 / c) <= md && md <= std::pow(ln, c);
  return out;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::Q1: return "Q1";
  }
  return "?";
}

std::vector<std::string> RegionReport::flags() const {
  std::vector<std::string> out{"no-constant"};
  if (boundary_I_II) out.push_back("boundary-I-II");
  if (boundary_II_III) out.push_back("boundary-II-III");
  if (extrapolated) out.push_back("extrapolated");
  return out;
}

namespace {

std::string power_text(const std::string& base, const Rational& ex) {
  if (ex == Rational(1, 2)) return "sqrt(" + base + ")";
  if (ex == Rational(1)) return base;
  return "(" + base + ")^(" + to_string(ex) + ")";
}

std::string rate_text(const Rational& log_ex, const Rational& n_ex) {
  std::string num = log_ex == Rational(0) ? "1" : power_text("log n", log_ex);
  if (n_ex == Rational(0)) return num;
  return num + "/" + power_text("n", n_ex);
}

}  // namespace

RegionReport region_classify(const Exponent& p, const Exponent& q) {
  const Rational ip = p.reciprocal();
  const Rational iq = q.reciprocal();
  const Rational half(1, 2);
  RegionReport r;
  if (q.is_one()) {
    r.region = Region::Q1;
  } else if (ip <= half) {
    if (half + ip <= iq) {
      r.region = Region::I;
      r.boundary_I_II = half + ip == iq;
    } else {
      r.region = Region::II;
      r.log_exponent = half;
      r.n_exponent = half + ip - iq;
      r.boundary_II_III = ip == half;
    }
  } else {
    r.region = Region::III;
    r.log_exponent = 1 - ip;
    r.n_exponent = 1 - iq;
    r.extrapolated = iq < half;
  }
  r.rate = rate_text(r.log_exponent, r.n_exponent);
  return r;
}

double rate(const Exponent& p, const Exponent& q, double n) {
  require(n >= 2.0, "rate needs n >= 2");
  const RegionReport r = region_classify(p, q);
  return std::pow(std::log(n), to_double(r.log_exponent)) * std::pow(n, -to_double(r.n_exponent));
}

double transfer_lower_pq(int n, const ExponentPair& e, double k_diag) {
  require(n >= 1, "transfer needs n >= 1");
  require(e.p <= e.q, "transfer needs p <= q");
  require(k_diag >= 0.0, "diagonal radius must be nonnegative");
  return std::pow(static_cast<double>(n), e.q.inv() - e.p.inv()) * k_diag / 3.0;
}

}  // namespace bohrlab
