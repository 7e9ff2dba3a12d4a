#pragma once

// Closed-form bounds: the combinatorial sums S = sum_{j in J(m-1,n)} |j|^{-beta},
// upper bounds for the mixed unconditional constant, the random-polynomial
// norm shape, envelope constants and the (p,q) region/rate map.

#include <cstddef>
#include <string>
#include <vector>

#include "bohrlab/exponent.hpp"
#include "bohrlab/multiindex.hpp"

namespace bohrlab {

enum class JSumMethod { Automatic, Naive, Partition };

/// S = sum over J(m-1,n) of |j|^{-beta}. m = 1 uses the empty tuple, S = 1.
double j_sum_beta(int m, int n, double beta, JSumMethod method = JSumMethod::Automatic,
                  std::size_t budget = kDefaultStreamBudget);
/// j_sum_beta with beta = (1/q - 1/p) q'; q = 1 is rejected.
double j_sum(int m, int n, const ExponentPair& e, JSumMethod method = JSumMethod::Automatic);

struct JSumSplit {
  double bounded = 0.0;     // tuples in J_k(m-1,n)
  double complement = 0.0;  // the rest
};
/// S split along the k-bounded subset of J(m-1,n), 1 <= k <= m-1.
JSumSplit j_sum_k_split(int m, int n, double beta, int k);
/// shells[k-1] = part of S over tuples whose largest repetition is exactly k, k = 1..m-1.
std::vector<double> j_sum_shells(int m, int n, double beta);

/// Which exponent appears in e^{1+(m-1)/b}.
enum class LemmaBase { P, Q };

/// m e^{1+(m-1)/b} S^{1/q'} for 1 <= q <= p <= 2. For q = 1 the factor
/// S^{1/q'} is read as its limit max_j |j|^{1/p-1/q} = 1.
double chi_upper_small_pq(int m, int n, const ExponentPair& e, LemmaBase base = LemmaBase::P);

/// m e^{1+(m-1)/p} |j|^{1/p} for j of length m-1 >= 1.
double lempoly_rhs(int m, int n, const Exponent& p, const IndexTuple& j);

struct BayartShape {
  double value = 0.0;
  bool log_substituted = false;  // m = 1, log(m) replaced by 1
};
/// The (m,n)-dependent factor of the random sign polynomial norm bound.
BayartShape bayart_bound(int m, int n, const Exponent& p);

/// |Lambda(m,n)| n^{m/p}.
double coeff_chi_upper_generic(int m, int n, const Exponent& p);

struct ChiUpper {
  double value = 0.0;
  std::string source;  // "linear-exact", "lemma", "lemma-transfer" or "generic"
};
/// Smallest available analytic upper bound for the constant at (m,n,p,q):
/// the lemma where it applies directly, the lemma moved along the monotone
/// transfers in p and q, or the generic coefficient bound. m = 1 is exact.
ChiUpper chi_upper_best(int m, int n, const ExponentPair& e, LemmaBase base = LemmaBase::P);

struct MinPowerLog {
  double x_star = 0.0;
  double value = 0.0;         // f(x_star)
  long long m_star = 1;       // integer minimizer
  double integer_value = 0.0; // f(m_star)
};
/// Minimizes f(x) = x^a n^{b/x} over x > 0 and over positive integers.
MinPowerLog min_power_log(double a, double b, double n);

struct Envelope {
  double constant = 0.0;
  bool lemma1 = false;  // m >= log(n)^{q'/p'}
  bool lemma2 = false;  // m <= log(n) / (loglog(n) beta)
  bool lemma3 = false;  // log(n)^{1/c} <= m <= log(n)^c
  std::string regime() const;
};
/// [S^{1/q'} log(n)^{m/p'} / n^{m/q'}]^{1/m} with lemma-regime flags.
Envelope envelope_constant(int m, int n, const ExponentPair& e, double c = 2.0);

enum class Region { I, II, III, Q1 };
std::string to_string(Region r);

/// rate(n) = log(n)^{log_exponent} / n^{n_exponent}.
struct RegionReport {
  Region region = Region::I;
  Rational n_exponent{0};
  Rational log_exponent{0};
  bool boundary_I_II = false;
  bool boundary_II_III = false;
  bool extrapolated = false;
  std::string rate;
  std::vector<std::string> flags() const;
};
RegionReport region_classify(const Exponent& p, const Exponent& q);
double rate(const Exponent& p, const Exponent& q, double n);

/// (1/3) n^{1/q-1/p} k_diag for p <= q.
double transfer_lower_pq(int n, const ExponentPair& e, double k_diag);

}  // namespace bohrlab
