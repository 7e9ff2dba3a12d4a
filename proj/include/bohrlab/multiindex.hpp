#pragma once

// Monomial index sets: multi-indices alpha in Lambda(m,n), nondecreasing
// tuples j in J(m,n), the occurrence-count bijection between them, k-bounded
// subsets and integer-partition shapes. All counting is exact.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bohrlab {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int k);
/// binom(top, k); zero when k < 0 or k > top.
BigInt binomial(long long top, long long k);
double to_double(const BigInt& value);
std::string to_string(const BigInt& value);

inline constexpr std::size_t kDefaultStreamBudget = 100'000'000;

/// alpha = (alpha_1, ..., alpha_n) with nonnegative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int n);

  int size() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  /// 1-based variable access.
  int operator()(int variable) const { return exps_.at(variable - 1); }
  std::span<const int> exponents() const { return exps_; }
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// j = (j_1 <= ... <= j_m) with entries in 1..n.
class IndexTuple {
 public:
  IndexTuple() = default;
  explicit IndexTuple(std::vector<int> indices);

  int length() const { return static_cast<int>(idx_.size()); }
  int operator[](std::size_t k) const { return idx_[k]; }
  int back() const { return idx_.back(); }
  std::span<const int> indices() const { return idx_; }
  std::string str() const;

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple& a, const IndexTuple& b) {
    return a.idx_ <=> b.idx_;
  }

 private:
  std::vector<int> idx_;
};

/// A partition of m into at most n parts together with the number of
/// alpha in Lambda(m,n) whose nonzero entries form that multiset.
struct PartitionShape {
  std::vector<int> parts;  // nonincreasing, positive
  BigInt arrangements;

  int length() const { return static_cast<int>(parts.size()); }
};

BigInt lambda_card(int m, int n);

/// Colexicographic stream over Lambda(m,n), optionally restricted to
/// entries <= max_entry. Single consumer, O(n) state, restartable.
class LambdaStream {
 public:
  LambdaStream(int m, int n, std::size_t budget = kDefaultStreamBudget,
               int max_entry = -1);

  bool next();
  void reset();
  std::span<const int> exponents() const { return cur_; }
  MultiIndex current() const { return MultiIndex(cur_); }
  std::size_t yielded() const { return yielded_; }

 private:
  bool advance_raw();

  int m_, n_, max_entry_;
  std::size_t budget_;
  std::vector<int> cur_;
  bool started_ = false;
  bool done_ = false;
  std::size_t yielded_ = 0;
};

/// Lexicographic stream over J(m,n).
class JStream {
 public:
  JStream(int m, int n, std::size_t budget = kDefaultStreamBudget);

  bool next();
  void reset();
  std::span<const int> indices() const { return cur_; }
  IndexTuple current() const { return IndexTuple(cur_); }
  std::size_t yielded() const { return yielded_; }

 private:
  int m_, n_;
  std::size_t budget_;
  std::vector<int> cur_;
  bool started_ = false;
  bool done_ = false;
  std::size_t yielded_ = 0;
};

std::vector<MultiIndex> enumerate_lambda(int m, int n,
                                         std::size_t budget = kDefaultStreamBudget);
std::vector<IndexTuple> enumerate_j(int m, int n,
                                    std::size_t budget = kDefaultStreamBudget);
std::vector<MultiIndex> enumerate_lambda_k(int m, int n, int k,
                                           std::size_t budget = kDefaultStreamBudget);

MultiIndex tuple_to_alpha(const IndexTuple& j, int n);
IndexTuple alpha_to_tuple(const MultiIndex& alpha);

/// m!/alpha!, the number of orderings of the tuple F^{-1}(alpha).
BigInt multiplicity(std::span<const int> alpha);
inline BigInt multiplicity(const MultiIndex& alpha) {
  return multiplicity(alpha.exponents());
}

bool is_k_bounded(std::span<const int> alpha, int k);
inline bool is_k_bounded(const MultiIndex& alpha, int k) {
  return is_k_bounded(alpha.exponents(), k);
}

/// n * binom(n+m-k-3, m-k-2), an upper bound for the number of length-(m-1)
/// tuples in which some index repeats more than k times.
BigInt complement_card_bound(int m, int n, int k);

/// Prefixes of length m-1 of the tuples in `tuples` (all of length m >= 1).
std::set<IndexTuple> derived_set(const std::set<IndexTuple>& tuples);

/// Partitions of m with at most n parts, in reverse lexicographic order.
std::vector<PartitionShape> partition_shapes(int m, int n);

}  // namespace bohrlab
