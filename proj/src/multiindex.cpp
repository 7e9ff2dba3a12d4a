#include "bohrlab/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bohrlab/errors.hpp"

namespace bohrlab {

BigInt factorial(int k) {
  require(k >= 0, "factorial of a negative number");
  BigInt out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

BigInt binomial(long long top, long long k) {
  if (k < 0 || top < 0 || k > top) return 0;
  k = std::min(k, top - k);
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= top - k + i;
    out /= i;
  }
  return out;
}

double to_double(const BigInt& value) { return value.convert_to<double>(); }

std::string to_string(const BigInt& value) { return value.str(); }

namespace {

std::string join(std::span<const int> values, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << sep;
    os << values[i];
  }
  return os.str();
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) require(e >= 0, "multi-index entries must be nonnegative");
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex MultiIndex::zero(int n) {
  require(n >= 1, "variable count must be positive");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

std::string MultiIndex::str() const { return "(" + join(exps_, ',') + ")"; }

IndexTuple::IndexTuple(std::vector<int> indices) : idx_(std::move(indices)) {
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    require(idx_[k] >= 1, "tuple indices are 1-based");
    if (k > 0) require(idx_[k - 1] <= idx_[k], "tuple must be nondecreasing");
  }
}

std::string IndexTuple::str() const { return "(" + join(idx_, ',') + ")"; }

BigInt lambda_card(int m, int n) {
  require(m >= 0 && n >= 1, "lambda_card needs m >= 0 and n >= 1");
  return binomial(static_cast<long long>(n) + m - 1, m);
}

// ---------------------------------------------------------------------------

LambdaStream::LambdaStream(int m, int n, std::size_t budget, int max_entry)
    : m_(m), n_(n), max_entry_(max_entry), budget_(budget) {
  require(m >= 0 && n >= 1, "enumerate_lambda needs m >= 0 and n >= 1");
  reset();
}

void LambdaStream::reset() {
  cur_.assign(static_cast<std::size_t>(n_), 0);
  started_ = false;
  done_ = false;
  yielded_ = 0;
}

// Colex successor: the first nonzero entry moves one unit to its right
// neighbour and the remainder returns to position 0.
bool LambdaStream::advance_raw() {
  if (!started_) {
    started_ = true;
    cur_[0] = m_;
    return true;
  }
  std::size_t t = 0;
  while (t < cur_.size() && cur_[t] == 0) ++t;
  if (t + 1 >= cur_.size()) return false;
  const int v = cur_[t];
  cur_[t] = 0;
  cur_[t + 1] += 1;
  cur_[0] = v - 1;
  return true;
}

bool LambdaStream::next() {
  if (done_) return false;
  while (true) {
    if (!advance_raw()) {
      done_ = true;
      return false;
    }
    if (max_entry_ < 0 || is_k_bounded(cur_, max_entry_)) break;
  }
  if (++yielded_ > budget_) throw BudgetExceeded("multi-index stream budget exceeded");
  return true;
}

JStream::JStream(int m, int n, std::size_t budget) : m_(m), n_(n), budget_(budget) {
  require(m >= 0 && n >= 1, "enumerate_j needs m >= 0 and n >= 1");
  reset();
}

void JStream::reset() {
  cur_.assign(static_cast<std::size_t>(m_), 1);
  started_ = false;
  done_ = false;
  yielded_ = 0;
}

bool JStream::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
  } else {
    int pos = m_ - 1;
    while (pos >= 0 && cur_[static_cast<std::size_t>(pos)] == n_) --pos;
    if (pos < 0) {
      done_ = true;
      return false;
    }
    const int v = cur_[static_cast<std::size_t>(pos)] + 1;
    for (int k = pos; k < m_; ++k) cur_[static_cast<std::size_t>(k)] = v;
  }
  if (++yielded_ > budget_) throw BudgetExceeded("tuple stream budget exceeded");
  return true;
}

std::vector<MultiIndex> enumerate_lambda(int m, int n, std::size_t budget) {
  std::vector<MultiIndex> out;
  LambdaStream s(m, n, budget);
  while (s.next()) out.push_back(s.current());
  return out;
}

std::vector<IndexTuple> enumerate_j(int m, int n, std::size_t budget) {
  std::vector<IndexTuple> out;
  JStream s(m, n, budget);
  while (s.next()) out.push_back(s.current());
  return out;
}

std::vector<MultiIndex> enumerate_lambda_k(int m, int n, int k, std::size_t budget) {
  require(k >= 1 && k <= std::max(m, 1), "k-bounded sets need 1 <= k <= m");
  std::vector<MultiIndex> out;
  LambdaStream s(m, n, budget, k);
  while (s.next()) out.push_back(s.current());
  return out;
}

// ---------------------------------------------------------------------------

MultiIndex tuple_to_alpha(const IndexTuple& j, int n) {
  require(n >= 1, "variable count must be positive");
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  for (int idx : j.indices()) {
    require(idx <= n, "tuple index exceeds variable count");
    ++alpha[static_cast<std::size_t>(idx - 1)];
  }
  return MultiIndex(std::move(alpha));
}

IndexTuple alpha_to_tuple(const MultiIndex& alpha) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(alpha.degree()));
  for (int i = 1; i <= alpha.size(); ++i) idx.insert(idx.end(), alpha(i), i);
  return IndexTuple(std::move(idx));
}

BigInt multiplicity(std::span<const int> alpha) {
  int m = 0;
  for (int a : alpha) m += a;
  BigInt out = factorial(m);
  for (int a : alpha) out /= factorial(a);
  return out;
}

bool is_k_bounded(std::span<const int> alpha, int k) {
  return std::all_of(alpha.begin(), alpha.end(), [k](int a) { return a <= k; });
}

BigInt complement_card_bound(int m, int n, int k) {
  require(n >= 1 && k >= 1, "complement bound needs n >= 1 and k >= 1");
  if (m - k - 2 < 0) {
    throw ValidationError("complement bound inapplicable: m - k - 2 < 0");
  }
  return BigInt(n) * binomial(static_cast<long long>(n) + m - k - 3, m - k - 2);
}

std::set<IndexTuple> derived_set(const std::set<IndexTuple>& tuples) {
  std::set<IndexTuple> out;
  if (tuples.empty()) return out;
  const int m = tuples.begin()->length();
  require(m >= 1, "derived set needs tuples of length >= 1");
  for (const auto& j : tuples) {
    require(j.length() == m, "derived set needs tuples of equal length");
    auto idx = j.indices();
    out.emplace(std::vector<int>(idx.begin(), idx.end() - 1));
  }
  return out;
}

std::vector<PartitionShape> partition_shapes(int m, int n) {
  require(m >= 0 && n >= 1, "partition_shapes needs m >= 0 and n >= 1");
  std::vector<PartitionShape> out;
  std::vector<int> parts;

  auto emit = [&] {
    // n! / ((n - l)! * prod_v c_v!) where c_v counts part value v.
    const int len = static_cast<int>(parts.size());
    BigInt count = 1;
    for (int i = 0; i < len; ++i) count *= n - i;
    std::size_t i = 0;
    while (i < parts.size()) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      count /= factorial(static_cast<int>(j - i));
      i = j;
    }
    out.push_back({parts, count});
  };

  // Depth-first, largest part first, which yields reverse lexicographic order.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    if (static_cast<int>(parts.size()) == n) return;
    for (int v = std::min(remaining, max_part); v >= 1; --v) {
      parts.push_back(v);
      self(self, remaining - v, v);
      parts.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

}  // namespace bohrlab
