#include "bohrlab/polynomial.hpp"

#include <cmath>
#include <random>

#include "bohrlab/errors.hpp"

namespace bohrlab {

namespace {

// Per-thread scratch power table z_i^e, i < n, e <= m.
template <class T>
std::vector<T>& power_table(std::span<const T> z, int m) {
  thread_local std::vector<T> table;
  const std::size_t stride = static_cast<std::size_t>(m) + 1;
  table.resize(z.size() * stride);
  for (std::size_t i = 0; i < z.size(); ++i) {
    T* row = table.data() + i * stride;
    row[0] = T(1);
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * z[i];
  }
  return table;
}

}  // namespace

HomPoly::HomPoly(int n, int m, Terms terms, std::optional<ExactTerms> exact)
    : n_(n), m_(m), terms_(std::move(terms)), exact_(std::move(exact)) {
  require(n >= 1, "polynomial needs at least one variable");
  require(m >= 0, "polynomial degree must be nonnegative");
  offset_.reserve(terms_.size() + 1);
  offset_.push_back(0);
  for (const auto& [alpha, c] : terms_) {
    require(alpha.size() == n, "term " + alpha.str() + " has wrong variable count");
    require(alpha.degree() == m, "term " + alpha.str() + " has wrong degree");
    for (int i = 0; i < n; ++i) {
      const int e = alpha.exponents()[static_cast<std::size_t>(i)];
      if (e > 0) {
        var_.push_back(i);
        pow_.push_back(e);
      }
    }
    offset_.push_back(static_cast<std::uint32_t>(var_.size()));
    coef_.push_back(c);
  }
  if (exact_) {
    for (const auto& [alpha, v] : *exact_) {
      require(terms_.count(alpha) == 1, "exact coefficient without matching term");
    }
  }
}

Complex HomPoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex HomPoly::eval(std::span<const Complex> z) const {
  require(static_cast<int>(z.size()) == n_, "evaluation point has wrong dimension");
  const auto& pw = power_table(z, m_);
  const std::size_t stride = static_cast<std::size_t>(m_) + 1;
  Complex sum = 0.0;
  for (std::size_t t = 0; t < coef_.size(); ++t) {
    Complex prod = coef_[t];
    for (std::uint32_t k = offset_[t]; k < offset_[t + 1]; ++k) {
      prod *= pw[static_cast<std::size_t>(var_[k]) * stride + static_cast<std::size_t>(pow_[k])];
    }
    sum += prod;
  }
  return sum;
}

namespace {

// Shared value+gradient kernel for complex (holomorphic) and real (majorant)
// evaluation. coef(t) yields the coefficient of term t.
template <class T, class CoefFn>
T eval_grad_kernel(std::span<const T> z, std::span<T> grad, int m,
                   const std::vector<std::uint32_t>& offset, const std::vector<int>& var,
                   const std::vector<int>& pw_exp, std::size_t nterms, CoefFn coef) {
  const auto& pw = power_table(z, m);
  const std::size_t stride = static_cast<std::size_t>(m) + 1;
  std::fill(grad.begin(), grad.end(), T(0));
  thread_local std::vector<T> prefix;
  T sum(0);
  for (std::size_t t = 0; t < nterms; ++t) {
    const std::uint32_t b = offset[t], e = offset[t + 1];
    const std::size_t k = e - b;
    prefix.resize(k + 1);
    prefix[0] = T(1);
    for (std::size_t f = 0; f < k; ++f) {
      prefix[f + 1] = prefix[f] * pw[static_cast<std::size_t>(var[b + f]) * stride +
                                     static_cast<std::size_t>(pw_exp[b + f])];
    }
    const T c = coef(t);
    sum += c * prefix[k];
    T suffix(1);
    for (std::size_t f = k; f-- > 0;) {
      const std::size_t v = static_cast<std::size_t>(var[b + f]);
      const int ex = pw_exp[b + f];
      const T d = static_cast<double>(ex) * pw[v * stride + static_cast<std::size_t>(ex - 1)];
      grad[v] += c * prefix[f] * d * suffix;
      suffix *= pw[v * stride + static_cast<std::size_t>(ex)];
    }
  }
  return sum;
}

}  // namespace

Complex HomPoly::eval_grad(std::span<const Complex> z, std::span<Complex> grad) const {
  require(static_cast<int>(z.size()) == n_ && grad.size() == z.size(),
          "evaluation point has wrong dimension");
  return eval_grad_kernel<Complex>(z, grad, m_, offset_, var_, pow_, coef_.size(),
                                   [this](std::size_t t) { return coef_[t]; });
}

double HomPoly::majorant_eval(std::span<const double> x, std::span<double> grad) const {
  require(static_cast<int>(x.size()) == n_ && grad.size() == x.size(),
          "evaluation point has wrong dimension");
  return eval_grad_kernel<double>(x, grad, m_, offset_, var_, pow_, coef_.size(),
                                  [this](std::size_t t) { return std::abs(coef_[t]); });
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(int n, Complex a0, std::vector<HomPoly> parts)
    : n_(n), a0_(a0), parts_(std::move(parts)) {
  require(n >= 1, "series needs at least one variable");
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    require(parts_[k].vars() == n, "series part has wrong variable count");
    require(parts_[k].degree() == static_cast<int>(k) + 1, "series part has wrong degree");
  }
}

Complex TruncatedSeries::eval(std::span<const Complex> z) const {
  Complex sum = a0_;
  for (const auto& p : parts_) sum += p.eval(z);
  return sum;
}

Complex TruncatedSeries::eval_grad(std::span<const Complex> z, std::span<Complex> grad) const {
  require(static_cast<int>(z.size()) == n_ && grad.size() == z.size(),
          "evaluation point has wrong dimension");
  std::fill(grad.begin(), grad.end(), Complex(0.0));
  thread_local CVector part_grad;
  part_grad.resize(z.size());
  Complex sum = a0_;
  for (const auto& p : parts_) {
    sum += p.eval_grad(z, part_grad);
    for (std::size_t i = 0; i < z.size(); ++i) grad[i] += part_grad[i];
  }
  return sum;
}

TruncatedSeries TruncatedSeries::scaled(double factor) const {
  std::vector<HomPoly> parts;
  parts.reserve(parts_.size());
  for (const auto& p : parts_) {
    HomPoly::Terms terms;
    for (const auto& [alpha, c] : p.terms()) terms.emplace(alpha, c * factor);
    parts.emplace_back(n_, p.degree(), std::move(terms));
  }
  return TruncatedSeries(n_, a0_ * factor, std::move(parts));
}

// ---------------------------------------------------------------------------

HomPoly majorant(const HomPoly& p) {
  HomPoly::Terms terms;
  for (const auto& [alpha, c] : p.terms()) terms.emplace(alpha, Complex(std::abs(c), 0.0));
  std::optional<HomPoly::ExactTerms> exact;
  if (p.exact()) {
    exact.emplace();
    for (const auto& [alpha, v] : *p.exact()) exact->emplace(alpha, abs(v));
  }
  return HomPoly(p.vars(), p.degree(), std::move(terms), std::move(exact));
}

HomPoly weight_restrict(const HomPoly& p, std::span<const Complex> w) {
  require(static_cast<int>(w.size()) == p.vars(), "weight has wrong dimension");
  HomPoly::Terms terms;
  for (const auto& [alpha, c] : p.terms()) {
    Complex wa = 1.0;
    for (int i = 0; i < alpha.size(); ++i) {
      wa *= std::pow(w[static_cast<std::size_t>(i)], alpha.exponents()[static_cast<std::size_t>(i)]);
    }
    terms.emplace(alpha, c * wa);
  }
  return HomPoly(p.vars(), p.degree(), std::move(terms));
}

HomPoly sign_polynomial(int m, int n, std::span<const int> signs) {
  require(m >= 0 && n >= 1, "sign polynomial needs m >= 0 and n >= 1");
  HomPoly::Terms terms;
  HomPoly::ExactTerms exact;
  LambdaStream s(m, n);
  std::size_t k = 0;
  while (s.next()) {
    require(k < signs.size(), "missing sign entries");
    const int eps = signs[k++];
    require(eps == 1 || eps == -1, "signs must be +1 or -1");
    const BigInt mult = multiplicity(s.exponents()) * eps;
    MultiIndex alpha = s.current();
    terms.emplace(alpha, Complex(to_double(mult), 0.0));
    exact.emplace(std::move(alpha), mult);
  }
  require(k == signs.size(), "too many sign entries");
  return HomPoly(n, m, std::move(terms), std::move(exact));
}

HomPoly sign_polynomial(int m, int n, const std::map<MultiIndex, int>& signs) {
  std::vector<int> ordered;
  LambdaStream s(m, n);
  while (s.next()) {
    auto it = signs.find(s.current());
    require(it != signs.end(), "missing sign for " + s.current().str());
    ordered.push_back(it->second);
  }
  require(ordered.size() == signs.size(), "sign map has entries outside Lambda(m,n)");
  return sign_polynomial(m, n, ordered);
}

TruncatedSeries moebius_series(double a, int M) {
  require(a >= 0.0 && a < 1.0, "Moebius parameter must lie in [0, 1)");
  require(M >= 1, "truncation degree must be positive");
  std::vector<HomPoly> parts;
  double ak = 1.0;  // a^{k-1}
  for (int k = 1; k <= M; ++k) {
    HomPoly::Terms t;
    t.emplace(MultiIndex({k}), Complex(-(1.0 - a * a) * ak, 0.0));
    parts.emplace_back(1, k, std::move(t));
    ak *= a;
  }
  return TruncatedSeries(1, Complex(a, 0.0), std::move(parts));
}

namespace {

Complex complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace

HomPoly random_hom_poly(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HomPoly::Terms terms;
  LambdaStream s(m, n);
  while (s.next()) terms.emplace(s.current(), complex_gaussian(rng));
  return HomPoly(n, m, std::move(terms));
}

TruncatedSeries random_series(int n, int M, std::uint64_t seed, std::size_t budget,
                              const SeriesNormEstimator& estimator) {
  require(n >= 1 && M >= 0, "random series needs n >= 1 and M >= 0");
  if (budget == 0) throw BudgetExceeded("random series budget is zero");
  std::size_t total = 1;
  for (int m = 1; m <= M; ++m) {
    total += static_cast<std::size_t>(to_double(lambda_card(m, n)));
    if (total > budget) throw BudgetExceeded("random series exceeds coefficient budget");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a0_scale = 4.0 * unit(rng);
  const Complex a0 = a0_scale * complex_gaussian(rng);
  std::vector<HomPoly> parts;
  for (int m = 1; m <= M; ++m) {
    HomPoly::Terms terms;
    LambdaStream s(m, n);
    while (s.next()) terms.emplace(s.current(), complex_gaussian(rng));
    parts.emplace_back(n, m, std::move(terms));
  }
  TruncatedSeries raw(n, a0, std::move(parts));
  const double norm = estimator(raw);
  require(std::isfinite(norm) && norm > 0.0, "series norm estimate must be positive");
  return raw.scaled(1.0 / norm);
}

}  // namespace bohrlab
