#pragma once

// Sparse m-homogeneous polynomials, truncated power series and the
// polynomial families used as witnesses (sign polynomials, Moebius maps).

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bohrlab/multiindex.hpp"

namespace bohrlab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// P(z) = sum_alpha a_alpha z^alpha over alpha in Lambda(m,n). Immutable;
/// the constructor compiles a flat per-term factor list for evaluation.
class HomPoly {
 public:
  using Terms = std::map<MultiIndex, Complex>;
  using ExactTerms = std::map<MultiIndex, BigInt>;

  HomPoly(int n, int m, Terms terms = {}, std::optional<ExactTerms> exact = std::nullopt);

  int vars() const { return n_; }
  int degree() const { return m_; }
  const Terms& terms() const { return terms_; }
  /// Exact integer coefficients, when the polynomial has them.
  const std::optional<ExactTerms>& exact() const { return exact_; }
  Complex coeff(const MultiIndex& alpha) const;
  std::size_t support_size() const { return terms_.size(); }

  Complex eval(std::span<const Complex> z) const;
  /// Value and holomorphic gradient dP/dz_i (written into grad).
  Complex eval_grad(std::span<const Complex> z, std::span<Complex> grad) const;
  /// sum |a_alpha| x^alpha and its gradient, for x >= 0.
  double majorant_eval(std::span<const double> x, std::span<double> grad) const;

 private:
  friend class TruncatedSeries;
  int n_, m_;
  Terms terms_;
  std::optional<ExactTerms> exact_;
  // Compiled form: term t owns factors [offset[t], offset[t+1]).
  std::vector<std::uint32_t> offset_;
  std::vector<int> var_;
  std::vector<int> pow_;
  std::vector<Complex> coef_;
};

/// f = a0 + P_1 + ... + P_M with parts()[k] of degree k+1.
class TruncatedSeries {
 public:
  TruncatedSeries(int n, Complex a0, std::vector<HomPoly> parts);

  int vars() const { return n_; }
  int max_degree() const { return static_cast<int>(parts_.size()); }
  Complex constant() const { return a0_; }
  const std::vector<HomPoly>& parts() const { return parts_; }
  /// Homogeneous part of degree m >= 1.
  const HomPoly& part(int m) const { return parts_.at(static_cast<std::size_t>(m - 1)); }

  Complex eval(std::span<const Complex> z) const;
  Complex eval_grad(std::span<const Complex> z, std::span<Complex> grad) const;
  TruncatedSeries scaled(double factor) const;

 private:
  int n_;
  Complex a0_;
  std::vector<HomPoly> parts_;
};

inline Complex eval(const HomPoly& p, std::span<const Complex> z) { return p.eval(z); }

/// Coefficients replaced by their moduli.
HomPoly majorant(const HomPoly& p);

/// P_w with a_alpha(P_w) = a_alpha(P) w^alpha, i.e. P_w(z) = P(w . z).
HomPoly weight_restrict(const HomPoly& p, std::span<const Complex> w);

/// sum_alpha eps_alpha (m!/alpha!) z^alpha; every alpha in Lambda(m,n) needs a sign.
HomPoly sign_polynomial(int m, int n, const std::map<MultiIndex, int>& signs);
/// Same, with signs listed in colex order of Lambda(m,n).
HomPoly sign_polynomial(int m, int n, std::span<const int> signs);

/// Taylor expansion of (a - z)/(1 - a z) up to degree M.
TruncatedSeries moebius_series(double a, int M);

/// Estimates sup |f| over the unit ball of interest; used to rescale.
using SeriesNormEstimator = std::function<double(const TruncatedSeries&)>;

/// Random series with complex Gaussian coefficients (constant term with a
/// random scale), divided by `estimator(f)` so its estimated sup-norm is 1.
/// `budget` caps the total number of coefficients.
TruncatedSeries random_series(int n, int M, std::uint64_t seed, std::size_t budget,
                              const SeriesNormEstimator& estimator);

/// Random m-homogeneous polynomial with standard complex Gaussian coefficients.
HomPoly random_hom_poly(int m, int n, std::uint64_t seed);

}  // namespace bohrlab
