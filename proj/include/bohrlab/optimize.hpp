#pragma once

// Multi-start projected gradient ascent for polynomial moduli and majorant
// sums over l_p spheres, plus rearrangement and X_inf norm helpers.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bohrlab/exponent.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 500;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Best value found and where. value is the objective re-evaluated at the
/// witness, so it is always a lower bound for the true supremum.
struct NormEstimate {
  double value = 0.0;
  CVector witness;
  int restarts = 0;
  bool converged = false;
  double gap = 0.0;  // relative gap between best and second-best restart
};

double lp_norm(std::span<const Complex> z, const Exponent& p);
double lp_norm(std::span<const double> x, const Exponent& p);

/// sup |P(z)| over the unit ball of l_p^n.
NormEstimate sup_norm(const HomPoly& poly, const Exponent& p, const OptimizerConfig& cfg = {});
/// sup |f(z)| over the unit ball of l_p^n.
NormEstimate series_sup_norm(const TruncatedSeries& f, const Exponent& p,
                             const OptimizerConfig& cfg = {});
/// sup sum |a_alpha| x^alpha over the unit ball of l_q^n.
NormEstimate majorant_sup(const HomPoly& poly, const Exponent& q, const OptimizerConfig& cfg = {});
/// sup sum_alpha |a_alpha z^alpha| over r times the unit ball of l_q^n.
NormEstimate bohr_sum(const TruncatedSeries& f, double r, const Exponent& q,
                      const OptimizerConfig& cfg = {});

/// Moduli sorted nonincreasing.
std::vector<double> dec_rearrange(std::span<const Complex> z);
/// max_{2<=k<=n} (sum_{j<=k} z*_j^2)^{1/2} / sqrt(log k).
double x_infty_norm(std::span<const Complex> z);
/// max_{2<=k<=n} k^{1/2-1/q} / sqrt(log k), for q >= 2.
double id_norm_q_to_xinfty(int n, const Exponent& q);
/// z = y . w with |y| = |z|^{p/(p+2)}, |w| = |z|^{2/(p+2)}; phases go to y.
std::pair<CVector, CVector> split_factorize(std::span<const Complex> z, const Exponent& p);

}  // namespace bohrlab
