#pragma once

// Bohr radius brackets built from constant brackets, the one-variable
// radius, and the Wiener coefficient inequality checker.

#include <string>
#include <utility>
#include <vector>

#include "bohrlab/witness.hpp"

namespace bohrlab {

struct RadiusBracket {
  double lower = 0.0;
  double upper = 1.0;
  std::string lower_src;
  std::string upper_src;
  int m = 0;  // degree for K_m, 0 for the full radius
  std::vector<std::string> flags;
  /// Values of the generic m-th root bound on the tail grid (m, value).
  std::vector<std::pair<int, double>> tail_grid;
  double tail_bound = 0.0;
};

/// K_m from the constant bracket through x -> x^{-1/m}.
RadiusBracket k_m_bracket(int m, int n, const ExponentPair& e, const BracketConfig& cfg = {});

/// K from the K_m brackets for m <= m_max plus a monotone bound for the tail.
RadiusBracket k_bracket(int n, const ExponentPair& e, int m_max, const BracketConfig& cfg = {});

struct OneDConfig {
  int degree = 12;          // Moebius truncation
  int series = 10000;       // Monte Carlo series checked at the lower endpoint
  int series_degree = 12;
  int circle_points = 512;  // boundary sampling for sup|f|
  std::uint64_t seed = 0;
  int max_bisections = 200;
};

struct OneDBracket {
  RadiusBracket bracket;
  double moebius_a = 0.0;  // parameter of the witness at the upper endpoint
  int checked = 0;
  int failures = 0;
};

/// Bracket for the one-variable Bohr radius of width <= 2 tol.
OneDBracket bohr_1d_bracket(double tol, const OneDConfig& cfg = {});

/// Monte Carlo: number of random normalized one-variable series whose Bohr
/// sum at radius r exceeds their boundary-sampled sup-norm.
int bohr_1d_violations(double r, int count, const OneDConfig& cfg);

/// Boundary-sampled sup|f| on the unit disc for a one-variable series.
double disc_sup_sampled(const TruncatedSeries& f, int points);

struct WienerRow {
  int m = 0;
  double norm = 0.0;       // estimated ||P_m||_p
  double reduced = 0.0;    // max over sampled z of the torus norm of w -> P_m(w.z)
  double bound = 0.0;      // slack * (1 - |a0|^2)
  bool pass = false;
};

struct WienerReport {
  std::vector<WienerRow> rows;
  double input_norm = 0.0;
  bool all_pass = true;
};

/// ||P_m||_p <= slack (1 - |a0|^2) for each homogeneous part. The input must
/// have estimated sup-norm <= 1 + norm_tol on the l_p ball.
WienerReport wiener_check(const TruncatedSeries& f, const Exponent& p, double slack,
                          const OptimizerConfig& cfg = {}, int reduction_samples = 3,
                          double norm_tol = 1e-6);

}  // namespace bohrlab
