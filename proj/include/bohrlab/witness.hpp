#pragma once

// Lower bounds for the mixed unconditional constant: annealed sign
// polynomials evaluated along the flat point, a random-search oracle for tiny
// instances, and the bracket that combines them with the analytic uppers.

#include <cstdint>
#include <string>
#include <vector>

#include "bohrlab/bounds.hpp"
#include "bohrlab/optimize.hpp"

namespace bohrlab {

inline constexpr double kDefaultSlack = 1.05;

struct SignSearchConfig {
  std::size_t cap = 20000;   // largest |Lambda(m,n)| accepted
  int chains = 4;
  int samples = 512;         // fixed surrogate points
  int elite = 4;             // candidates kept per chain
  int finalists = 2;         // candidates rescored with final_opt
  double t0 = 1.0;
  double cooling = 0.95;
  OptimizerConfig screen_opt{4, 80, 1e-9, 0, 1};
  OptimizerConfig final_opt{16, 250, 1e-12, 0, 1};
  unsigned workers = 1;
};

struct SignSearchResult {
  std::vector<int> signs;  // colex order of Lambda(m,n), signs[0] = +1
  NormEstimate norm;
  double surrogate = 0.0;
  bool exact_norm = false;  // m = 1: the norm is the dual l_{p'} norm
};

/// Simulated annealing over sign patterns minimizing the l_p sup-norm of
/// sum eps_alpha (m!/alpha!) z^alpha. `budget` is the number of sweeps per chain.
SignSearchResult sign_search(int m, int n, const Exponent& p, std::size_t budget, std::uint64_t seed,
                             const SignSearchConfig& cfg = {});

/// n^{m(1-1/q)} / norm_p.
double chi_lower_flat(int m, int n, const Exponent& q, double norm_p);

struct BruteConfig {
  std::size_t max_terms = 50;
  int finalists = 6;
  int polish_steps = 40;
  OptimizerConfig screen{4, 80, 1e-9, 0, 1};
  OptimizerConfig full{};
  double slack = kDefaultSlack;
};

struct BruteChi {
  double raw = 0.0;
  double deflated = 0.0;
  std::string ensemble;  // family of the best polynomial
  HomPoly best{1, 0};
};

/// Best ratio majorant_sup(P,q)/sup_norm(P,p) over random P.
BruteChi brute_chi(int m, int n, const ExponentPair& e, int samples, std::uint64_t seed,
                   const BruteConfig& cfg = {});

struct BracketConfig {
  std::size_t sign_budget = 60;
  std::uint64_t seed = 0;
  SignSearchConfig sign{};
  bool use_brute = true;
  int brute_samples = 1000;
  BruteConfig brute{};
  LemmaBase base = LemmaBase::P;
  double slack = kDefaultSlack;
  unsigned workers = 1;
};

struct BoundBracket {
  int m = 0, n = 0;
  Exponent p, q;
  double lower = 1.0;
  double upper = 0.0;
  double lower_raw = 1.0;  // before slack deflation
  std::string lower_src;
  std::string upper_src;
  std::vector<std::string> flags;
};

/// Certified bracket for the constant at (m, n, p, q). Results are memoized
/// per instance and configuration.
BoundBracket chi_bracket(int m, int n, const ExponentPair& e, const BracketConfig& cfg = {});

struct LempolyRow {
  IndexTuple j;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct LempolyReport {
  std::vector<LempolyRow> rows;
  NormEstimate norm;
  bool all_pass = true;
};

/// Slice inequality for every j in J(m-1,n), with the estimated ||P||_p.
LempolyReport lempoly_check(const HomPoly& poly, const Exponent& p, double slack,
                            const OptimizerConfig& cfg = {});

}  // namespace bohrlab
