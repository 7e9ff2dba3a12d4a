#include "bohrlab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bohrlab/errors.hpp"

namespace bohrlab {

RadiusBracket k_m_bracket(int m, int n, const ExponentPair& e, const BracketConfig& cfg) {
  const BoundBracket chi = chi_bracket(m, n, e, cfg);
  const double inv_m = -1.0 / static_cast<double>(m);
  RadiusBracket out;
  out.m = m;
  out.lower = std::pow(chi.upper, inv_m);
  out.lower_src = chi.upper_src;
  out.upper = std::min(1.0, std::pow(chi.lower, inv_m));
  out.upper_src = chi.lower_src;
  out.flags = chi.flags;
  return out;
}

namespace {

double log_lambda_card(int m, int n) { return std::log(to_double(lambda_card(m, n))); }

// m-th root of the generic coefficient bound; nonincreasing in m.
double generic_root(int m, int n, const Exponent& p) {
  return std::exp(log_lambda_card(m, n) / m + p.inv() * std::log(static_cast<double>(n)));
}

// Majorant of the m-th root of the lemma bound (after transfer), valid and
// nonincreasing for m >= 3:
// m^{1/m} e^{1/b + (1-1/b)/m} (|Lambda(m-1,n)|^{1/(m-1)})^{1/s'} n^{1/pt - 1/q}.
double lemma_tail_root(int m, int n, const ExponentPair& e, LemmaBase base) {
  const Exponent two = Exponent::integer(2);
  const Exponent pt = std::min(e.p, two);
  const bool direct = e.q <= pt;
  const Exponent s = direct ? e.q : pt;
  const double shift = direct ? 0.0 : pt.inv() - e.q.inv();
  const double ib = (base == LemmaBase::P ? pt : s).inv();
  const double md = static_cast<double>(m);
  const double log_root = std::log(md) / md + ib + (1.0 - ib) / md +
                          (1.0 - s.inv()) * log_lambda_card(m - 1, n) / (md - 1.0) +
                          shift * std::log(static_cast<double>(n));
  return std::exp(log_root);
}

}  // namespace

RadiusBracket k_bracket(int n, const ExponentPair& e, int m_max, const BracketConfig& cfg) {
  require(n >= 1, "radius bracket needs n >= 1");
  require(m_max >= 1, "radius bracket needs m_max >= 1");
  RadiusBracket out;
  out.m = 0;
  out.upper = 1.0 / 3.0;
  out.upper_src = "one-variable";
  double worst_root = 0.0;  // sup over computed m of the upper bound's m-th root
  std::string worst_src;
  for (int m = 1; m <= m_max; ++m) {
    const RadiusBracket km = k_m_bracket(m, n, e, cfg);
    if (km.upper < out.upper) {
      out.upper = km.upper;
      out.upper_src = "K_" + std::to_string(m) + ":" + km.upper_src;
    }
    const double root = 1.0 / km.lower;
    if (root > worst_root) {
      worst_root = root;
      worst_src = "K_" + std::to_string(m) + ":" + km.lower_src;
    }
    for (const auto& f : km.flags) {
      if (std::find(out.flags.begin(), out.flags.end(), f) == out.flags.end()) out.flags.push_back(f);
    }
  }

  // Tail m > m_max: both root bounds are nonincreasing, so their value at
  // the first tail degree bounds the whole tail.
  const int first = m_max + 1;
  for (int m = first; m <= 10 * m_max; m *= 2) out.tail_grid.emplace_back(m, generic_root(m, n, e.p));
  if (out.tail_grid.empty() || out.tail_grid.back().first != 10 * m_max) {
    out.tail_grid.emplace_back(10 * m_max, generic_root(10 * m_max, n, e.p));
  }
  double lemma_tail = 0.0;
  for (int m = first; m < 3; ++m) {
    lemma_tail = std::max(lemma_tail, std::pow(chi_upper_best(m, n, e, cfg.base).value, 1.0 / m));
  }
  lemma_tail = std::max(lemma_tail, lemma_tail_root(std::max(first, 3), n, e, cfg.base));
  out.tail_bound = std::min(generic_root(first, n, e.p), lemma_tail);
  if (out.tail_bound > worst_root) {
    worst_root = out.tail_bound;
    worst_src = "tail";
  }
  out.lower = 1.0 / (3.0 * worst_root);
  out.lower_src = worst_src;
  return out;
}

// ---------------------------------------------------------------------------

double disc_sup_sampled(const TruncatedSeries& f, int points) {
  require(f.vars() == 1, "disc sampling needs a one-variable series");
  require(points >= 1, "need at least one boundary point");
  std::vector<Complex> c{f.constant()};
  for (int k = 1; k <= f.max_degree(); ++k) c.push_back(f.part(k).coeff(MultiIndex(std::vector<int>{k})));
  const double two_pi = 2.0 * std::acos(-1.0);
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, two_pi * k / points);
    Complex v = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) v = v * z + c[i];
    best = std::max(best, std::norm(v));
  }
  return std::sqrt(best);
}

int bohr_1d_violations(double r, int count, const OneDConfig& cfg) {
  int failures = 0;
  const auto estimator = [&](const TruncatedSeries& f) { return disc_sup_sampled(f, cfg.circle_points); };
  OptimizerConfig oc;
  for (int k = 0; k < count; ++k) {
    const TruncatedSeries f = random_series(1, cfg.series_degree, cfg.seed + static_cast<std::uint64_t>(k),
                                            kDefaultStreamBudget, estimator);
    const double sup = disc_sup_sampled(f, cfg.circle_points);
    const double sum = bohr_sum(f, r, Exponent::infinity(), oc).value;
    if (sum > sup * (1.0 + 1e-12)) ++failures;
  }
  return failures;
}

OneDBracket bohr_1d_bracket(double tol, const OneDConfig& cfg) {
  require(tol > 0.0 && tol < 0.1, "tolerance must lie in (0, 0.1)");
  require(cfg.degree >= 1, "Moebius truncation must be positive");
  OneDBracket out;

  // Upper endpoint: a truncated Moebius expansion whose Bohr sum exceeds 1.
  // Its untruncated series has sup-norm 1 and a larger Bohr sum.
  std::vector<double> grid;
  for (int k = 1; k <= 99; ++k) grid.push_back(k / 100.0);
  for (int j = 3; j <= 9; ++j) {
    for (double c : {5.0, 2.0, 1.0}) grid.push_back(1.0 - c * std::pow(10.0, -j));
  }
  std::vector<TruncatedSeries> family;
  family.reserve(grid.size());
  for (double a : grid) family.push_back(moebius_series(a, cfg.degree));
  OptimizerConfig oc;
  auto witness = [&](double r) -> int {
    for (std::size_t k = 0; k < family.size(); ++k) {
      if (bohr_sum(family[k], r, Exponent::infinity(), oc).value > 1.0) return static_cast<int>(k);
    }
    return -1;
  };
  double lo = 0.0, hi = 1.0;
  require(witness(hi) >= 0, "no Moebius witness at r = 1");
  int steps = 0;
  while (hi - lo > tol / 4.0) {
    if (++steps > cfg.max_bisections) throw BudgetExceeded("bisection budget exhausted");
    const double mid = 0.5 * (lo + hi);
    (witness(mid) >= 0 ? hi : lo) = mid;
  }
  out.bracket.upper = hi;
  out.moebius_a = grid[static_cast<std::size_t>(witness(hi))];
  out.bracket.upper_src = "moebius-witness";

  // Lower endpoint: largest r with sup_t t + (1 - t^2) r/(1 - r) <= 1, which
  // bounds every Bohr sum through Wiener's coefficient inequality.
  auto wiener_ok = [](double r) {
    const double g = r / (1.0 - r);
    double worst = 1.0;  // t = 1
    const double ts = 1.0 / (2.0 * g);
    if (ts < 1.0) worst = std::max(worst, ts + (1.0 - ts * ts) * g);
    return worst <= 1.0;
  };
  lo = 0.0;
  hi = 0.5;
  steps = 0;
  while (hi - lo > tol / 4.0) {
    if (++steps > cfg.max_bisections) throw BudgetExceeded("bisection budget exhausted");
    const double mid = 0.5 * (lo + hi);
    (wiener_ok(mid) ? lo : hi) = mid;
  }
  out.bracket.lower = lo;
  out.bracket.lower_src = "wiener-coefficient-bound";
  out.checked = cfg.series;
  out.failures = bohr_1d_violations(lo, cfg.series, cfg);
  if (out.failures > 0) out.bracket.flags.push_back("monte-carlo-violation");
  if (out.bracket.upper - out.bracket.lower > 2.0 * tol) {
    throw BudgetExceeded("bracket width not reached");
  }
  return out;
}

// ---------------------------------------------------------------------------

WienerReport wiener_check(const TruncatedSeries& f, const Exponent& p, double slack, const OptimizerConfig& cfg,
                          int reduction_samples, double norm_tol) {
  require(slack > 0.0, "slack must be positive");
  WienerReport rep;
  rep.input_norm = series_sup_norm(f, p, cfg).value;
  if (rep.input_norm > 1.0 + norm_tol) {
    throw ValidationError("series is not normalized: estimated sup-norm " + std::to_string(rep.input_norm));
  }
  const double bound = slack * (1.0 - std::norm(f.constant()));
  const int n = f.vars();

  // Sample points z on the l_p sphere for the polydisc reduction w -> f(w.z).
  std::vector<CVector> zs;
  std::mt19937_64 rng(cfg.seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (int s = 0; s < reduction_samples; ++s) {
    CVector z(static_cast<std::size_t>(n));
    for (auto& v : z) v = std::polar(unit(rng) + 1e-3, two_pi * unit(rng));
    const double norm = lp_norm(std::span<const Complex>(z), p);
    for (auto& v : z) v /= norm;
    zs.push_back(std::move(z));
  }
  OptimizerConfig torus = cfg;
  torus.restarts = std::max(1, cfg.restarts / 4);

  for (int m = 1; m <= f.max_degree(); ++m) {
    WienerRow row;
    row.m = m;
    row.norm = sup_norm(f.part(m), p, cfg).value;
    for (const auto& z : zs) {
      row.reduced = std::max(row.reduced, sup_norm(weight_restrict(f.part(m), z), Exponent::infinity(), torus).value);
    }
    row.bound = bound;
    row.pass = row.norm <= bound && row.reduced <= bound;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace bohrlab
