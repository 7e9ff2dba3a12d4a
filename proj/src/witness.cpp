#include "bohrlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "bohrlab/errors.hpp"
#include "bohrlab/parallel.hpp"

namespace bohrlab {

namespace {

constexpr std::size_t kTableLimit = 4096;

// Surrogate evaluation points: a Kronecker sequence on the torus (p = inf)
// or mapped onto the l_p sphere, followed by the flat point.
std::vector<CVector> surrogate_points(int n, const Exponent& p, int samples) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                               59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
  const double two_pi = 2.0 * std::acos(-1.0);
  const std::size_t dim = static_cast<std::size_t>(2 * n);
  std::vector<double> step(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double root = std::sqrt(static_cast<double>(primes[d % 32]) + static_cast<double>(d / 32));
    step[d] = root - std::floor(root);
  }
  std::vector<CVector> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  for (int s = 0; s < samples; ++s) {
    CVector z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(s + 1);
      const double u0 = std::fmod(k * step[static_cast<std::size_t>(2 * i)], 1.0);
      const double u1 = std::fmod(k * step[static_cast<std::size_t>(2 * i + 1)], 1.0);
      const double r = p.is_infinite() ? 1.0 : std::pow(-std::log1p(-u1), p.inv());
      z[static_cast<std::size_t>(i)] = std::polar(r, two_pi * u0);
    }
    if (!p.is_infinite()) {
      const double norm = lp_norm(std::span<const Complex>(z), p);
      for (auto& v : z) v /= norm;
    }
    pts.push_back(std::move(z));
  }
  const double flat = std::pow(static_cast<double>(n), -p.inv());
  pts.emplace_back(static_cast<std::size_t>(n), Complex(flat, 0.0));
  return pts;
}

// mult_alpha * z_s^alpha for every alpha in colex order and every point.
class MonomialTable {
 public:
  MonomialTable(int m, int n, const std::vector<CVector>& pts) : pts_(pts), m_(m), n_(n) {
    LambdaStream s(m, n);
    while (s.next()) {
      exps_.insert(exps_.end(), s.exponents().begin(), s.exponents().end());
      mult_.push_back(to_double(multiplicity(s.exponents())));
    }
    count_ = mult_.size();
    stride_ = static_cast<std::size_t>(m) + 1;
    powers_.resize(pts.size() * static_cast<std::size_t>(n) * stride_);
    for (std::size_t sidx = 0; sidx < pts.size(); ++sidx) {
      for (int i = 0; i < n; ++i) {
        Complex* row = &powers_[(sidx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) * stride_];
        row[0] = 1.0;
        for (std::size_t e = 1; e < stride_; ++e) row[e] = row[e - 1] * pts[sidx][static_cast<std::size_t>(i)];
      }
    }
    if (count_ <= kTableLimit) {
      table_.resize(count_ * pts.size());
      for (std::size_t a = 0; a < count_; ++a) {
        for (std::size_t sidx = 0; sidx < pts.size(); ++sidx) table_[a * pts.size() + sidx] = compute(a, sidx);
      }
    }
  }

  std::size_t size() const { return count_; }
  std::size_t points() const { return pts_.size(); }

  void row(std::size_t a, CVector& out) const {
    out.resize(pts_.size());
    if (!table_.empty()) {
      std::copy_n(table_.begin() + static_cast<std::ptrdiff_t>(a * pts_.size()), pts_.size(), out.begin());
      return;
    }
    for (std::size_t sidx = 0; sidx < pts_.size(); ++sidx) out[sidx] = compute(a, sidx);
  }

 private:
  Complex compute(std::size_t a, std::size_t sidx) const {
    Complex v = mult_[a];
    for (int i = 0; i < n_; ++i) {
      const int e = exps_[a * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)];
      if (e) v *= powers_[(sidx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)) * stride_ +
                          static_cast<std::size_t>(e)];
    }
    return v;
  }

  const std::vector<CVector>& pts_;
  int m_, n_;
  std::vector<int> exps_;
  std::vector<double> mult_;
  std::size_t count_ = 0, stride_ = 1;
  CVector powers_;
  CVector table_;
};

void canonicalize(std::vector<int>& signs) {
  if (!signs.empty() && signs[0] < 0) {
    for (int& s : signs) s = -s;
  }
}

struct Candidate {
  double energy;
  std::vector<int> signs;
};

class Elite {
 public:
  explicit Elite(std::size_t capacity) : cap_(std::max<std::size_t>(capacity, 1)) {}

  void offer(double energy, std::vector<int> signs) {
    canonicalize(signs);
    if (items_.size() == cap_ && energy >= items_.back().energy) return;
    for (const auto& c : items_) {
      if (c.signs == signs) return;
    }
    Candidate cand{energy, std::move(signs)};
    auto pos = std::upper_bound(items_.begin(), items_.end(), cand,
                                [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
    items_.insert(pos, std::move(cand));
    if (items_.size() > cap_) items_.pop_back();
  }
  bool would_accept(double energy) const { return items_.size() < cap_ || energy < items_.back().energy; }
  const std::vector<Candidate>& items() const { return items_; }

 private:
  std::size_t cap_;
  std::vector<Candidate> items_;
};

double max_modulus(const CVector& v) {
  double e = 0.0;
  for (const auto& x : v) e = std::max(e, std::norm(x));
  return std::sqrt(e);
}

double flipped_energy(const CVector& values, const CVector& row, int sign) {
  double e = 0.0;
  const double f = -2.0 * sign;
  for (std::size_t s = 0; s < values.size(); ++s) e = std::max(e, std::norm(values[s] + f * row[s]));
  return std::sqrt(e);
}

void apply_flip(CVector& values, const CVector& row, int& sign) {
  const double f = -2.0 * sign;
  for (std::size_t s = 0; s < values.size(); ++s) values[s] += f * row[s];
  sign = -sign;
}

std::vector<Candidate> run_chain(const MonomialTable& table, std::size_t sweeps, std::uint64_t seed,
                                 const SignSearchConfig& cfg) {
  const std::size_t len = table.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, len - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> signs(len);
  for (auto& s : signs) s = (rng() & 1u) ? 1 : -1;

  CVector values(table.points(), Complex(0.0)), row;
  for (std::size_t a = 0; a < len; ++a) {
    table.row(a, row);
    for (std::size_t s = 0; s < values.size(); ++s) values[s] += static_cast<double>(signs[a]) * row[s];
  }
  double energy = max_modulus(values);
  std::vector<int> best = signs;
  double best_energy = energy;
  Elite elite(static_cast<std::size_t>(cfg.elite));
  elite.offer(energy, signs);

  double temp = cfg.t0;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t prop = 0; prop < len; ++prop) {
      const std::size_t a = pick(rng);
      table.row(a, row);
      const double trial = flipped_energy(values, row, signs[a]);
      const double rel = energy > 0.0 ? (trial - energy) / energy : trial - energy;
      const double u = unit(rng);
      if (rel <= 0.0 || u < std::exp(-rel / temp)) {
        apply_flip(values, row, signs[a]);
        energy = trial;
        if (energy < best_energy) {
          best_energy = energy;
          best = signs;
        }
        if (elite.would_accept(energy)) elite.offer(energy, signs);
      }
    }
    temp *= cfg.cooling;
  }

  // Greedy polish of the best pattern: first-improvement single flips.
  signs = best;
  std::fill(values.begin(), values.end(), Complex(0.0));
  for (std::size_t a = 0; a < len; ++a) {
    table.row(a, row);
    for (std::size_t s = 0; s < values.size(); ++s) values[s] += static_cast<double>(signs[a]) * row[s];
  }
  energy = max_modulus(values);
  for (int pass = 0; pass < 50; ++pass) {
    bool improved = false;
    for (std::size_t a = 0; a < len; ++a) {
      table.row(a, row);
      const double trial = flipped_energy(values, row, signs[a]);
      if (trial < energy * (1.0 - 1e-12)) {
        apply_flip(values, row, signs[a]);
        energy = trial;
        improved = true;
      }
    }
    if (!improved) break;
  }
  elite.offer(energy, signs);
  return elite.items();
}

}  // namespace

SignSearchResult sign_search(int m, int n, const Exponent& p, std::size_t budget, std::uint64_t seed,
                             const SignSearchConfig& cfg) {
  require(m >= 1 && n >= 1, "sign search needs m >= 1 and n >= 1");
  if (budget == 0) throw BudgetExceeded("sign search budget is zero");
  if (lambda_card(m, n) > cfg.cap) throw BudgetExceeded("sign search exceeds the index-set cap");
  require(cfg.chains >= 1 && cfg.samples >= 1 && cfg.cooling > 0.0 && cfg.cooling < 1.0 && cfg.t0 > 0.0,
          "invalid annealing configuration");
  const std::size_t len = static_cast<std::size_t>(to_double(lambda_card(m, n)));

  SignSearchResult out;
  if (m == 1) {
    // Every sign pattern has the same norm n^{1/p'}, attained at the flat point.
    out.signs.assign(len, 1);
    const HomPoly poly = sign_polynomial(m, n, out.signs);
    const CVector flat(static_cast<std::size_t>(n), Complex(std::pow(static_cast<double>(n), -p.inv()), 0.0));
    out.norm.value = std::abs(poly.eval(flat));
    out.norm.witness = flat;
    out.norm.restarts = 0;
    out.norm.converged = true;
    out.surrogate = out.norm.value;
    out.exact_norm = true;
    return out;
  }

  const auto pts = surrogate_points(n, p, cfg.samples);
  const MonomialTable table(m, n, pts);
  const std::size_t chains = static_cast<std::size_t>(cfg.chains);
  std::vector<std::vector<Candidate>> elites(chains);
  parallel_for(chains, cfg.workers, [&](std::size_t c) { elites[c] = run_chain(table, budget, seed + c, cfg); });

  std::vector<Candidate> pool;
  for (auto& e : elites) {
    for (auto& c : e) {
      if (std::none_of(pool.begin(), pool.end(), [&](const Candidate& x) { return x.signs == c.signs; })) {
        pool.push_back(std::move(c));
      }
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.signs < b.signs; });

  std::vector<NormEstimate> screen(pool.size());
  parallel_for(pool.size(), cfg.workers, [&](std::size_t k) {
    OptimizerConfig oc = cfg.screen_opt;
    oc.workers = 1;
    screen[k] = sup_norm(sign_polynomial(m, n, pool[k].signs), p, oc);
  });
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return screen[a].value < screen[b].value; });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(cfg.finalists, 1))));
  std::vector<NormEstimate> scores(order.size());
  parallel_for(order.size(), cfg.workers, [&](std::size_t k) {
    OptimizerConfig oc = cfg.final_opt;
    oc.workers = 1;
    scores[k] = sup_norm(sign_polynomial(m, n, pool[order[k]].signs), p, oc);
  });
  std::size_t pick = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k].value < scores[pick].value) pick = k;
  }
  const std::size_t best = order[pick];
  out.norm = scores[pick];
  out.signs = pool[best].signs;
  out.surrogate = pool[best].energy;
  return out;
}

double chi_lower_flat(int m, int n, const Exponent& q, double norm_p) {
  require(norm_p > 0.0 && std::isfinite(norm_p), "norm must be positive");
  require(m >= 0 && n >= 1, "flat bound needs m >= 0 and n >= 1");
  return std::pow(static_cast<double>(n), static_cast<double>(m) * (1.0 - q.inv())) / norm_p;
}

// ---------------------------------------------------------------------------

namespace {

HomPoly draw_polynomial(int kind, const std::vector<MultiIndex>& alphas, const std::vector<double>& mults,
                        int m, int n, std::mt19937_64& rng, std::size_t index) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  HomPoly::Terms terms;
  switch (kind) {
    case 0:
      for (const auto& a : alphas) terms.emplace(a, Complex(g(rng), g(rng)));
      break;
    case 1:
      for (std::size_t k = 0; k < alphas.size(); ++k) {
        terms.emplace(alphas[k], Complex((rng() & 1u) ? mults[k] : -mults[k], 0.0));
      }
      break;
    case 2:
      terms.emplace(alphas[(index / 4) % alphas.size()], Complex(1.0, 0.0));
      break;
    default: {
      for (const auto& a : alphas) {
        if (rng() & 1u) terms.emplace(a, Complex(g(rng), g(rng)));
      }
      if (terms.empty()) terms.emplace(alphas[rng() % alphas.size()], Complex(1.0, 0.0));
      break;
    }
  }
  return HomPoly(n, m, std::move(terms));
}

const char* ensemble_name(int kind) {
  switch (kind) {
    case 0: return "gaussian";
    case 1: return "rademacher-multiplicity";
    case 2: return "monomial";
    default: return "sparse-gaussian";
  }
}

double ratio(const HomPoly& poly, const ExponentPair& e, const OptimizerConfig& cfg) {
  const double den = sup_norm(poly, e.p, cfg).value;
  if (!(den > 0.0)) return 0.0;
  return majorant_sup(poly, e.q, cfg).value / den;
}

}  // namespace

BruteChi brute_chi(int m, int n, const ExponentPair& e, int samples, std::uint64_t seed, const BruteConfig& cfg) {
  require(m >= 1 && n >= 1, "brute oracle needs m >= 1 and n >= 1");
  require(samples >= 1, "brute oracle needs at least one sample");
  require(cfg.slack >= 1.0, "slack must be at least 1");
  if (lambda_card(m, n) > cfg.max_terms) throw BudgetExceeded("brute oracle exceeds its term cap");
  const auto alphas = enumerate_lambda(m, n);
  std::vector<double> mults;
  for (const auto& a : alphas) mults.push_back(to_double(multiplicity(a)));

  const std::size_t count = static_cast<std::size_t>(samples);
  std::vector<double> screen(count);
  parallel_for(count, cfg.screen.workers, [&](std::size_t k) {
    std::mt19937_64 rng(seed + k);
    const HomPoly poly = draw_polynomial(static_cast<int>(k % 4), alphas, mults, m, n, rng, k);
    OptimizerConfig oc = cfg.screen;
    oc.seed = cfg.screen.seed + k;
    oc.workers = 1;
    screen[k] = ratio(poly, e, oc);
  });
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return screen[a] > screen[b]; });

  BruteChi out;
  const std::size_t fin = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(cfg.finalists, 1)));
  for (std::size_t r = 0; r < fin; ++r) {
    const std::size_t k = order[r];
    std::mt19937_64 rng(seed + k);
    const int kind = static_cast<int>(k % 4);
    HomPoly poly = draw_polynomial(kind, alphas, mults, m, n, rng, k);
    const double full = ratio(poly, e, cfg.full);
    if (full > out.raw) {
      out.raw = full;
      out.ensemble = ensemble_name(kind);
      out.best = std::move(poly);
    }
  }

  // Local coefficient-space ascent from the best finalist.
  if (cfg.polish_steps > 0 && out.raw > 0.0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    HomPoly current = out.best;
    double current_score = ratio(current, e, cfg.screen);
    double scale = 0.0;
    for (const auto& [a, c] : current.terms()) scale = std::max(scale, std::abs(c));
    bool moved = false;
    for (int s = 0; s < cfg.polish_steps; ++s) {
      HomPoly::Terms terms;
      for (const auto& a : alphas) {
        Complex c = current.coeff(a);
        if (unit(rng) < 0.5) c += 0.15 * scale * Complex(g(rng), g(rng));
        terms.emplace(a, c);
      }
      HomPoly trial(n, m, std::move(terms));
      const double score = ratio(trial, e, cfg.screen);
      if (score > current_score) {
        current = std::move(trial);
        current_score = score;
        moved = true;
      }
    }
    if (moved) {
      const double full = ratio(current, e, cfg.full);
      if (full > out.raw) {
        out.raw = full;
        out.ensemble += "+polish";
        out.best = std::move(current);
      }
    }
  }
  out.deflated = out.raw / cfg.slack;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string opt_key(const OptimizerConfig& c) {
  std::ostringstream os;
  os << c.restarts << ',' << c.max_iters << ',' << c.tol << ',' << c.seed;
  return os.str();
}

std::string bracket_key(int m, int n, const ExponentPair& e, const BracketConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << m << '|' << n << '|' << e.p.str() << '|' << e.q.str() << '|' << c.sign_budget << '|' << c.seed << '|'
     << c.sign.cap << ',' << c.sign.chains << ',' << c.sign.samples << ',' << c.sign.elite << ',' << c.sign.t0
     << ',' << c.sign.cooling << ',' << c.sign.finalists << ',' << opt_key(c.sign.screen_opt) << ','
     << opt_key(c.sign.final_opt) << '|' << c.use_brute << '|' << c.brute_samples
     << '|' << c.brute.max_terms << ',' << c.brute.finalists << ',' << c.brute.polish_steps << ','
     << opt_key(c.brute.screen) << ',' << opt_key(c.brute.full) << ',' << c.brute.slack << '|'
     << static_cast<int>(c.base) << '|' << c.slack;
  return os.str();
}

std::string sign_key(int m, int n, const Exponent& p, const BracketConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << m << '|' << n << '|' << p.str() << '|' << c.sign_budget << '|' << c.seed << '|' << c.sign.cap << ','
     << c.sign.chains << ',' << c.sign.samples << ',' << c.sign.elite << ',' << c.sign.t0 << ',' << c.sign.cooling
     << ',' << c.sign.finalists << ',' << opt_key(c.sign.screen_opt) << ',' << opt_key(c.sign.final_opt);
  return os.str();
}

std::mutex memo_mutex;
std::map<std::string, BoundBracket> bracket_memo;
std::map<std::string, SignSearchResult> sign_memo;

}  // namespace

BoundBracket chi_bracket(int m, int n, const ExponentPair& e, const BracketConfig& cfg) {
  require(m >= 1 && n >= 1, "bracket needs m >= 1 and n >= 1");
  require(cfg.slack >= 1.0, "slack must be at least 1");
  const std::string key = bracket_key(m, n, e, cfg);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    if (auto it = bracket_memo.find(key); it != bracket_memo.end()) return it->second;
  }

  BoundBracket br;
  br.m = m;
  br.n = n;
  br.p = e.p;
  br.q = e.q;
  const ChiUpper up = chi_upper_best(m, n, e, cfg.base);
  br.upper = up.value;
  br.upper_src = up.source;
  br.lower = br.lower_raw = 1.0;
  br.lower_src = "trivial";

  const BigInt card = lambda_card(m, n);
  if (card <= cfg.sign.cap) {
    const std::string skey = sign_key(m, n, e.p, cfg);
    SignSearchResult sr;
    bool cached = false;
    {
      std::lock_guard<std::mutex> lock(memo_mutex);
      if (auto it = sign_memo.find(skey); it != sign_memo.end()) {
        sr = it->second;
        cached = true;
      }
    }
    if (!cached) {
      SignSearchConfig sc = cfg.sign;
      sc.workers = cfg.workers;
      sr = sign_search(m, n, e.p, cfg.sign_budget, cfg.seed, sc);
      std::lock_guard<std::mutex> lock(memo_mutex);
      sign_memo.emplace(skey, sr);
    }
    const double raw = chi_lower_flat(m, n, e.q, sr.norm.value);
    const double certified = sr.exact_norm ? raw : raw / cfg.slack;
    if (!sr.exact_norm) br.flags.push_back("estimate-based");
    if (certified > br.lower) {
      br.lower = certified;
      br.lower_raw = raw;
      br.lower_src = sr.exact_norm ? "witness-flat-exact" : "witness-flat";
    }
  }
  if (cfg.use_brute && card <= cfg.brute.max_terms) {
    BruteConfig bc = cfg.brute;
    bc.slack = cfg.slack;
    bc.screen.workers = cfg.workers;
    const BruteChi b = brute_chi(m, n, e, cfg.brute_samples, cfg.seed, bc);
    if (b.deflated > br.lower) {
      br.lower = b.deflated;
      br.lower_raw = b.raw;
      br.lower_src = "brute";
    }
  }
  // Both m = 1 endpoints are the same closed form computed two ways.
  if (up.source == "linear-exact" && br.lower > br.upper && br.lower <= br.upper * (1.0 + 1e-12)) {
    br.lower = br.upper;
  }
  if (br.lower > br.upper * (1.0 + 1e-9)) br.flags.push_back("inconsistent");

  std::lock_guard<std::mutex> lock(memo_mutex);
  bracket_memo.emplace(key, br);
  return br;
}

LempolyReport lempoly_check(const HomPoly& poly, const Exponent& p, double slack, const OptimizerConfig& cfg) {
  const int m = poly.degree();
  const int n = poly.vars();
  require(m >= 2, "slice inequality needs m >= 2");
  require(slack > 0.0, "slack must be positive");
  LempolyReport rep;
  rep.norm = sup_norm(poly, p, cfg);
  const Exponent pc = p.conjugate();
  JStream js(m - 1, n);
  std::vector<double> slice;
  while (js.next()) {
    const IndexTuple j = js.current();
    slice.clear();
    std::vector<int> full(j.indices().begin(), j.indices().end());
    full.push_back(0);
    for (int k = j.back(); k <= n; ++k) {
      full.back() = k;
      slice.push_back(std::abs(poly.coeff(tuple_to_alpha(IndexTuple(full), n))));
    }
    LempolyRow row;
    row.j = j;
    row.lhs = lp_norm(std::span<const double>(slice), pc);
    row.rhs = slack * lempoly_rhs(m, n, p, j) * rep.norm.value;
    row.pass = row.lhs <= row.rhs;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace bohrlab
