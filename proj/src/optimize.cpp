#include "bohrlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "bohrlab/errors.hpp"
#include "bohrlab/parallel.hpp"

namespace bohrlab {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;

double real_dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }
double real_dot(double a, double b) { return a * b; }
double modulus(Complex a) { return std::abs(a); }
double modulus(double a) { return std::abs(a); }

// Euclidean projection onto the simplex {x >= 0, sum x = 1}.
void project_simplex(std::vector<double>& x) {
  std::vector<double> s(x);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) theta = t;
  }
  for (double& v : x) v = std::max(v - theta, 0.0);
}

// Maps nonnegative moduli onto the unit sphere of l_p.
void project_moduli(std::vector<double>& x, const Exponent& p) {
  if (p.is_infinite()) {
    std::fill(x.begin(), x.end(), 1.0);
    return;
  }
  if (p.is_one()) {
    project_simplex(x);
    return;
  }
  const double norm = lp_norm(std::span<const double>(x), p);
  if (!(norm > 0.0)) {
    const double flat = std::pow(static_cast<double>(x.size()), -p.inv());
    std::fill(x.begin(), x.end(), flat);
    return;
  }
  for (double& v : x) v /= norm;
}

void project(std::vector<Complex>& z, const Exponent& p) {
  thread_local std::vector<double> mod;
  mod.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) mod[i] = std::abs(z[i]);
  project_moduli(mod, p);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = std::abs(z[i]);
    z[i] = r > 0.0 ? z[i] * (mod[i] / r) : Complex(mod[i], 0.0);
  }
}

void project(std::vector<double>& x, const Exponent& p) {
  for (double& v : x) v = std::max(v, 0.0);
  project_moduli(x, p);
}

// For 1 < p < inf, removes from grad its component along the normal
// |z_i|^{p-2} z_i of the l_p sphere, so radial rescaling after a step does
// not undo it. Elsewhere the projection handles the constraint.
template <class T>
void tangent_direction(const std::vector<T>& z, const std::vector<T>& grad, const Exponent& p,
                       std::vector<T>& dir) {
  dir = grad;
  if (p.is_infinite() || p.is_one()) return;
  const double pe = p.value();
  double gn = 0.0, nn = 0.0;
  thread_local std::vector<T> normal;
  normal.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = modulus(z[i]);
    normal[i] = r > 0.0 ? z[i] * std::pow(r, pe - 2.0) : T(0);
    gn += real_dot(grad[i], normal[i]);
    nn += std::norm(normal[i]);
  }
  if (!(nn > 0.0)) return;
  for (std::size_t i = 0; i < z.size(); ++i) dir[i] = grad[i] - (gn / nn) * normal[i];
}

struct RestartResult {
  double objective = -1.0;
  std::vector<double> moduli;
  std::size_t index = 0;
  bool converged = false;
};

// Projected ascent from z, maximizing obj(z, grad). Returns the final
// objective; z holds the final point.
template <class T, class Obj>
std::pair<double, bool> ascend(std::vector<T>& z, const Exponent& p, const OptimizerConfig& cfg,
                               Obj& obj) {
  const std::size_t n = z.size();
  std::vector<T> grad(n), trial(n), trial_grad(n);
  project(z, p);
  double f = obj(z, grad);
  double step = 0.5;
  std::vector<T> dir(n);
  for (int it = 0; it < cfg.max_iters; ++it) {
    tangent_direction(z, grad, p, dir);
    double gnorm = 0.0;
    for (const T& g : dir) gnorm += std::norm(g);
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) return {f, true};
    bool accepted = false;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] + (step / gnorm) * dir[i];
      project(trial, p);
      double predicted = 0.0;
      for (std::size_t i = 0; i < n; ++i) predicted += real_dot(grad[i], trial[i] - z[i]);
      const double ft = obj(trial, trial_grad);
      if (ft > f && ft >= f + kArmijo * std::max(predicted, 0.0)) {
        const double gain = ft - f;
        z.swap(trial);
        grad.swap(trial_grad);
        f = ft;
        accepted = true;
        step = std::min(2.0 * step, 2.0);
        if (gain <= cfg.tol * std::max(1.0, std::abs(f))) return {f, true};
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return {f, true};
  }
  return {f, false};
}

template <class T>
std::vector<T> start_point(std::size_t index, std::size_t n, const Exponent& p, std::uint64_t seed) {
  std::vector<T> z(n, T(0));
  const bool coord_starts = !p.is_infinite();
  if (index == 0) {
    std::fill(z.begin(), z.end(), T(1));
    return z;
  }
  if (coord_starts && index <= n) {
    z[index - 1] = T(1);
    return z;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
  const double shape = p.is_infinite() ? 1.0 : 2.0 * p.inv();
  std::gamma_distribution<double> gamma(shape, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = p.is_infinite() ? 1.0 : std::pow(gamma(rng), p.inv());
    if constexpr (std::is_same_v<T, Complex>) {
      z[i] = std::polar(r, phase(rng));
    } else {
      z[i] = r;
    }
  }
  return z;
}

// Runs all restarts and merges them: maximum objective, ties broken by the
// lexicographically smallest witness moduli.
template <class T, class MakeObj>
std::pair<std::vector<T>, NormEstimate> multistart(std::size_t n, const Exponent& p,
                                                   const OptimizerConfig& cfg, MakeObj make_obj) {
  if (cfg.restarts <= 0 || cfg.max_iters <= 0) {
    throw BudgetExceeded("optimizer budget is zero");
  }
  const std::size_t count = static_cast<std::size_t>(cfg.restarts);
  std::vector<RestartResult> results(count);
  std::vector<std::vector<T>> points(count);
  parallel_for(count, cfg.workers, [&](std::size_t k) {
    auto obj = make_obj();
    std::vector<T> z = start_point<T>(k, n, p, cfg.seed + k);
    auto [f, conv] = ascend(z, p, cfg, obj);
    RestartResult& r = results[k];
    r.objective = std::isfinite(f) ? f : -1.0;
    r.converged = conv;
    r.index = k;
    r.moduli.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.moduli[i] = modulus(z[i]);
    points[k] = std::move(z);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < count; ++k) {
    const auto& a = results[k];
    const auto& b = results[best];
    if (a.objective > b.objective || (a.objective == b.objective && a.moduli < b.moduli)) best = k;
  }
  double second = -1.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (k == best) continue;
    second = std::max(second, results[k].objective);
  }
  NormEstimate est;
  est.restarts = cfg.restarts;
  est.converged = results[best].converged;
  const double top = results[best].objective;
  est.gap = (count > 1 && top > 0.0) ? std::max(0.0, (top - second) / top) : 0.0;
  return {points[best], est};
}

void check_finite(const HomPoly& poly) {
  for (const auto& [alpha, c] : poly.terms()) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()),
            "non-finite coefficient at " + alpha.str());
  }
}

CVector to_complex(const std::vector<double>& x) { return CVector(x.begin(), x.end()); }

}  // namespace

double lp_norm(std::span<const Complex> z, const Exponent& p) {
  std::vector<double> mod(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) mod[i] = std::abs(z[i]);
  return lp_norm(std::span<const double>(mod), p);
}

double lp_norm(std::span<const double> x, const Exponent& p) {
  double mx = 0.0;
  for (double v : x) mx = std::max(mx, std::abs(v));
  if (p.is_infinite() || mx == 0.0) return mx;
  const double pv = p.value();
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / mx, pv);
  return mx * std::pow(s, 1.0 / pv);
}

NormEstimate sup_norm(const HomPoly& poly, const Exponent& p, const OptimizerConfig& cfg) {
  check_finite(poly);
  const std::size_t n = static_cast<std::size_t>(poly.vars());
  auto make = [&poly] {
    return [&poly, g = CVector(poly.vars())](const CVector& z, CVector& grad) mutable {
      const Complex v = poly.eval_grad(z, g);
      for (std::size_t i = 0; i < z.size(); ++i) grad[i] = 2.0 * v * std::conj(g[i]);
      return std::norm(v);
    };
  };
  auto [w, est] = multistart<Complex>(n, p, cfg, make);
  est.value = std::abs(poly.eval(w));
  est.witness = std::move(w);
  return est;
}

NormEstimate series_sup_norm(const TruncatedSeries& f, const Exponent& p, const OptimizerConfig& cfg) {
  for (const auto& part : f.parts()) check_finite(part);
  const std::size_t n = static_cast<std::size_t>(f.vars());
  auto make = [&f] {
    return [&f, g = CVector(f.vars())](const CVector& z, CVector& grad) mutable {
      const Complex v = f.eval_grad(z, g);
      for (std::size_t i = 0; i < z.size(); ++i) grad[i] = 2.0 * v * std::conj(g[i]);
      return std::norm(v);
    };
  };
  auto [w, est] = multistart<Complex>(n, p, cfg, make);
  est.value = std::abs(f.eval(w));
  est.witness = std::move(w);
  return est;
}

namespace {

// sum_k weight_k * majorant(P_k)(x) + constant over x >= 0 in the l_q sphere.
NormEstimate positive_sup(const std::vector<const HomPoly*>& parts, const std::vector<double>& weights,
                          double constant, int n, const Exponent& q, const OptimizerConfig& cfg) {
  auto value_at = [&](const std::vector<double>& x) {
    std::vector<double> g(x.size());
    double v = constant;
    for (std::size_t k = 0; k < parts.size(); ++k) v += weights[k] * parts[k]->majorant_eval(x, g);
    return v;
  };
  const std::size_t dim = static_cast<std::size_t>(n);
  if (q.is_infinite()) {
    if (cfg.restarts <= 0 || cfg.max_iters <= 0) throw BudgetExceeded("optimizer budget is zero");
    std::vector<double> ones(dim, 1.0);
    NormEstimate est;
    est.value = value_at(ones);
    est.witness = to_complex(ones);
    est.restarts = 1;
    est.converged = true;
    return est;
  }
  auto make = [&] {
    return [&, g = std::vector<double>(dim)](const std::vector<double>& x,
                                             std::vector<double>& grad) mutable {
      std::fill(grad.begin(), grad.end(), 0.0);
      double v = constant;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        v += weights[k] * parts[k]->majorant_eval(x, g);
        for (std::size_t i = 0; i < dim; ++i) grad[i] += weights[k] * g[i];
      }
      return v;
    };
  };
  auto [x, est] = multistart<double>(dim, q, cfg, make);
  est.value = value_at(x);
  est.witness = to_complex(x);
  return est;
}

}  // namespace

NormEstimate majorant_sup(const HomPoly& poly, const Exponent& q, const OptimizerConfig& cfg) {
  check_finite(poly);
  return positive_sup({&poly}, {1.0}, 0.0, poly.vars(), q, cfg);
}

NormEstimate bohr_sum(const TruncatedSeries& f, double r, const Exponent& q, const OptimizerConfig& cfg) {
  require(r >= 0.0 && std::isfinite(r), "radius must be nonnegative");
  std::vector<const HomPoly*> parts;
  std::vector<double> weights;
  double rk = 1.0;
  for (const auto& part : f.parts()) {
    check_finite(part);
    rk *= r;
    parts.push_back(&part);
    weights.push_back(rk);
  }
  if (f.vars() == 1) {
    // The l_q sphere of C^1 is the unit circle: closed form.
    if (cfg.restarts <= 0 || cfg.max_iters <= 0) throw BudgetExceeded("optimizer budget is zero");
    double v = std::abs(f.constant());
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (const auto& [alpha, c] : parts[k]->terms()) v += weights[k] * std::abs(c);
    }
    NormEstimate est;
    est.value = v;
    est.witness = {Complex(1.0, 0.0)};
    est.restarts = 1;
    est.converged = true;
    return est;
  }
  return positive_sup(parts, weights, std::abs(f.constant()), f.vars(), q, cfg);
}

std::vector<double> dec_rearrange(std::span<const Complex> z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    require(std::isfinite(z[i].real()) && std::isfinite(z[i].imag()), "non-finite entry");
    out[i] = std::abs(z[i]);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double x_infty_norm(std::span<const Complex> z) {
  require(z.size() >= 2, "X_inf norm needs length >= 2");
  const auto s = dec_rearrange(z);
  double prefix = s[0] * s[0];
  double best = 0.0;
  for (std::size_t k = 2; k <= s.size(); ++k) {
    prefix += s[k - 1] * s[k - 1];
    best = std::max(best, std::sqrt(prefix / std::log(static_cast<double>(k))));
  }
  return best;
}

double id_norm_q_to_xinfty(int n, const Exponent& q) {
  require(n >= 2, "identity norm needs n >= 2");
  require(q >= Exponent::integer(2), "identity norm needs q >= 2");
  const double e = 0.5 - q.inv();
  double best = 0.0;
  for (int k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    best = std::max(best, std::pow(kd, e) / std::sqrt(std::log(kd)));
  }
  return best;
}

std::pair<CVector, CVector> split_factorize(std::span<const Complex> z, const Exponent& p) {
  require(p >= Exponent::integer(2), "split factorization needs p >= 2");
  CVector y(z.size()), w(z.size());
  if (p.is_infinite()) {
    std::copy(z.begin(), z.end(), y.begin());
    std::fill(w.begin(), w.end(), Complex(1.0, 0.0));
    return {y, w};
  }
  // Exponents p/(p+2) = 1/(1+2/p) and 2/(p+2) = (2/p)/(1+2/p).
  const double ip = p.inv();
  const double ey = 1.0 / (1.0 + 2.0 * ip);
  const double ew = 2.0 * ip / (1.0 + 2.0 * ip);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = std::abs(z[i]);
    if (r == 0.0) continue;
    const Complex phase = z[i] / r;
    y[i] = phase * std::pow(r, ey);
    w[i] = Complex(std::pow(r, ew), 0.0);
  }
  return {y, w};
}

}  // namespace bohrlab
