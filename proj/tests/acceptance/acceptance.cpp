// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sys/wait.h>
#include <iostream>
#include <sstream>
#include <string>

#include "bohrlab/bohr.hpp"
#include "bohrlab/cli.hpp"

using namespace bohrlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs the installed tool and captures stdout and the exit status.
std::pair<int, std::string> run_tool(const std::string& args) {
  const std::string cmd = std::string(BOHRLAB_TOOL) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const Exponent kOne = Exponent::integer(1);
const Exponent kTwo = Exponent::integer(2);
const Exponent kInf = Exponent::infinity();

std::vector<Exponent> five_exponents() {
  return {kOne, Exponent::ratio(4, 3), kTwo, Exponent::integer(4), kInf};
}

// Reduced search effort for the sweep grids.
BracketConfig sweep_config() {
  BracketConfig c;
  c.sign_budget = 10;
  c.sign.chains = 2;
  c.sign.samples = 256;
  c.sign.elite = 3;
  c.sign.finalists = 1;
  c.sign.screen_opt = {3, 60, 1e-9, 0, 1};
  c.sign.final_opt = {8, 150, 1e-12, 0, 1};
  c.brute_samples = 1000;
  c.brute.full = {16, 300, 1e-12, 0, 1};
  c.brute.polish_steps = 20;
  return c;
}

Verdict ac1() {
  const auto t0 = Clock::now();
  const auto [code, out] = run_tool("bohr oned --tol 1e-3 --workers 1");
  const double elapsed = seconds_since(t0);
  if (code != 0) return {false, "exit status " + std::to_string(code)};
  const Json r = Json::parse(out)["result"];
  const double lo = r["lower"].get<double>(), hi = r["upper"].get<double>();
  const bool ok = lo <= 1.0 / 3.0 && 1.0 / 3.0 <= hi && hi - lo <= 2e-3 && elapsed <= 60.0;
  return {ok, "[" + fmt(lo) + ", " + fmt(hi) + "] width " + fmt(hi - lo) + ", " +
                  std::to_string(r["failures"].get<int>()) + " Monte Carlo failures, " + fmt(elapsed) + " s"};
}

Verdict ac2() {
  const auto t0 = Clock::now();
  int bad = 0, total = 0;
  double worst = 0.0;
  BracketConfig bc = sweep_config();
  for (const auto& p : five_exponents()) {
    for (const auto& q : five_exponents()) {
      const ExponentPair e{p, q};
      for (int n : {2, 8, 32}) {
        ++total;
        const double exact = std::max(1.0, std::pow(n, e.q_conj().inv() - e.p_conj().inv()));
        const double brute = brute_chi(1, n, e, 1000, 7).raw;
        const double rel = std::abs(brute / exact - 1.0);
        worst = std::max(worst, rel);
        const RadiusBracket k = k_m_bracket(1, n, e, bc);
        const double recip = 1.0 / exact;
        const bool contains = k.lower <= recip * (1 + 1e-12) && recip <= k.upper * (1 + 1e-12);
        if (rel > 0.01 || !contains) ++bad;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {bad == 0 && elapsed <= 300.0, std::to_string(total - bad) + "/" + std::to_string(total) +
                                            " instances, worst relative error " + fmt(worst) + ", " +
                                            fmt(elapsed) + " s"};
}

Verdict ac3() {
  int bad = 0;
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      BigInt count = 0, total = 0;
      LambdaStream s(m, n);
      while (s.next()) {
        ++count;
        total += multiplicity(s.exponents());
        const MultiIndex a = s.current();
        if (tuple_to_alpha(alpha_to_tuple(a), n) != a) ++bad;
      }
      if (count != binomial(n + m - 1, m) || count != lambda_card(m, n)) ++bad;
      if (total != boost::multiprecision::pow(BigInt(n), m)) ++bad;
      for (const auto& j : enumerate_j(m, n)) {
        if (alpha_to_tuple(tuple_to_alpha(j, n)) != j) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(bad) + " mismatches over m <= 8, n <= 8"};
}

Verdict ac4() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 8; ++n) {
      for (double beta : {0.0, 0.5, 1.0, 2.0}) {
        const double a = j_sum_beta(m, n, beta, JSumMethod::Naive);
        const double b = j_sum_beta(m, n, beta, JSumMethod::Partition);
        worst = std::max(worst, std::abs(a - b) / a);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-12 && elapsed <= 60.0, "worst relative gap " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

Verdict ac5() {
  const auto t0 = Clock::now();
  const std::vector<Exponent> ex{Exponent::ratio(4, 3), Exponent::ratio(3, 2), kTwo};
  const BracketConfig bc = sweep_config();
  int brackets = 0, bracket_bad = 0, brutes = 0, brute_bad = 0;
  for (const auto& p : ex) {
    for (const auto& q : ex) {
      if (!(q <= p)) continue;
      const ExponentPair e{p, q};
      for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 16; ++n) {
          const BoundBracket b = chi_bracket(m, n, e, bc);
          ++brackets;
          if (b.lower > b.upper) {
            ++bracket_bad;
            std::cerr << "  bracket violation m=" << m << " n=" << n << " p=" << p.str() << " q=" << q.str()
                      << " lower=" << b.lower << " (" << b.lower_src << ") upper=" << b.upper << " ("
                      << b.upper_src << ")\n";
          }
          if (lambda_card(m, n) <= 50) {
            ++brutes;
            if (brute_chi(m, n, e, 1000, 11, bc.brute).raw > chi_upper_small_pq(m, n, e)) ++brute_bad;
          }
        }
      }
    }
  }
  return {bracket_bad == 0 && brute_bad == 0,
          std::to_string(brackets) + " brackets (" + std::to_string(bracket_bad) + " violations), " +
              std::to_string(brutes) + " brute checks (" + std::to_string(brute_bad) + " violations), " +
              fmt(seconds_since(t0)) + " s"};
}

Verdict ac6() {
  const ExponentPair e{kTwo, kTwo};
  double max_const = 0.0;
  std::string where;
  bool bounded = true, eventually = true;
  std::map<std::string, double> regime_max;
  for (int m = 1; m <= 12; ++m) {
    std::vector<double> seq;
    for (int k = 4; k <= 30; ++k) {
      const int n = 1 << k;
      const Envelope env = envelope_constant(m, n, e);
      seq.push_back(env.constant);
      if (k > 12) continue;
      if (!(env.constant <= 10.0)) bounded = false;
      for (const auto& [flag, name] : {std::pair{env.lemma1, "lemma1"}, std::pair{env.lemma2, "lemma2"},
                                       std::pair{env.lemma3, "lemma3"}}) {
        if (flag) regime_max[name] = std::max(regime_max[name], env.constant);
      }
      if (env.constant > max_const) {
        max_const = env.constant;
        where = "m=" + std::to_string(m) + ", n=2^" + std::to_string(k);
      }
    }
    // After its peak the sequence must not increase again.
    const auto peak = std::max_element(seq.begin(), seq.end()) - seq.begin();
    if (peak + 1 >= static_cast<long>(seq.size())) eventually = false;
    for (std::size_t i = static_cast<std::size_t>(peak) + 1; i < seq.size(); ++i) {
      if (seq[i] > seq[i - 1] * (1 + 1e-12)) eventually = false;
    }
  }
  std::string regimes;
  for (const auto& [name, v] : regime_max) regimes += " " + name + "=" + fmt(v);
  return {bounded && eventually, "max fitted constant " + fmt(max_const) + " at " + where + ";" + regimes};
}

Verdict ac7() {
  bool ok = true;
  const RegionReport inf = region_classify(kInf, kInf);
  ok = ok && inf.region == Region::II && inf.rate == "sqrt(log n)/sqrt(n)";
  const std::vector<Exponent> qs{Exponent::ratio(5, 4), Exponent::ratio(4, 3), Exponent::ratio(3, 2), kTwo,
                                 Exponent::integer(3), Exponent::integer(4), kInf};
  for (const auto& q : qs) {
    const RegionReport r = region_classify(kTwo, q);
    const Rational iii_n = Rational(1) - q.reciprocal();
    const Rational iii_log = Rational(1) - Rational(1, 2);
    ok = ok && r.n_exponent == iii_n && r.log_exponent == iii_log;
  }
  // The line 1/q = 1/2 + 1/p.
  for (const auto& [p, q] : {std::pair{Exponent::integer(3), Exponent::ratio(6, 5)},
                             std::pair{Exponent::integer(4), Exponent::ratio(4, 3)},
                             std::pair{Exponent::integer(6), Exponent::ratio(3, 2)}, std::pair{kInf, kTwo}}) {
    const RegionReport r = region_classify(p, q);
    ok = ok && r.region == Region::I && r.rate == "1" && r.boundary_I_II;
  }
  for (const auto& p : five_exponents()) {
    const RegionReport r = region_classify(p, kOne);
    ok = ok && r.region == Region::Q1 && r.rate == "1";
  }
  return {ok, "exact rational exponents and rate strings"};
}

Verdict ac8() {
  const auto t0 = Clock::now();
  int failures = 0;
  const OptimizerConfig norm_cfg{16, 300, 1e-12, 0, 1};
  const OptimizerConfig check_cfg{8, 200, 1e-12, 0, 1};
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + k % 3;
    const int M = 1 + (k / 3) % 4;
    const Exponent p = (k / 12) % 2 ? kInf : kTwo;
    const auto est = [&](const TruncatedSeries& f) { return series_sup_norm(f, p, norm_cfg).value; };
    const TruncatedSeries f = random_series(n, M, 5000 + static_cast<std::uint64_t>(k), 10000, est);
    if (!wiener_check(f, p, 1.0, check_cfg).all_pass) ++failures;
  }
  double worst = 0.0;
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    const WienerReport r = wiener_check(moebius_series(a, 120), kTwo, 1.0 + 1e-9, check_cfg, 1);
    worst = std::max(worst, std::abs(r.rows.front().norm - (1.0 - a * a)));
  }
  return {failures == 0 && worst <= 1e-9, std::to_string(failures) + "/1000 series failed, Moebius gap " +
                                              fmt(worst) + ", " + fmt(seconds_since(t0)) + " s"};
}

Verdict ac9() {
  int failures = 0, total = 0;
  const OptimizerConfig cfg{16, 300, 1e-12, 0, 1};
  for (int m : {2, 3}) {
    for (const auto& p : {kOne, kTwo, kInf}) {
      for (int k = 0; k < 50; ++k) {
        ++total;
        const HomPoly poly = random_hom_poly(m, 4, 20000 + 100 * static_cast<std::uint64_t>(m) + k);
        if (!lempoly_check(poly, p, 1.05, cfg).all_pass) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(total - failures) + "/" + std::to_string(total) + " polynomials pass"};
}

Verdict ac10() {
  const auto t0 = Clock::now();
  const BracketConfig bc = sweep_config();
  int checks = 0, bad = 0;
  double max_upper = 0.0;
  for (const auto& p : five_exponents()) {
    for (const auto& q : five_exponents()) {
      const ExponentPair e{p, q};
      for (int n : {1, 2, 4, 8, 16}) {
        const RadiusBracket k = k_bracket(n, e, 3, bc);
        max_upper = std::max(max_upper, k.upper);
        ++checks;
        if (k.upper > 1.0 / 3.0 + 1e-9 || k.lower > k.upper) ++bad;
        for (int m = 1; m <= 3; ++m) {
          ++checks;
          if (k.upper > k_m_bracket(m, n, e, bc).upper + 1e-9) ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(checks) + " comparisons, " + std::to_string(bad) + " violations, max K upper " +
                        fmt(max_upper) + ", " + fmt(seconds_since(t0)) + " s"};
}

Verdict ac11() {
  const auto a = run_tool("selftest --workers 1 --format csv");
  const auto b = run_tool("selftest --workers 1 --format csv");
  const std::string sweep =
      "sweep --kind bracket --m 1,2,3 --n 2,3,5 --p 2 --q 3/2 --budget 10 --samples 200 --workers 2 --format csv";
  const auto c = run_tool(sweep);
  const auto d = run_tool(sweep);
  const auto e = run_tool("bohr table --n-grid 1,2,4 --p inf --q inf --mmax 2 --budget 5 --samples 100");
  const auto f = run_tool("bohr table --n-grid 1,2,4 --p inf --q inf --mmax 2 --budget 5 --samples 100");
  const bool ok = a.first == 0 && a.second == b.second && c.first == 0 && c.second == d.second && e.first == 0 &&
                  e.second == f.second && !c.second.empty();
  return {ok, std::string("selftest ") + (a.second == b.second ? "identical" : "differs") + ", sweep " +
                  (c.second == d.second ? "identical" : "differs") + ", table " +
                  (e.second == f.second ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},  {"AC5", ac5},  {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    // Optional arguments select a subset of criteria by name.
    if (argc > 1 && std::find(argv + 1, argv + argc, name) == argv + argc) continue;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << name << ' ' << (v.pass ? "PASS" : "FAIL") << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
