#include "doctest.h"

#include <cmath>

#include "bohrlab/bohr.hpp"
#include "bohrlab/errors.hpp"

using namespace bohrlab;

namespace {

const Exponent kOne = Exponent::integer(1);
const Exponent kTwo = Exponent::integer(2);
const Exponent kInf = Exponent::infinity();

BracketConfig quick() {
  BracketConfig c;
  c.sign_budget = 15;
  c.brute_samples = 100;
  return c;
}

}  // namespace

TEST_CASE("homogeneous radius from the constant bracket") {
  for (int n : {1, 3, 8}) {
    const RadiusBracket k = k_m_bracket(1, n, {kTwo, kTwo}, quick());
    CHECK(k.lower == doctest::Approx(1.0));
    CHECK(k.upper == doctest::Approx(1.0));
  }
  const RadiusBracket half = k_m_bracket(1, 4, {kTwo, kInf}, quick());
  CHECK(half.lower == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.upper == doctest::Approx(0.5).epsilon(1e-12));

  const RadiusBracket k2 = k_m_bracket(2, 2, {kInf, kInf}, quick());
  const BruteChi b = brute_chi(2, 2, {kInf, kInf}, 200, 5);
  CHECK(k2.lower <= k2.upper);
  CHECK(k2.lower <= std::pow(b.raw, -0.5) * (1.0 + 1e-12));
  CHECK(k2.upper <= 1.0);

  for (int m = 1; m <= 12; ++m) {
    for (double x : {1.0, 2.5, 1e3, 7.77e8}) {
      const double back = std::pow(std::pow(x, -1.0 / m), -static_cast<double>(m));
      CHECK(std::abs(back - x) <= 1e-12 * x);
    }
  }
}

TEST_CASE("full radius bracket") {
  const RadiusBracket one = k_bracket(1, {kInf, kInf}, 3, quick());
  CHECK(one.lower <= 1.0 / 3.0 + 1e-12);
  CHECK(one.upper >= 1.0 / 3.0 - 1e-12);
  CHECK(!one.tail_grid.empty());
  CHECK(one.tail_grid.back().first == 30);

  for (const auto& e : {ExponentPair{kInf, kInf}, ExponentPair{kTwo, Exponent::ratio(4, 3)},
                        ExponentPair{Exponent::ratio(3, 2), kTwo}}) {
    for (int n : {1, 2, 4, 8}) {
      const RadiusBracket k = k_bracket(n, e, 3, quick());
      CHECK(0.0 <= k.lower);
      CHECK(k.lower <= k.upper);
      CHECK(k.upper <= 1.0 / 3.0 + 1e-9);
      for (int m = 1; m <= 3; ++m) CHECK(k.upper <= k_m_bracket(m, n, e, quick()).upper + 1e-9);
    }
  }
}

TEST_CASE("q = 1 lower endpoints stay away from zero") {
  BracketConfig cheap = quick();
  cheap.sign_budget = 4;
  cheap.sign.chains = 1;
  cheap.sign.samples = 128;
  cheap.sign.finalists = 1;
  cheap.sign.final_opt = {4, 100, 1e-9, 0, 1};
  for (const auto& p : {kOne, kTwo, kInf}) {
    double worst = 1.0;
    for (int n = 1; n <= 64; n *= 2) worst = std::min(worst, k_bracket(n, {p, kOne}, 4, cheap).lower);
    CHECK(worst >= 0.05);
  }
}

TEST_CASE("one-variable radius") {
  for (double a : {0.2, 0.5, 0.9}) {
    const TruncatedSeries f = moebius_series(a, 400);
    const double r = 1.0 / (1.0 + 2.0 * a);
    CHECK(bohr_sum(f, r, kInf).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  OneDConfig cfg;
  cfg.series = 300;
  const OneDBracket b = bohr_1d_bracket(1e-3, cfg);
  CHECK(b.bracket.lower <= 1.0 / 3.0);
  CHECK(b.bracket.upper >= 1.0 / 3.0);
  CHECK(b.bracket.upper - b.bracket.lower <= 2e-3);
  CHECK(b.failures == 0);
  CHECK(bohr_1d_violations(0.30, 2000, cfg) == 0);
  CHECK_THROWS_AS(bohr_1d_bracket(0.0, cfg), ValidationError);
  OneDConfig stingy = cfg;
  stingy.max_bisections = 3;
  CHECK_THROWS_AS(bohr_1d_bracket(1e-3, stingy), BudgetExceeded);
}

TEST_CASE("Wiener checker") {
  const OptimizerConfig oc{8, 200, 1e-12, 0, 1};
  for (double a : {0.1, 0.5, 0.8}) {
    const WienerReport r = wiener_check(moebius_series(a, 120), kTwo, 1.0 + 1e-9, oc, 1);
    CHECK(r.rows.front().norm == doctest::Approx(1.0 - a * a).epsilon(1e-9));
    CHECK(r.all_pass);
  }
  const WienerReport c = wiener_check(TruncatedSeries(3, Complex(0.4, 0.3), {}), kTwo, 1.0, oc);
  CHECK(c.rows.empty());
  CHECK(c.all_pass);

  for (int k = 0; k < 20; ++k) {
    const Exponent p = k % 2 ? kInf : kTwo;
    const auto est = [&](const TruncatedSeries& f) { return series_sup_norm(f, p, {16, 300, 1e-12, 0, 1}).value; };
    const TruncatedSeries f = random_series(3, 4, 1000 + k, 1000, est);
    CHECK(wiener_check(f, p, 1.0, {16, 300, 1e-12, 0, 1}).all_pass);
  }
  const TruncatedSeries big(1, Complex(0.9), {HomPoly(1, 1, {{MultiIndex({1}), 0.9}})});
  CHECK_THROWS_AS(wiener_check(big, kTwo, 1.0, oc), ValidationError);
}
