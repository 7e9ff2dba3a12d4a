#include "doctest.h"

#include <cmath>
#include <random>

#include "bohrlab/bohr.hpp"
#include "bohrlab/errors.hpp"
#include "bohrlab/exponent.hpp"
#include "bohrlab/polynomial.hpp"
#include "bohrlab/serialize.hpp"

using namespace bohrlab;

namespace {

const Complex I(0.0, 1.0);

// Direct sum of a_alpha prod z_i^alpha_i using std::pow.
Complex naive_eval(const HomPoly& p, const CVector& z) {
  Complex s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    Complex t = c;
    for (int i = 0; i < p.vars(); ++i) t *= std::pow(z[static_cast<std::size_t>(i)], alpha.exponents()[i]);
    s += t;
  }
  return s;
}

CVector random_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector z(static_cast<std::size_t>(n));
  for (auto& v : z) v = Complex(g(rng), g(rng));
  return z;
}

}  // namespace

TEST_CASE("exponent parsing and conjugates") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("4/3") == Exponent::ratio(4, 3));
  CHECK(Exponent::parse("1.5") == Exponent::ratio(3, 2));
  CHECK(Exponent::parse("2") == Exponent::integer(2));
  CHECK(Exponent::integer(1).conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate().is_one());
  CHECK(Exponent::ratio(4, 3).conjugate() == Exponent::integer(4));
  CHECK(Exponent::integer(2) < Exponent::infinity());
  CHECK_THROWS_AS(Exponent::parse("1/2"), ValidationError);
  CHECK_THROWS_AS(Exponent::parse("abc"), ValidationError);
  const ExponentPair e{Exponent::integer(2), Exponent::ratio(4, 3)};
  REQUIRE(e.beta().has_value());
  CHECK(*e.beta() == Rational(1));
  CHECK_FALSE((ExponentPair{Exponent::integer(2), Exponent::integer(1)}.beta().has_value()));
}

TEST_CASE("evaluation examples and homogeneity") {
  const HomPoly p(2, 2, {{MultiIndex({1, 1}), 1.0}});
  CHECK(std::abs(p.eval(CVector{1.0, 1.0}) - 1.0) < 1e-15);
  const HomPoly s(2, 2, {{MultiIndex({2, 0}), 1.0}, {MultiIndex({0, 2}), 1.0}});
  CHECK(std::abs(s.eval(CVector{I, 1.0})) < 1e-15);
  CHECK_THROWS_AS(p.eval(CVector{1.0}), ValidationError);

  std::mt19937_64 rng(3);
  for (int m = 1; m <= 5; ++m) {
    const HomPoly r = random_hom_poly(m, 3, 100 + m);
    const CVector z = random_point(3, rng);
    CVector z2 = z;
    for (auto& v : z2) v *= 2.0;
    const Complex a = r.eval(z), b = r.eval(z2);
    CHECK(std::abs(b - std::pow(2.0, m) * a) <= 1e-12 * std::abs(b));
    CHECK(std::abs(a - naive_eval(r, z)) <= 1e-12 * std::abs(a));
  }
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(5);
  const HomPoly r = random_hom_poly(4, 3, 7);
  const CVector z = random_point(3, rng);
  CVector grad(3);
  const Complex v = r.eval_grad(z, grad);
  CHECK(std::abs(v - r.eval(z)) < 1e-12 * std::abs(v));
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    CVector zp = z, zm = z;
    zp[static_cast<std::size_t>(i)] += h;
    zm[static_cast<std::size_t>(i)] -= h;
    const Complex fd = (r.eval(zp) - r.eval(zm)) / (2.0 * h);
    CHECK(std::abs(fd - grad[static_cast<std::size_t>(i)]) <= 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("majorant") {
  const HomPoly p(2, 1, {{MultiIndex({1, 0}), 1.0}, {MultiIndex({0, 1}), -1.0}});
  const HomPoly mp = majorant(p);
  CHECK(mp.coeff(MultiIndex({0, 1})) == Complex(1.0));
  const HomPoly c(1, 1, {{MultiIndex({1}), Complex(3.0, -4.0)}});
  CHECK(std::abs(majorant(c).coeff(MultiIndex({1})) - 5.0) < 1e-15);
  CHECK(majorant(mp).terms() == mp.terms());

  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const HomPoly r = random_hom_poly(3, 3, 500 + k);
    const CVector z = random_point(3, rng);
    std::vector<double> x(3), g(3);
    for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = std::abs(z[static_cast<std::size_t>(i)]);
    CHECK(std::abs(r.eval(z)) <= majorant(r).majorant_eval(x, g) * (1.0 + 1e-12));
  }
}

TEST_CASE("weight restriction commutes with evaluation") {
  const HomPoly p(2, 2, {{MultiIndex({1, 1}), 1.0}});
  CHECK(std::abs(weight_restrict(p, CVector{2.0, 3.0}).coeff(MultiIndex({1, 1})) - 6.0) < 1e-15);
  CHECK(weight_restrict(p, CVector{1.0, 1.0}).terms() == p.terms());
  CHECK(std::abs(weight_restrict(p, CVector{0.0, 0.0}).eval(CVector{1.0, 1.0})) == 0.0);

  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const HomPoly r = random_hom_poly(1 + k % 4, 3, 900 + k);
    const CVector w = random_point(3, rng), z = random_point(3, rng);
    CVector wz(3);
    for (int i = 0; i < 3; ++i) wz[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    const Complex a = weight_restrict(r, w).eval(z), b = r.eval(wz);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
}

TEST_CASE("sign polynomials") {
  const HomPoly lin = sign_polynomial(1, 3, std::vector<int>{1, 1, 1});
  for (const auto& [alpha, c] : lin.terms()) CHECK(c == Complex(1.0));
  CHECK(lin.support_size() == 3);
  const HomPoly sq = sign_polynomial(2, 1, std::vector<int>{-1});
  CHECK(sq.coeff(MultiIndex({2})) == Complex(-1.0));
  REQUIRE(sq.exact().has_value());
  CHECK(sq.exact()->at(MultiIndex({2})) == -1);

  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const std::vector<int> plus(static_cast<std::size_t>(to_double(lambda_card(m, n))), 1);
      const HomPoly s = sign_polynomial(m, n, plus);
      const double t = 0.37;
      const Complex v = s.eval(CVector(static_cast<std::size_t>(n), Complex(t)));
      CHECK(std::abs(v - std::pow(n * t, m)) <= 1e-12 * std::pow(n * t, m));
      const Complex flat = s.eval(CVector(static_cast<std::size_t>(n), Complex(1.0 / n)));
      CHECK(std::abs(flat - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(sign_polynomial(2, 2, std::vector<int>{1, 1}), ValidationError);
  std::map<MultiIndex, int> partial{{MultiIndex({2, 0}), 1}};
  CHECK_THROWS_AS(sign_polynomial(2, 2, partial), ValidationError);
}

TEST_CASE("Moebius expansion") {
  const TruncatedSeries f0 = moebius_series(0.0, 4);
  CHECK(f0.constant() == Complex(0.0));
  CHECK(f0.part(1).coeff(MultiIndex({1})) == Complex(-1.0));
  CHECK(f0.part(2).coeff(MultiIndex({2})) == Complex(0.0));
  const TruncatedSeries f = moebius_series(0.5, 6);
  CHECK(std::abs(f.part(1).coeff(MultiIndex({1})) + 0.75) < 1e-15);
  // Closed form against the truncated sum inside the disc.
  const TruncatedSeries g = moebius_series(0.6, 80);
  const Complex z(0.3, -0.2);
  const Complex exact = (0.6 - z) / (1.0 - 0.6 * z);
  CHECK(std::abs(g.eval(CVector{z}) - exact) < 1e-12);
  CHECK_THROWS_AS(moebius_series(1.0, 3), ValidationError);
}

TEST_CASE("random series are deterministic and normalized") {
  const auto est = [](const TruncatedSeries& f) { return disc_sup_sampled(f, 256); };
  const TruncatedSeries a = random_series(1, 1, 42, 100, est);
  const TruncatedSeries b = random_series(1, 1, 42, 100, est);
  CHECK(a.constant() == b.constant());
  CHECK(a.part(1).terms() == b.part(1).terms());
  // For a0 + a1 z the sup on the disc is |a0| + |a1|.
  CHECK(std::abs(a.constant()) + std::abs(a.part(1).coeff(MultiIndex({1}))) <= 1.0 + 1e-4);
  CHECK_THROWS_AS(random_series(1, 1, 42, 0, est), BudgetExceeded);
  CHECK_THROWS_AS(random_series(3, 4, 1, 10, est), BudgetExceeded);
}

TEST_CASE("JSON round trip") {
  const HomPoly r = random_hom_poly(3, 2, 9);
  const HomPoly back = poly_from_json(Json::parse(to_json(r).dump()));
  CHECK(back.terms() == r.terms());
  const TruncatedSeries f = moebius_series(0.3, 5);
  const TruncatedSeries g = series_from_json(Json::parse(to_json(f).dump()));
  CHECK(g.constant() == f.constant());
  CHECK(g.part(5).terms() == f.part(5).terms());
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"n":2,"m":2,"terms":[{"alpha":[1,0],"re":1}]})")),
                  ValidationError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"n":2})")), ValidationError);
  CHECK(csv_cell(Json("a,b")) == "\"a,b\"");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
