#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qairy/scalar.hpp"

using namespace qairy;

namespace {

Scalar random_element(std::mt19937& rng, int order, int symbols) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Scalar s;
  for (int e = 0; e < order; ++e) {
    s += Scalar(Rational(coef(rng), den(rng))) * Scalar::root_power(order, e);
  }
  for (int j = 1; j <= symbols; ++j) {
    s += Scalar(coef(rng)) * Scalar::symbol(symbols, j) * Scalar::root_power(order, coef(rng));
  }
  return s;
}

std::complex<double> root(int order, int e) { return std::polar(1.0, 2 * M_PI * e / order); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_degree(7) == 6);
  CHECK(cyclotomic_degree(30) == 8);
  CHECK_THROWS_AS(cyclotomic_degree(0), std::invalid_argument);
}

TEST_CASE("roots of unity") {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 12}) {
    CAPTURE(n);
    CHECK(Scalar::root_power(n, n).is_one());
    CHECK(Scalar::root_power(n, -1) * Scalar::root_power(n, 1) == Scalar(1));
    Scalar sum;
    for (int e = 0; e < n; ++e) sum += Scalar::root_power(n, e);
    CHECK(sum == Scalar(n == 1 ? 1 : 0));
    for (int e = 0; e < 2 * n; ++e) {
      CHECK(std::abs(Scalar::root_power(n, e).evaluate() - root(n, e)) < 1e-12);
    }
  }
  CHECK(Scalar::root_power(5, 3) * Scalar::root_power(5, 4) == Scalar::root_power(5, 2));
}

TEST_CASE("canonical representation") {
  Scalar a = Scalar::root_power(4, 1) + Scalar(Rational(1, 2));
  Scalar b = Scalar(Rational(1, 2)) + Scalar::root_power(4, 5);
  CHECK(a == b);
  CHECK(a.terms() == b.terms());
  CHECK((a - b).is_zero());
  CHECK(Scalar::root_power(6, 3) == Scalar(-1));
  CHECK(Scalar::root_power(6, 3).is_omega_free());
}

TEST_CASE("zero-mode symbols sum to zero") {
  for (int n = 2; n <= 5; ++n) {
    Scalar sum;
    for (int j = 1; j <= n; ++j) sum += Scalar::symbol(n, j);
    CHECK(sum.is_zero());
  }
  Scalar c = Scalar::symbol(3, 1);
  CHECK_FALSE(c.is_c_free());
  CHECK(c.c_free_part().is_zero());
  CHECK_THROWS_AS(c.inverse(), NotInvertible);
  CHECK_THROWS_AS(Scalar::symbol(3, 4), std::invalid_argument);
}

TEST_CASE("field errors") {
  CHECK_THROWS_AS(Scalar::root_power(3, 1) + Scalar::root_power(4, 1), MismatchedField);
  CHECK_THROWS_AS(Scalar::symbol(2, 1) * Scalar::symbol(3, 1), MismatchedField);
  CHECK_THROWS_AS(Scalar(0).inverse(), ZeroDivision);
  CHECK_THROWS_AS(Scalar(1) / Scalar(), ZeroDivision);
  CHECK_NOTHROW(Scalar::root_power(3, 1) * Scalar(Rational(2, 3)));
  CHECK_THROWS_AS(Scalar::root_power(3, 1).as_rational(), ScalarError);
  CHECK(Scalar(Rational(-3, 4)).as_rational() == Rational(-3, 4));
}

TEST_CASE("ring axioms and evaluation on random elements") {
  std::mt19937 rng(12345);
  for (int order : {1, 3, 4, 5, 6, 8}) {
    for (int symbols : {0, 3}) {
      for (int trial = 0; trial < 8; ++trial) {
        CAPTURE(order);
        CAPTURE(symbols);
        const Scalar a = random_element(rng, order, symbols);
        const Scalar b = random_element(rng, order, symbols);
        const Scalar c = random_element(rng, order, symbols);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar());
        std::vector<std::complex<double>> cv = {{0.3, 0.1}, {-0.7, 0.2}, {0.4, -0.3}};
        if (symbols == 3) cv[2] = -cv[0] - cv[1];
        const auto lhs = (a * b + c).evaluate(std::span(cv.data(), symbols));
        const auto rhs = a.evaluate(std::span(cv.data(), symbols)) * b.evaluate(std::span(cv.data(), symbols)) +
                         c.evaluate(std::span(cv.data(), symbols));
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("inverses") {
  std::mt19937 rng(7);
  for (int order : {1, 2, 5, 7, 9, 12}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Scalar a = random_element(rng, order, 0);
      if (a.is_zero()) continue;
      CHECK((a * a.inverse()).is_one());
    }
  }
  const Scalar q = Scalar::root_power(7, 1) + Scalar(1);
  CHECK(q / q == Scalar(1));
  CHECK(q.pow(3) == q * q * q);
  CHECK(Scalar::root_power(9, 2).pow(9).is_one());
}

TEST_CASE("worked values") {
  const Scalar w6 = Scalar::root_power(6, 1);
  CHECK(Scalar::root_power(6, 2) == w6 - Scalar(1));
  const Scalar i = Scalar::root_power(4, 1);
  CHECK((Scalar(1) + i).inverse() == (Scalar(1) - i) * Scalar(Rational(1, 2)));
  CHECK(Scalar(2).inverse() == Scalar(Rational(1, 2)));
  const Scalar w3 = Scalar::root_power(3, 1);
  CHECK(w3.inverse() == Scalar(-1) - w3);
  CHECK(Scalar::root_power(4, 5) == i);
  CHECK((Scalar::symbol(2, 1) + Scalar::symbol(2, 2)).is_zero());
}
