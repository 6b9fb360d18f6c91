#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qairy/weyl.hpp"

using namespace qairy;

namespace {

const Window kWin{4, 12};

GradedOperator K(int cycle, int index) { return GradedOperator::mode({cycle, index}, kWin, 2); }

GradedOperator random_operator(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(-3, 3), cyc(1, 2), len(0, 3), coef(-3, 3);
  GradedOperator out(kWin);
  for (int t = 0; t < 3; ++t) {
    GradedOperator word = GradedOperator::constant(Scalar(coef(rng)), kWin);
    const int l = len(rng);
    for (int k = 0; k < l; ++k) word = normal_order_product(word, K(cyc(rng), idx(rng)));
    out += word;
  }
  return out;
}

Polynomial random_polynomial(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(1, 3), cyc(1, 2), len(0, 3), coef(-3, 3), hb(0, 2);
  Polynomial p;
  for (int t = 0; t < 4; ++t) {
    PolyKey k{hb(rng), {}};
    const int l = len(rng);
    for (int j = 0; j < l; ++j) k.vars.push_back({cyc(rng), idx(rng)});
    p += Polynomial::monomial(k, Scalar(coef(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("canonical commutation relations") {
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      for (int m = -3; m <= 3; ++m) {
        for (int n = -3; n <= 3; ++n) {
          GradedOperator expect(kWin);
          if (a == b && m + n == 0 && m != 0) expect.add({2, {}, {}}, Scalar(m));
          CHECK(operator_commutator(K(a, m), K(b, n)) == expect);
          CHECK(commutator_basic({a, m}, {b, n}, kWin) == expect);
        }
      }
    }
  }
}

TEST_CASE("wick product of a single pair") {
  // K_2 K_{-2} = K_{-2} K_2 + 2 hbar
  GradedOperator prod = normal_order_product(K(1, 2), K(1, -2));
  GradedOperator expect(kWin);
  expect.add({2, {{1, -2}}, {{1, 2}}}, Scalar(1));
  expect.add({2, {}, {}}, Scalar(2));
  CHECK(prod == expect);
  // (K_1)^2 (K_{-1})^2 = K_{-1}^2 K_1^2 + 4 hbar K_{-1} K_1 + 2 hbar^2
  GradedOperator a = normal_order_product(K(1, 1), K(1, 1));
  GradedOperator b = normal_order_product(K(1, -1), K(1, -1));
  GradedOperator p2 = normal_order_product(a, b);
  GradedOperator e2(kWin);
  e2.add({4, {{1, -1}, {1, -1}}, {{1, 1}, {1, 1}}}, Scalar(1));
  e2.add({4, {{1, -1}}, {{1, 1}}}, Scalar(4));
  e2.add({4, {}, {}}, Scalar(2));
  CHECK(p2 == e2);
}

TEST_CASE("grading degree is preserved by products") {
  std::mt19937 rng(99);
  for (int t = 0; t < 30; ++t) {
    GradedOperator a = random_operator(rng).homogeneous_part(2);
    GradedOperator b = random_operator(rng).homogeneous_part(1);
    GradedOperator p = normal_order_product(a, b);
    if (!p.is_zero()) {
      CHECK(p.min_degree() == 3);
      CHECK(p.max_degree() == 3);
    }
  }
}

TEST_CASE("associativity and Jacobi identity") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_operator(rng), b = random_operator(rng), c = random_operator(rng);
    CHECK(normal_order_product(normal_order_product(a, b), c) ==
          normal_order_product(a, normal_order_product(b, c)));
    const auto jac = operator_commutator(a, operator_commutator(b, c)) +
                     operator_commutator(b, operator_commutator(c, a)) +
                     operator_commutator(c, operator_commutator(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("products agree with composed differential operators") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto a = random_operator(rng), b = random_operator(rng);
    const auto f = random_polynomial(rng);
    CHECK(apply(normal_order_product(a, b), f) == apply(a, apply(b, f)));
  }
}

TEST_CASE("differential action of single modes") {
  // K_2 = hbar d/dx_2, K_{-2} = 2 x_2, K_0 = hbar^{1/2} C
  Polynomial x2 = Polynomial::monomial({0, {{1, 2}, {1, 2}}}, Scalar(1));
  CHECK(apply(K(1, 2), x2) == Polynomial::monomial({2, {{1, 2}}}, Scalar(2)));
  CHECK(apply(K(1, -2), Polynomial::one()) == Polynomial::monomial({0, {{1, 2}}}, Scalar(2)));
  CHECK(apply(K(1, 0), Polynomial::one()) == Polynomial::monomial({1, {}}, Scalar::symbol(2, 1)));
}

TEST_CASE("window handling") {
  CHECK_THROWS_AS(GradedOperator::mode({1, 5}, kWin, 1), WindowOverflow);
  GradedOperator small(Window{2, 2});
  small.add({0, {{1, -1}, {1, -1}}, {}}, Scalar(1));
  CHECK_THROWS_AS(normal_order_product(small, small), WindowOverflow);
  CHECK(product_truncated(small, small, 2).is_zero());
  CHECK(product_truncated(small, small, 4).size() == 1);
  small.add_truncated({0, {{1, -1}, {1, -1}, {1, -1}}, {}}, Scalar(1));
  CHECK(small.size() == 1);
  CHECK_THROWS_AS(small.set_window({0, 2}), WindowOverflow);
  CHECK_THROWS_AS(small.add({0, {}, {{1, 1}}}, Scalar(1)), std::invalid_argument);
}

TEST_CASE("commutator with a creator-only operator") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_operator(rng);
    GradedOperator g(kWin);
    const Polynomial p = random_polynomial(rng);
    for (const auto& [k, c] : p.terms()) {
      Signature sig{k.hbar_half, {}, {}};
      for (const auto& v : k.vars) sig.creators.push_back({v.cycle, -v.index});
      std::sort(sig.creators.begin(), sig.creators.end());
      g.add(sig, c);
    }
    CHECK(commutator_with_creators(a, g, 12) == operator_commutator(a, g));
    CHECK(commutator_with_creators(a, g, 5) == operator_commutator(a, g).truncated(5));
  }
  CHECK_THROWS_AS(commutator_with_creators(K(1, -1), K(1, 1), 4), std::invalid_argument);
}
