#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qairy/speccurve.hpp"

using namespace qairy;

namespace {

const Scalar I = Scalar::root_power(4, 1);

Bivariate mono(int a, int b, const Scalar& c) { return Bivariate::monomial(a, b, c); }

}  // namespace

TEST_CASE("gl4 curve") {
  auto c = curve_for(2, 2, 1);
  CHECK(c.polynomial == mono(2, 4, Scalar(4)) - mono(0, 0, Scalar(1)));
  REQUIRE(c.factors);
  REQUIRE(c.factors->size() == 2);
  // 2 y^2 x - (-i^j)^2
  CHECK((*c.factors)[0] == mono(1, 2, Scalar(2)) - mono(0, 0, (-I).pow(2)));
  CHECK((*c.factors)[1] == mono(1, 2, Scalar(2)) - mono(0, 0, (-I.pow(2)).pow(2)));
  CHECK((*c.factors)[0] == mono(1, 2, Scalar(2)) + mono(0, 0, Scalar(1)));
  CHECK(verify_factorization(c));
}

TEST_CASE("curve examples") {
  auto d = curve_for(3, 2, 2);
  CHECK(d.polynomial == mono(2, 6, Scalar(9)) - mono(0, 0, Scalar(1)));
  CHECK(d.factors->size() == 2);
  for (const auto& f : *d.factors) CHECK(f.terms().count({1, 3}) == 1);
  CHECK(verify_factorization(d));
  for (int n = 2; n <= 5; ++n) {
    auto u = curve_for(1, n, 1);
    CHECK(u.polynomial == mono(0, n, Scalar(1)) - mono(0, 0, Scalar(n % 2 ? -1 : 1)));
    CHECK(verify_factorization(u));
  }
}

TEST_CASE("factorization holds for s = 1 and the odd s = 2 family") {
  for (int rho = 1; rho <= 4; ++rho)
    for (int n = 2; n <= 4; ++n) {
      auto c = curve_for(rho, n, 1);
      CHECK(c.factors->size() == static_cast<std::size_t>(n));
      CHECK(verify_factorization(c));
    }
  for (int rho : {3, 5, 7}) CHECK(verify_factorization(curve_for(rho, 2, 2)));
}

TEST_CASE("tampered factors fail") {
  auto c = curve_for(2, 2, 1);
  (*c.factors)[0] = mono(1, 2, Scalar(2)) - mono(0, 0, Scalar(1));
  CHECK_FALSE(verify_factorization(c));
  c.factors.reset();
  CHECK_THROWS_AS(verify_factorization(c), std::invalid_argument);
}

TEST_CASE("rejected data has no curve") {
  CHECK_THROWS_AS(curve_for(2, 2, 2), NotAdmissible);
  CHECK_THROWS_AS(curve_for(1, 3, 2), NotAdmissible);
  CHECK_THROWS_AS(curve_for(1, 2, 3), NotAdmissible);
  CHECK_THROWS_AS(curve_for(1, 2, 2), NotAdmissible);
}

TEST_CASE("components parametrize their factors") {
  for (auto [rho, n, s] : {std::tuple{2, 2, 1}, {3, 3, 1}, {4, 2, 1}, {3, 2, 2}, {5, 2, 2}}) {
    auto c = curve_for(rho, n, s);
    auto comps = components_for(rho, n, s);
    REQUIRE(comps.size() == c.factors->size());
    for (std::size_t j = 0; j < comps.size(); ++j) {
      CHECK(substitute((*c.factors)[j], comps[j]).empty());
      CHECK(substitute(c.polynomial, comps[j]).empty());
      if (comps.size() > 1) CHECK_FALSE(substitute((*c.factors)[j], comps[(j + 1) % comps.size()]).empty());
    }
  }
}

TEST_CASE("omega01 and the dilaton shift") {
  auto a = omega01({5, 2, Scalar(1)});
  CHECK(a.coefficient == Scalar(-1));
  CHECK(a.exponent == 1);
  auto b = omega01({2, 1, I});
  CHECK(b.coefficient == -I);
  CHECK(b.exponent == 0);
  auto c = omega01({3, 2, Scalar(-1)});
  CHECK(c.coefficient == Scalar(1));
  CHECK(c.exponent == 1);
  auto d = dilaton_from_omega01(Scalar(-1), 2);
  CHECK(d.s == 3);
  CHECK(d.Q == Scalar(1));
  for (int rho = 1; rho <= 4; ++rho)
    for (int n = 2; n <= 4; ++n)
      for (const auto& pc : components_for(rho, n, 1)) {
        auto o = omega01(pc);
        auto back = dilaton_from_omega01(o.coefficient, o.exponent);
        CHECK(back.s == pc.s);
        CHECK(back.Q == pc.Q);
        auto again = omega01({pc.rho, back.s, back.Q});
        CHECK(again.coefficient == o.coefficient);
        CHECK(again.exponent == o.exponent);
      }
  CHECK_THROWS_AS(dilaton_from_omega01(Scalar(1), -1), std::invalid_argument);
}
