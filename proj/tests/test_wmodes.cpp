#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qairy/wmodes.hpp"

using namespace qairy;

namespace {

GradedOperator K(int j, int p, Window w, int symbols) { return GradedOperator::mode({j, p}, w, symbols); }

// Swap cycles 1 and 2 of an operator with n = 2 (C_2 = -C_1).
GradedOperator swap_cycles(const GradedOperator& a) {
  auto flip = [](std::vector<Mode> v) {
    for (auto& m : v) m.cycle = 3 - m.cycle;
    std::sort(v.begin(), v.end());
    return v;
  };
  GradedOperator out(a.window());
  for (const auto& [sig, c] : a.terms()) {
    std::vector<Scalar::Term> terms = c.terms();
    for (auto& t : terms)
      if (!t.monomial.empty() && t.monomial[0] % 2)
        for (auto& q : t.coeffs) q = -q;
    out.add({sig.hbar_half, flip(sig.creators), flip(sig.annihilators)},
            Scalar::from_terms(c.order(), c.symbols(), terms));
  }
  return out;
}

}  // namespace

TEST_CASE("Psi coefficients") {
  const int a[] = {4, -2}, b[] = {3, -1};
  CHECK(psi_coefficient(2, 0, a) == Scalar(1));
  CHECK(psi_coefficient(2, 0, b) == Scalar(-1));
  CHECK(psi_coefficient(2, 1, {}) == Scalar(Rational(-1, 4)));
  const int one[] = {7};
  CHECK(psi_coefficient(1, 0, one) == Scalar(1));
  CHECK_THROWS_AS(psi_coefficient(3, 0, one), UnsupportedRho);
  CHECK_THROWS_AS(psi_coefficient(2, 0, std::vector<int>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("registered providers extend the supported cycle lengths") {
  struct Dummy : PsiProvider {
    int rho() const override { return 5; }
    Scalar psi(int, std::span<const int>) const override { return Scalar(7); }
  };
  CHECK_FALSE(has_psi_provider(5));
  register_psi_provider(std::make_shared<Dummy>());
  const int p[] = {5};
  CHECK(psi_coefficient(5, 0, p) == Scalar(7));
}

TEST_CASE("cycle modes of small twists") {
  const Window w{8, 4};
  auto untwisted = TwistSpec::with_root_shifts(1, 2, 1);
  CHECK(cycle_mode(untwisted, 1, 1, 5, w) == K(1, 5, w, 2));
  CHECK(cycle_mode(untwisted, 2, 1, -3, w) == K(2, -3, w, 2));
  auto two = TwistSpec::with_root_shifts(2, 2, 1);
  CHECK(cycle_mode(two, 1, 1, 3, w) == K(1, 6, w, 2));
  // hbar constant of W^{j,2}_1
  auto w2 = cycle_mode(two, 2, 2, 1, w);
  auto it = w2.terms().find(Signature{2, {}, {}});
  REQUIRE(it != w2.terms().end());
  CHECK(it->second.c_free_part() == Scalar(Rational(-1, 8)));
  CHECK(it->second - it->second.c_free_part() == Scalar(Rational(1, 2)) * Scalar::symbol(2, 2).pow(2));
  CHECK(w2.min_degree() == 2);
  CHECK(w2.max_degree() == 2);
  CHECK_THROWS_AS(cycle_mode(two, 1, 2, 0, Window{8, 1}), WindowTooSmall);
}

TEST_CASE("composite modes of two 2-cycles") {
  const Window w{6, 4};
  auto spec = TwistSpec::with_root_shifts(2, 2, 1);
  for (int m = -2; m <= 3; ++m) {
    CAPTURE(m);
    CHECK(composite_mode(spec, 1, m, w) == cycle_mode(spec, 1, 1, m, w) + cycle_mode(spec, 2, 1, m, w));
    GradedOperator expect = (cycle_mode(spec, 1, 2, m, w) + cycle_mode(spec, 2, 2, m, w)) *
                            Scalar(Rational(1, 2));
    for (int m1 = -10; m1 <= 10; ++m1)
      expect += normal_order_product(cycle_mode(spec, 1, 1, m1, w), cycle_mode(spec, 2, 1, m - 1 - m1, w));
    CHECK(composite_mode(spec, 2, m, w) == expect);
  }
}

TEST_CASE("untwisted composite modes are elementary symmetric sums") {
  const Window w{4, 3};
  auto spec = TwistSpec::with_root_shifts(1, 3, 1);
  for (int m = -2; m <= 2; ++m) {
    GradedOperator expect(w);
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b)
        for (int m1 = -4; m1 <= 4; ++m1) {
          const int m2 = m - 1 - m1;
          if (std::abs(m2) > 4) continue;
          expect += normal_order_product(K(a, m1, w, 3), K(b, m2, w, 3));
        }
    CHECK(composite_mode(spec, 2, m, w) == expect);
  }
}

TEST_CASE("window monotonicity") {
  auto spec = TwistSpec::with_root_shifts(2, 2, 1);
  for (int i = 1; i <= 4; ++i) {
    auto small = composite_mode(spec, i, 2, Window{3, 4});
    auto big = composite_mode(spec, i, 2, Window{5, 4});
    CHECK(big.restricted(3) == small);
    for (const auto& [sig, c] : small.terms()) CHECK(big.terms().at(sig) == c);
  }
}

TEST_CASE("composite modes are symmetric under relabeling cycles") {
  auto spec = TwistSpec::with_root_shifts(2, 2, 1);
  for (int i = 1; i <= 4; ++i)
    for (int m = -1; m <= 2; ++m) {
      auto a = composite_mode(spec, i, m, Window{4, 4});
      CHECK(swap_cycles(a) == a);
    }
}

TEST_CASE("reindexing") {
  CHECK(reindex(TwistSpec::with_root_shifts(2, 2, 1), 3) == std::pair{1, 1});
  CHECK(reindex(TwistSpec::with_root_shifts(2, 2, 1), 2) == std::pair{2, 0});
  CHECK(reindex(TwistSpec::with_root_shifts(3, 3, 1), 7) == std::pair{1, 2});
  CHECK_THROWS_AS(reindex(TwistSpec::with_root_shifts(2, 2, 1), 5), std::out_of_range);
}
