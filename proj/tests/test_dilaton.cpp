#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "qairy/dilaton.hpp"
#include "qairy/verify.hpp"

using namespace qairy;

namespace {

const Scalar I = Scalar::root_power(4, 1);

GradedOperator word(std::vector<Mode> creators, const Scalar& c, Window w) {
  GradedOperator op(w);
  std::sort(creators.begin(), creators.end());
  op.add({0, creators, {}}, c);
  return op;
}

}  // namespace

TEST_CASE("shift operator") {
  const Window w{4, 4};
  const Scalar q(Rational(3, 2));
  std::vector<Scalar> Q{q};
  auto shifted = shift_operator(word({{1, -2}}, Scalar(1), w), 2, Q);
  CHECK(shifted == word({{1, -2}}, Scalar(1), w) - GradedOperator::constant(q, w));
  auto sq = shift_operator(word({{1, -2}, {1, -2}}, Scalar(1), w), 2, Q);
  CHECK(sq == word({{1, -2}, {1, -2}}, Scalar(1), w) - word({{1, -2}}, Scalar(2) * q, w) +
                  GradedOperator::constant(q * q, w));
  auto ann = GradedOperator::mode({1, 2}, w, 1);
  CHECK(shift_operator(ann, 2, Q) == ann);
}

TEST_CASE("leading part of shifted cycle modes") {
  auto a = shifted_cycle_leading(2, 1, I, 1, 1, 3);
  CHECK(a.constant.is_zero());
  CHECK(a.linear == std::map<Mode, Scalar>{{{1, 6}, Scalar(1)}});
  // -kappa Q^2 at m = 0, kappa = 1/2 for two-cycles
  auto b = shifted_cycle_leading(2, 1, I, 1, 2, 0);
  CHECK(b.constant == Scalar(Rational(1, 2)));
  auto c = shifted_cycle_leading(3, 2, Scalar(5), 1, 2, 1);
  CHECK(c.linear == std::map<Mode, Scalar>{{{1, 2}, Scalar(5)}});
  CHECK_THROWS_AS(shifted_cycle_leading(4, 2, Scalar(1), 1, 1, 0), NonCoprime);
}

TEST_CASE("closed-form leading parts of the gl4 example") {
  TwistSpec spec{2, 2, 1, {I, Scalar(-1)}};
  for (int m = -3; m <= 3; ++m) {
    auto h1 = shifted_composite_leading(spec, 1, 0, m);
    CHECK(h1.linear == std::map<Mode, Scalar>{{{1, 2 * m}, Scalar(1)}, {{2, 2 * m}, Scalar(1)}});
    auto h2 = shifted_composite_leading(spec, 2, 0, m);
    CHECK(h2.linear ==
          std::map<Mode, Scalar>{{{1, 2 * m - 1}, I / Scalar(2)}, {{2, 2 * m - 1}, Scalar(Rational(-1, 2))}});
    auto h4 = shifted_composite_leading(spec, 2, 1, m);
    CHECK(h4.linear == std::map<Mode, Scalar>{{{1, 2 * m - 3}, -I / Scalar(8)},
                                              {{2, 2 * m - 3}, Scalar(Rational(-1, 8))}});
  }
}

TEST_CASE("closed form agrees with brute-force expansion on small cases") {
  for (int rho : {1, 2})
    for (int n : {1, 2})
      for (int s : {1, 2}) {
        if (std::gcd(rho, s) != 1) continue;
        auto spec = TwistSpec::with_root_shifts(rho, n, s);
        const Window w{12, 1};
        for (int k = 1; k <= rho; ++k)
          for (int l = 0; l < n; ++l)
            for (int m = -3; m <= 3; ++m) {
              CAPTURE(rho);
              CAPTURE(n);
              CAPTURE(s);
              CAPTURE(k);
              CAPTURE(l);
              CAPTURE(m);
              auto closed = shifted_composite_leading(spec, k, l, m).to_operator(w, n);
              auto brute = shifted_composite_mode(spec, k + l * rho, m, w, 1);
              CHECK(closed == brute);
            }
      }
}

TEST_CASE("factor-wise shifting equals shifting the expanded composite") {
  auto spec = TwistSpec::with_root_shifts(2, 2, 1);
  const Window w{5, 4};
  for (int i = 1; i <= 4; ++i)
    for (int m = -1; m <= 2; ++m)
      CHECK(shifted_composite_mode(spec, i, m, w, 4) ==
            shift_operator(composite_mode(spec, i, m, w), 1, spec.Q));
}

TEST_CASE("gl4 example operators") {
  TwistSpec spec{2, 2, 1, {I, Scalar(-1)}};
  const int W = 10;
  for (int i = 1; i <= 3; ++i)
    for (int m = -4; m <= 4; ++m) {
      CAPTURE(i);
      CAPTURE(m);
      CHECK(shifted_composite_mode(spec, i, m, Window{W, 4}, 4) == gl4_reference(i, m, W));
    }
}

TEST_CASE("shift matrices") {
  CHECK(shift_matrix(3, {Scalar(7)}) == Matrix{{Scalar(1)}});
  CHECK(shift_matrix(2, {I, Scalar(-1)}) == Matrix{{Scalar(1), Scalar(-1)}, {Scalar(1), Scalar(1)}});
  const Scalar q(5);
  auto sing = shift_matrix(1, {q, q});
  CHECK(sing == Matrix{{Scalar(1), -q}, {Scalar(1), -q}});
  CHECK_FALSE(invert_matrix(sing).has_value());
  CHECK(determinant(sing).is_zero());
  auto inv = invert_matrix(Matrix{{Scalar(1), Scalar(-1)}, {Scalar(1), Scalar(1)}});
  REQUIRE(inv.has_value());
  const Scalar h(Rational(1, 2));
  CHECK(*inv == Matrix{{h, h}, {-h, h}});
  CHECK(*invert_matrix(Matrix{{Scalar(1)}}) == Matrix{{Scalar(1)}});
}

TEST_CASE("root-of-unity shifts give Vandermonde matrices") {
  for (int rho = 1; rho <= 3; ++rho)
    for (int n = 2; n <= 6; ++n) {
      auto rs = root_of_unity_shifts(rho, n);
      CHECK(rs.M == shift_matrix(rho, rs.Q));
      for (int ell = 1; ell <= n; ++ell) CHECK(rs.M[n - 1][ell - 1].is_one());
      auto inv = invert_matrix(rs.M);
      REQUIRE(inv.has_value());
      const auto id = multiply(rs.M, *inv);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) CHECK(id[a][b] == Scalar(a == b ? 1 : 0));
    }
}

TEST_CASE("Vieta subset identity") {
  auto v = vieta_subset_identity(1, 2, 1, 2);
  CHECK(v.lhs == Scalar(-1));
  CHECK(v.rhs == Scalar(-1));
  auto e = vieta_subset_identity(1, 4, 3, 1);
  CHECK(e.lhs.is_one());
  CHECK(e.rhs.is_one());
  auto t = vieta_subset_identity(1, 3, 2, 3);
  CHECK(t.lhs == Scalar::root_power(3, 1));
  CHECK(t.rhs == Scalar::root_power(3, 1));
  for (int n = 2; n <= 6; ++n)
    for (int mu = 1; mu <= n; ++mu)
      for (int ell = 1; ell <= n; ++ell) {
        auto r = vieta_subset_identity(1, n, mu, ell);
        CHECK(r.lhs == r.rhs);
      }
}

TEST_CASE("normalization to Airy form") {
  TwistSpec spec{2, 2, 1, {I, Scalar(-1)}};
  std::map<int, int> bounds{{1, 1}, {2, 1}, {3, 2}, {4, 2}};
  auto ops = normalize_to_airy_form(spec, bounds, Window{4, 4});
  CHECK(ops.size() == 8);
  for (const auto& h : ops) CHECK(has_airy_shape(h, 4));
  CHECK(ops.front().target == Mode{1, 1});

  auto untwisted = TwistSpec::with_root_shifts(1, 2, 1);
  auto ops1 = normalize_to_airy_form(untwisted, {{1, 1}, {2, 1}}, Window{3, 2});
  CHECK(ops1.size() == 6);
  for (const auto& h : ops1) CHECK(has_airy_shape(h, 2));

  TwistSpec singular{1, 2, 1, {Scalar(1), Scalar(1)}};
  CHECK_THROWS_AS(normalize_to_airy_form(singular, {{1, 1}, {2, 1}}, Window{3, 2}), SingularBlock);
  TwistSpec zero{2, 2, 1, {Scalar(0), Scalar(1)}};
  CHECK_THROWS_AS(normalize_to_airy_form(zero, bounds, Window{3, 4}), ZeroShift);
  TwistSpec noncoprime{2, 2, 2, {I, Scalar(-1)}};
  CHECK_THROWS_AS(normalize_to_airy_form(noncoprime, bounds, Window{3, 4}), NonCoprime);
}
