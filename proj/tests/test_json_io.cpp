#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qairy/json_io.hpp"

using namespace qairy;

TEST_CASE("scalar round trip") {
  const Scalar c1 = Scalar::symbol(3, 1), c3 = Scalar::symbol(3, 3);
  const std::vector<Scalar> xs{Scalar(0), Scalar(Rational(-7, 3)), Scalar::root_power(6, 2),
                               Scalar::root_power(5, 3) * c1 + c3 * c3, Scalar::root_power(12, 1) - Scalar(4)};
  for (const auto& x : xs) {
    const json j = to_json(x);
    CHECK(scalar_from_json(j) == x);
    CHECK(to_json(scalar_from_json(j)).dump() == j.dump());
  }
  CHECK(to_json(Scalar::root_power(4, 2)).at("N") == 1);
  CHECK(scalar_from_json(json(3)) == Scalar(3));
  CHECK(scalar_from_json(json("-2/6")) == Scalar(Rational(-1, 3)));
  CHECK_THROWS_AS(scalar_from_json(json("x")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(json::parse(R"({"N": 4, "terms": [{"omega_pow": 2, "num": "1", "den": "1",
      "c_monomial": []}]})")),
                  ParseError);
}

TEST_CASE("scalar terms are sorted") {
  const Scalar x = Scalar::root_power(5, 2) * Scalar::symbol(3, 2) + Scalar::root_power(5, 1);
  const auto terms = to_json(x).at("terms");
  for (std::size_t k = 1; k < terms.size(); ++k) {
    auto key = [](const json& t) { return std::pair(t.at("c_monomial").get<CMonomial>(), t.at("omega_pow").get<int>()); };
    CHECK(key(terms[k - 1]) < key(terms[k]));
  }
}

TEST_CASE("structure round trip solves identically") {
  const auto spec = TwistSpec::with_root_shifts(2, 2, 1);
  const AiryStructure A = structure_from_spec(spec, classify(spec).bounds, 5);
  const AiryStructure B = structure_from_json(json::parse(to_json(A).dump()));
  REQUIRE(B.operators.size() == A.operators.size());
  for (std::size_t k = 0; k < A.operators.size(); ++k) {
    CHECK(B.operators[k].target == A.operators[k].target);
    CHECK(B.operators[k].op == A.operators[k].op);
  }
  CHECK(to_json(solve(B, 5)).dump() == to_json(solve(A, 5)).dump());
}

TEST_CASE("free energy ordering") {
  const auto spec = TwistSpec::with_root_shifts(1, 2, 1);
  const auto F = solve(structure_from_spec(spec, classify(spec).bounds, 5), 5);
  const json j = to_json(F);
  REQUIRE(j.size() > 1);
  int last = 0;
  for (const auto& e : j) {
    const int d = e.at("hbar_half").get<int>() + static_cast<int>(e.at("vars").size());
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("verdict fields") {
  const json ok = to_json(classify(TwistSpec::with_root_shifts(2, 2, 1)));
  CHECK(ok.at("case") == "b");
  CHECK(ok.at("partition") == json::array({3, 1}));
  const json bad = to_json(classify(TwistSpec::with_root_shifts(2, 2, 2)));
  CHECK(bad.at("reason") == "NonCoprime");
  CHECK(bad.at("partition").is_null());
}
