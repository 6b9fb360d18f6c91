#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qairy/airy_solver.hpp"
#include "qairy/classify.hpp"
#include "qairy/dilaton.hpp"
#include "qairy/speccurve.hpp"
#include "qairy/verify.hpp"

namespace qairy {

using json = nlohmann::json;

inline constexpr const char* kVersion = "qairy 0.1.0";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"N", "terms": [{"omega_pow", "num", "den", "c_monomial"}]}, terms sorted by
/// (c_monomial, omega_pow).
json to_json(const Scalar& x);
/// Accepts the object form, an integer, or a "p/q" string.
Scalar scalar_from_json(const json& j);
std::vector<Scalar> scalars_from_json(const json& j);

json to_json(const Mode& m);
json to_json(const GradedOperator& a);
GradedOperator operator_from_json(const json& j);

json to_json(const AiryStructure& A);
AiryStructure structure_from_json(const json& j);

/// [{"hbar_half", "vars", "value"}] sorted by (degree, key).
json to_json(const FreeEnergy& F);

json to_json(const Matrix& m);
json to_json(const ClassificationVerdict& v);
json to_json(const AppendVerdict& v);
json to_json(const Bivariate& p);
json to_json(const SuiteReport& r);

}  // namespace qairy
