#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qairy/scalar.hpp"

namespace qairy {

struct NotAdmissible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense-ish bivariate polynomial: (x-degree, y-degree) -> coefficient.
class Bivariate {
 public:
  static Bivariate monomial(int a, int b, const Scalar& c);

  const std::map<std::pair<int, int>, Scalar>& terms() const { return terms_; }
  void add(int a, int b, const Scalar& c);
  bool is_zero() const { return terms_.empty(); }

  Bivariate& operator+=(const Bivariate& o);
  Bivariate& operator-=(const Bivariate& o);
  friend Bivariate operator+(Bivariate a, const Bivariate& b) { return a += b; }
  friend Bivariate operator-(Bivariate a, const Bivariate& b) { return a -= b; }
  friend Bivariate operator*(const Bivariate& a, const Bivariate& b);
  bool operator==(const Bivariate& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  std::map<std::pair<int, int>, Scalar> terms_;
};

struct PlaneCurve {
  Bivariate polynomial;
  std::optional<std::vector<Bivariate>> factors;
};

/// x(z) = z^rho / rho, y(z) = -Q / z^{rho - s}.
struct ParametricComponent {
  int rho = 1;
  int s = 1;
  Scalar Q;
};

/// rho^{rho-s} x^{rho-s} y^rho - (-Q)^rho, the implicit equation of a component.
Bivariate component_equation(const ParametricComponent& pc);

/// Components with Q_j = omega^j, omega a primitive r-th root.
std::vector<ParametricComponent> components_for(int rho, int n, int s);

PlaneCurve curve_for(int rho, int n, int s);

bool verify_factorization(const PlaneCurve& c);

/// Laurent coefficients in z of p(x(z), y(z)).
std::map<int, Scalar> substitute(const Bivariate& p, const ParametricComponent& pc);

struct Omega01 {
  Scalar coefficient;
  int exponent = 0;  // of z, in front of dz
};

Omega01 omega01(const ParametricComponent& pc);

struct DilatonData {
  int s = 1;
  Scalar Q;
};

DilatonData dilaton_from_omega01(const Scalar& coefficient, int exponent);

}  // namespace qairy
