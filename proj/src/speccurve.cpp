#include "qairy/speccurve.hpp"

#include <sstream>

#include "qairy/classify.hpp"

namespace qairy {

Bivariate Bivariate::monomial(int a, int b, const Scalar& c) {
  Bivariate p;
  p.add(a, b, c);
  return p;
}

void Bivariate::add(int a, int b, const Scalar& c) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative exponent in a polynomial");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace({a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Bivariate& Bivariate::operator+=(const Bivariate& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

Bivariate& Bivariate::operator-=(const Bivariate& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

Bivariate operator*(const Bivariate& a, const Bivariate& b) {
  Bivariate out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

std::string Bivariate::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    if (it->first.first) os << "*x^" << it->first.first;
    if (it->first.second) os << "*y^" << it->first.second;
  }
  return os.str();
}

Bivariate component_equation(const ParametricComponent& pc) {
  if (pc.rho < 1 || pc.s < 1 || pc.s > pc.rho)
    throw NotAdmissible("component needs 1 <= s <= rho for a polynomial equation");
  const int e = pc.rho - pc.s;
  Bivariate p = Bivariate::monomial(e, pc.rho, Scalar(pc.rho).pow(static_cast<unsigned>(e)));
  p.add(0, 0, -(-pc.Q).pow(static_cast<unsigned>(pc.rho)));
  return p;
}

std::vector<ParametricComponent> components_for(int rho, int n, int s) {
  if (rho < 1 || n < 1) throw std::invalid_argument("rho and n must be positive");
  std::vector<ParametricComponent> out;
  for (int j = 1; j <= n; ++j) out.push_back({rho, s, Scalar::root_power(rho * n, j)});
  return out;
}

PlaneCurve curve_for(int rho, int n, int s) {
  if (rho < 1 || n < 2 || s < 1) throw NotAdmissible("curve needs rho >= 1, n >= 2, s >= 1");
  const auto spec = TwistSpec::with_root_shifts(rho, n, s);
  const auto v = classify(spec);
  if (!v.admissible) throw NotAdmissible("twist is rejected: " + to_string(v.reason));
  if (s > rho) throw NotAdmissible("no polynomial curve for s > rho");
  const int r = rho * n;
  const int e = r - s * n;
  PlaneCurve c;
  c.polynomial = Bivariate::monomial(e, r, Scalar(rho).pow(static_cast<unsigned>(e)));
  c.polynomial.add(0, 0, -Scalar(r % 2 ? -1 : 1));
  std::vector<Bivariate> factors;
  for (const auto& pc : components_for(rho, n, s)) factors.push_back(component_equation(pc));
  c.factors = factors;
  return c;
}

bool verify_factorization(const PlaneCurve& c) {
  if (!c.factors) throw std::invalid_argument("curve has no factored form");
  Bivariate prod = Bivariate::monomial(0, 0, Scalar(1));
  for (const auto& f : *c.factors) prod = prod * f;
  return prod == c.polynomial;
}

std::map<int, Scalar> substitute(const Bivariate& p, const ParametricComponent& pc) {
  std::map<int, Scalar> out;
  const Scalar inv_rho = Scalar(1) / Scalar(pc.rho);
  for (const auto& [k, c] : p.terms()) {
    const auto [a, b] = k;
    const int z = pc.rho * a - (pc.rho - pc.s) * b;
    out[z] += c * inv_rho.pow(static_cast<unsigned>(a)) * (-pc.Q).pow(static_cast<unsigned>(b));
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Omega01 omega01(const ParametricComponent& pc) {
  if (pc.rho < 1 || pc.s < 1) throw std::invalid_argument("component needs rho, s >= 1");
  // y dx = (-Q / z^{rho-s}) z^{rho-1} dz
  return {-pc.Q, pc.s - 1};
}

DilatonData dilaton_from_omega01(const Scalar& coefficient, int exponent) {
  if (exponent < 0) throw std::invalid_argument("exponent must be nonnegative");
  return {exponent + 1, -coefficient};
}

}  // namespace qairy
