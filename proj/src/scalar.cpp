#include "qairy/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace qairy {

namespace {

using IntPoly = std::vector<long long>;

IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const long long c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * den[t];
  }
  return quot;
}

struct CycloTable {
  int order = 1;
  int degree = 1;
  // reduction[e] = x^e mod Phi_N, for 0 <= e < 2 * degree
  std::vector<std::vector<Rational>> reduction;
};

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, IntPoly>& phi_cache() {
  static std::map<int, IntPoly> cache;
  return cache;
}

const IntPoly& phi_locked(int order) {
  auto& cache = phi_cache();
  if (auto it = cache.find(order); it != cache.end()) return it->second;
  IntPoly num(order + 1, 0);
  num[0] = -1;
  num[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d == 0) num = poly_divide_exact(num, phi_locked(d));
  }
  return cache.emplace(order, std::move(num)).first->second;
}

const CycloTable& table_for(int order) {
  static std::map<int, std::unique_ptr<CycloTable>> tables;
  std::lock_guard lock(table_mutex());
  if (auto it = tables.find(order); it != tables.end()) return *it->second;
  const IntPoly& phi = phi_locked(order);
  auto t = std::make_unique<CycloTable>();
  t->order = order;
  t->degree = static_cast<int>(phi.size()) - 1;
  const int d = t->degree;
  std::vector<Rational> cur(d, 0);
  cur[0] = 1;
  for (int e = 0; e < 2 * d; ++e) {
    t->reduction.push_back(cur);
    // multiply by x, reduce the x^d coefficient with the monic Phi
    Rational top = cur[d - 1];
    for (int k = d - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int k = 0; k < d; ++k) cur[k] -= top * static_cast<long>(phi[k]);
    }
  }
  return *tables.emplace(order, std::move(t)).first->second;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

bool monomial_is_one(const CMonomial& m) {
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

std::vector<Rational> cyclo_mul(const CycloTable& t, const std::vector<Rational>& a,
                                const std::vector<Rational>& b) {
  const int d = t.degree;
  std::vector<Rational> raw(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rational> out(raw.begin(), raw.begin() + d);
  for (int e = d; e < 2 * d - 1; ++e) {
    if (raw[e] == 0) continue;
    const auto& red = t.reduction[e];
    for (int k = 0; k < d; ++k) {
      if (red[k] != 0) out[k] += raw[e] * red[k];
    }
  }
  return out;
}

// Solve (multiplication by a) * v = 1 over Q by Gaussian elimination.
std::vector<Rational> cyclo_inverse(const CycloTable& t, const std::vector<Rational>& a) {
  const int d = t.degree;
  // column c of the matrix is a * x^c
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
  std::vector<Rational> basis(d, 0);
  for (int c = 0; c < d; ++c) {
    std::fill(basis.begin(), basis.end(), Rational(0));
    basis[c] = 1;
    const auto col = cyclo_mul(t, a, basis);
    for (int r = 0; r < d; ++r) m[r][c] = col[r];
  }
  m[0][d] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r) {
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw ZeroDivision("cyclotomic element is not invertible");
    std::swap(m[piv], m[c]);
    const Rational inv = 1 / m[c][c];
    for (int k = c; k <= d; ++k) m[c][k] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (int k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> out(d);
  for (int r = 0; r < d; ++r) out[r] = m[r][d];
  return out;
}

int free_symbols(int symbols) { return symbols > 1 ? symbols - 1 : 0; }

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard lock(table_mutex());
  return phi_locked(order);
}

int cyclotomic_degree(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  return table_for(order).degree;
}

Scalar::Scalar(long v) : Scalar(Rational(v)) {}

Scalar::Scalar(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c != 0) terms_.push_back({{}, {c}});
}

Scalar Scalar::root_power(int order, long long e) {
  if (order < 1) throw std::invalid_argument("root order must be positive");
  const auto& t = table_for(order);
  long long r = e % order;
  if (r < 0) r += order;
  Scalar s;
  s.order_ = order;
  // x^r with r < order; reduce via repeated table products when r >= 2d
  std::vector<Rational> v(t.degree, 0);
  if (r < 2 * t.degree) {
    v = t.reduction[r];
  } else {
    v[0] = 1;
    std::vector<Rational> x = t.reduction[1];
    for (long long k = 0; k < r; ++k) v = cyclo_mul(t, v, x);
  }
  s.terms_.push_back({{}, std::move(v)});
  s.canonicalize();
  return s;
}

Scalar Scalar::symbol(int symbols, int j) {
  if (symbols < 1 || j < 1 || j > symbols) throw std::invalid_argument("symbol index out of range");
  Scalar s;
  s.symbols_ = symbols;
  const int f = free_symbols(symbols);
  if (j < symbols) {
    CMonomial m(f, 0);
    m[j - 1] = 1;
    s.terms_.push_back({m, {Rational(1)}});
  } else {
    for (int k = 0; k < f; ++k) {
      CMonomial m(f, 0);
      m[k] = 1;
      s.terms_.push_back({m, {Rational(-1)}});
    }
  }
  s.canonicalize();
  return s;
}

Scalar Scalar::from_terms(int order, int symbols, std::vector<Term> terms) {
  if (order < 1 || symbols < 0) throw std::invalid_argument("bad scalar field");
  const int d = cyclotomic_degree(order);
  const int f = free_symbols(symbols);
  Scalar s;
  s.order_ = order;
  s.symbols_ = symbols;
  for (auto& t : terms) {
    if (static_cast<int>(t.monomial.size()) != f || static_cast<int>(t.coeffs.size()) != d)
      throw std::invalid_argument("scalar term shape does not match its field");
    for (auto& c : t.coeffs) c.canonicalize();
  }
  s.terms_ = std::move(terms);
  s.canonicalize();
  return s;
}

void Scalar::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      auto& c = out.back().coeffs;
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += t.coeffs[k];
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return all_zero(t.coeffs); });
  terms_ = std::move(out);
}

bool Scalar::is_c_free() const {
  return terms_.empty() || (terms_.size() == 1 && monomial_is_one(terms_.front().monomial));
}

bool Scalar::is_omega_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::all_of(t.coeffs.begin() + 1, t.coeffs.end(), [](const Rational& q) { return q == 0; });
  });
}

bool Scalar::is_one() const {
  return is_c_free() && is_omega_free() && !terms_.empty() && terms_.front().coeffs[0] == 1;
}

Rational Scalar::as_rational() const {
  if (!is_c_free() || !is_omega_free()) throw ScalarError("scalar is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.front().coeffs[0];
}

Scalar Scalar::c_free_part() const {
  Scalar s;
  s.order_ = order_;
  s.symbols_ = symbols_;
  for (const auto& t : terms_) {
    if (monomial_is_one(t.monomial)) s.terms_.push_back(t);
  }
  return s;
}

Scalar Scalar::promoted(int order) const {
  if (order == order_) return *this;
  const int d = cyclotomic_degree(order);
  Scalar s;
  s.order_ = order;
  s.symbols_ = symbols_;
  for (const auto& t : terms_) {
    std::vector<Rational> c(d, 0);
    c[0] = t.coeffs[0];
    s.terms_.push_back({t.monomial, std::move(c)});
  }
  return s;
}

void unify(const Scalar& a, const Scalar& b, int& order, int& symbols) {
  if (a.order_ == b.order_) {
    order = a.order_;
  } else if (a.is_omega_free()) {
    order = b.order_;
  } else if (b.is_omega_free()) {
    order = a.order_;
  } else {
    throw MismatchedField("cyclotomic orders differ: " + std::to_string(a.order_) + " vs " +
                          std::to_string(b.order_));
  }
  if (a.symbols_ == b.symbols_) {
    symbols = a.symbols_;
  } else if (a.is_c_free()) {
    symbols = b.symbols_;
  } else if (b.is_c_free()) {
    symbols = a.symbols_;
  } else {
    throw MismatchedField("zero-mode symbol counts differ");
  }
}

namespace {

// Bring a value into the unified field. Only called after unify() succeeded.
Scalar adapt(const Scalar& s, int order, int symbols, auto&& promote) {
  Scalar out = promote(s, order);
  if (out.symbols() == symbols) return out;
  // C-free: only a constant term, re-express with the target monomial length
  std::vector<Scalar::Term> terms;
  for (const auto& t : out.terms()) terms.push_back({CMonomial(free_symbols(symbols), 0), t.coeffs});
  return Scalar::from_terms(order, symbols, std::move(terms));
}

}  // namespace

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& t : s.terms_)
    for (auto& c : t.coeffs) c = -c;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  if (b.is_zero()) return *this;
  if (is_zero()) {
    *this = b;
    return *this;
  }
  int order = 1, symbols = 0;
  unify(*this, b, order, symbols);
  auto promote = [](const Scalar& s, int o) { return s.promoted(o); };
  Scalar lhs = adapt(*this, order, symbols, promote);
  Scalar rhs = adapt(b, order, symbols, promote);
  // merge two sorted term lists
  std::vector<Term> out;
  out.reserve(lhs.terms_.size() + rhs.terms_.size());
  auto i = lhs.terms_.begin();
  auto j = rhs.terms_.begin();
  while (i != lhs.terms_.end() || j != rhs.terms_.end()) {
    if (j == rhs.terms_.end() || (i != lhs.terms_.end() && i->monomial < j->monomial)) {
      out.push_back(std::move(*i++));
    } else if (i == lhs.terms_.end() || j->monomial < i->monomial) {
      out.push_back(std::move(*j++));
    } else {
      Term t = std::move(*i++);
      for (std::size_t k = 0; k < t.coeffs.size(); ++k) t.coeffs[k] += j->coeffs[k];
      ++j;
      if (!all_zero(t.coeffs)) out.push_back(std::move(t));
    }
  }
  lhs.terms_ = std::move(out);
  *this = std::move(lhs);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int order = 1, symbols = 0;
  unify(a, b, order, symbols);
  auto promote = [](const Scalar& s, int o) { return s.promoted(o); };
  const Scalar lhs = adapt(a, order, symbols, promote);
  const Scalar rhs = adapt(b, order, symbols, promote);
  const auto& t = table_for(order);
  std::map<CMonomial, std::vector<Rational>> acc;
  for (const auto& x : lhs.terms_) {
    for (const auto& y : rhs.terms_) {
      CMonomial m = x.monomial;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += y.monomial[k];
      auto prod = cyclo_mul(t, x.coeffs, y.coeffs);
      auto [it, fresh] = acc.try_emplace(std::move(m), std::move(prod));
      if (!fresh) {
        for (std::size_t k = 0; k < it->second.size(); ++k) it->second[k] += prod[k];
      }
    }
  }
  Scalar s;
  s.order_ = order;
  s.symbols_ = symbols;
  for (auto& [m, c] : acc) {
    if (!all_zero(c)) s.terms_.push_back({m, std::move(c)});
  }
  return s;
}

Scalar& Scalar::operator*=(const Scalar& b) {
  *this = *this * b;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ZeroDivision("division by zero scalar");
  if (!is_c_free()) throw NotInvertible("scalar with zero-mode symbol content is not invertible");
  Scalar s = *this;
  s.terms_.front().coeffs = cyclo_inverse(table_for(order_), terms_.front().coeffs);
  return s;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result(1L);
  Scalar base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& b) const {
  if (is_zero() || b.is_zero()) return is_zero() && b.is_zero();
  int order = 1, symbols = 0;
  try {
    unify(*this, b, order, symbols);
  } catch (const MismatchedField&) {
    return false;
  }
  if (order_ == b.order_ && symbols_ == b.symbols_) return terms_ == b.terms_;
  return (*this - b).is_zero();
}

std::complex<double> Scalar::evaluate(std::span<const std::complex<double>> c_values) const {
  const std::complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / order_);
  std::complex<double> total = 0;
  for (const auto& t : terms_) {
    std::complex<double> w = 0, p = 1;
    for (const auto& c : t.coeffs) {
      w += c.get_d() * p;
      p *= omega;
    }
    for (std::size_t k = 0; k < t.monomial.size(); ++k) {
      if (t.monomial[k] == 0) continue;
      if (k >= c_values.size()) throw std::invalid_argument("missing zero-mode symbol value");
      w *= std::pow(c_values[k], t.monomial[k]);
    }
    total += w;
  }
  return total;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& t : terms_) {
    std::ostringstream body;
    int nonzero = 0;
    for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
      if (t.coeffs[k] == 0) continue;
      if (nonzero++) body << " + ";
      body << t.coeffs[k].get_str();
      if (k == 1) body << "*w";
      if (k > 1) body << "*w^" << k;
    }
    if (!first_term) os << " + ";
    first_term = false;
    const bool has_c = !monomial_is_one(t.monomial);
    if (nonzero > 1 && (has_c || terms_.size() > 1))
      os << "(" << body.str() << ")";
    else
      os << body.str();
    for (std::size_t k = 0; k < t.monomial.size(); ++k) {
      if (t.monomial[k] == 0) continue;
      os << "*C" << (k + 1);
      if (t.monomial[k] > 1) os << "^" << t.monomial[k];
    }
  }
  return os.str();
}

}  // namespace qairy
