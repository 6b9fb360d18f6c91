#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qairy {

using Rational = mpq_class;

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MismatchedField : ScalarError {
  using ScalarError::ScalarError;
};
struct ZeroDivision : ScalarError {
  using ScalarError::ScalarError;
};
struct NotInvertible : ScalarError {
  using ScalarError::ScalarError;
};

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(int order);

/// Euler phi, i.e. the degree of the N-th cyclotomic polynomial.
int cyclotomic_degree(int order);

/// Exponent vector over the free zero-mode symbols C_1..C_{n-1}. C_n is
/// eliminated through C_n = -(C_1 + ... + C_{n-1}).
using CMonomial = std::vector<int>;

/// Exact element of Q(omega_N)[C_1, ..., C_{n-1}].
///
/// The omega part is stored in the power basis {1, omega, ..., omega^{d-1}},
/// d = phi(N), reduced modulo Phi_N. Terms are kept sorted by C-monomial with
/// no zero coefficients, so equal values always have identical
/// representations.
///
/// Values without omega content (rationals) promote into any order, and
/// values without C content are compatible with any symbol count. Combining
/// two values that both use omega (or both use C symbols) with different
/// orders (symbol counts) throws MismatchedField.
class Scalar {
 public:
  struct Term {
    CMonomial monomial;
    std::vector<Rational> coeffs;  // length phi(order)

    bool operator==(const Term&) const = default;
  };

  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT
  Scalar(const Rational& q);  // NOLINT(google-explicit-constructor)

  static Scalar rational(const Rational& q) { return Scalar(q); }
  /// omega^e for a primitive N-th root omega; e is reduced mod N.
  static Scalar root_power(int order, long long e);
  /// The zero-mode symbol C_j (1-based) in a ring with `symbols` symbols.
  static Scalar symbol(int symbols, int j);

  int order() const { return order_; }
  int symbols() const { return symbols_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_c_free() const;
  bool is_omega_free() const;
  bool is_one() const;
  /// Rational value; throws if the scalar has omega or C content.
  Rational as_rational() const;
  /// Part of degree zero in the C symbols, i.e. the value at C = 0.
  Scalar c_free_part() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  /// Multiplicative inverse of a nonzero C-free value.
  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }

  /// Numerical value at omega = exp(2 pi i / N) and the given symbol values
  /// (all n of them; C_n is replaced by its eliminated form).
  std::complex<double> evaluate(std::span<const std::complex<double>> c_values = {}) const;

  std::string to_string() const;

  /// Build from raw parts; used by deserialization. Canonicalizes.
  static Scalar from_terms(int order, int symbols, std::vector<Term> terms);

 private:
  int order_ = 1;
  int symbols_ = 0;
  std::vector<Term> terms_;

  void canonicalize();
  Scalar promoted(int order) const;
  friend void unify(const Scalar& a, const Scalar& b, int& order, int& symbols);
};

inline Scalar operator*(const Scalar& a, long b) { return a * Scalar(b); }

}  // namespace qairy
