#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qairy/scalar.hpp"

namespace qairy {

/// Bosonic mode K^cycle_index. index > 0 acts as hbar d/dx^cycle_index,
/// index < 0 as |index| x^cycle_|index|, index == 0 as hbar^{1/2} C_cycle.
struct Mode {
  int cycle = 1;
  int index = 0;

  bool is_annihilator() const { return index > 0; }
  bool is_creator() const { return index < 0; }
  bool is_zero_mode() const { return index == 0; }

  auto operator<=>(const Mode&) const = default;
};

std::string to_string(const Mode& m);

struct WindowOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Materialization region: all mode indices |m| <= max_index and all
/// grading degrees <= max_degree.
struct Window {
  int max_index = 0;
  int max_degree = 0;

  bool operator==(const Window&) const = default;
};

Window merge(const Window& a, const Window& b);

/// Normal-ordered word: hbar^{hbar_half/2}-weighted creators followed by
/// annihilators. hbar_half counts the hbar of every annihilator, so
/// hbar_half >= 2 * annihilators.size(). Zero modes never appear in the
/// lists; they are folded into the coefficient as hbar^{1/2} C_j.
struct Signature {
  int hbar_half = 0;
  std::vector<Mode> creators;      // sorted, index < 0
  std::vector<Mode> annihilators;  // sorted, index > 0

  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;
};

struct NormalMonomial {
  Scalar coeff;
  Signature sig;
};

/// deg x = deg hbar d = 1, deg hbar = 2.
int grading_degree(const Signature& s);
inline int grading_degree(const NormalMonomial& t) { return grading_degree(t.sig); }
int max_mode_index(const Signature& s);

/// Finite sum of normal-ordered monomials with eager merging.
class GradedOperator {
 public:
  GradedOperator() = default;
  explicit GradedOperator(Window w) : window_(w) {}

  /// The single mode K^cycle_index. `symbols` is the zero-mode symbol count
  /// used when index == 0.
  static GradedOperator mode(const Mode& m, Window w, int symbols);
  static GradedOperator constant(const Scalar& c, Window w);
  /// c * hbar^{hbar_half/2} (no modes).
  static GradedOperator hbar_power(int hbar_half, const Scalar& c, Window w);

  const Window& window() const { return window_; }
  void set_window(Window w);
  const std::map<Signature, Scalar>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * sig. Throws WindowOverflow when sig lies outside the window.
  void add(const Signature& sig, const Scalar& c);
  /// Like add but silently drops terms outside the window.
  void add_truncated(const Signature& sig, const Scalar& c);

  GradedOperator& operator+=(const GradedOperator& b);
  GradedOperator& operator-=(const GradedOperator& b);
  GradedOperator& operator*=(const Scalar& c);
  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  friend GradedOperator operator*(GradedOperator a, const Scalar& c) { return a *= c; }
  friend GradedOperator operator*(const Scalar& c, GradedOperator a) { return a *= c; }
  GradedOperator operator-() const;

  /// Term sets are compared; windows are metadata and ignored.
  bool operator==(const GradedOperator& b) const { return terms_ == b.terms_; }

  /// Terms of grading degree <= d (window unchanged).
  GradedOperator truncated(int max_degree) const;
  GradedOperator homogeneous_part(int degree) const;
  /// Terms whose modes all satisfy |m| <= max_index.
  GradedOperator restricted(int max_index) const;
  int min_degree() const;
  int max_degree() const;

  std::string to_string() const;

 private:
  Window window_;
  std::map<Signature, Scalar> terms_;
};

/// [K^a, K^b] as an operator: a.index * hbar if same cycle and indices cancel.
GradedOperator commutator_basic(const Mode& a, const Mode& b, Window w);

/// A * B rewritten in normal order (Wick contractions). The result window is
/// the merge of both windows; a produced term outside it throws WindowOverflow.
GradedOperator normal_order_product(const GradedOperator& a, const GradedOperator& b);
/// A * B keeping only terms of degree <= max_degree; window widened to fit.
GradedOperator product_truncated(const GradedOperator& a, const GradedOperator& b, int max_degree);

/// [A, B] for creator-only B: the Wick terms of A B with at least one
/// contraction, keeping degrees <= max_degree.
GradedOperator commutator_with_creators(const GradedOperator& a, const GradedOperator& b, int max_degree);

GradedOperator operator_commutator(const GradedOperator& a, const GradedOperator& b);

/// Polynomial in variables x^j_m (m >= 1) with hbar^{1/2}-graded scalar
/// coefficients. Variables are encoded as Modes with positive index.
struct PolyKey {
  int hbar_half = 0;
  std::vector<Mode> vars;  // sorted multiset

  auto operator<=>(const PolyKey&) const = default;
  bool operator==(const PolyKey&) const = default;
};

class Polynomial {
 public:
  static Polynomial one();
  static Polynomial monomial(PolyKey key, const Scalar& c);

  const std::map<PolyKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const PolyKey& k, const Scalar& c);

  Polynomial& operator+=(const Polynomial& b);
  Polynomial& operator-=(const Polynomial& b);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  bool operator==(const Polynomial& b) const { return terms_ == b.terms_; }

  /// hbar d/dx_v
  Polynomial hbar_derivative(const Mode& v) const;
  Polynomial homogeneous_part(int degree) const;
  Polynomial truncated(int max_degree) const;

  std::string to_string() const;

 private:
  std::map<PolyKey, Scalar> terms_;
};

int grading_degree(const PolyKey& k);

/// Differential-operator action of A on f.
Polynomial apply(const GradedOperator& a, const Polynomial& f);

}  // namespace qairy
