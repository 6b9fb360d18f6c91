#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qairy/scalar.hpp"
#include "qairy/weyl.hpp"
#include "qairy/wmodes.hpp"

namespace qairy {

struct NonCoprime : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroShift : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularBlock : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// The operators handed to elimination do not have the expected structure.
struct InconsistentStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<Scalar>>;

/// Degree-0 and degree-1 content of an operator. Linear entries may use
/// index 0, which stands for hbar^{1/2} C_cycle.
struct LeadingPart {
  Scalar constant;
  std::map<Mode, Scalar> linear;

  /// Rendered as an operator; zero modes are folded with `symbols` symbols.
  GradedOperator to_operator(Window w, int symbols) const;
};

/// Replaces every creator K^j_{-s} by K^j_{-s} - Q_j.
GradedOperator shift_operator(const GradedOperator& a, int s, const std::vector<Scalar>& Q);

/// Factor kappa with -kappa Q^rho the degree-zero term of the shifted W^{j,rho}.
/// Read off the Psi provider when one exists, otherwise 1.
Scalar degree_zero_normalization(int rho, int s);

LeadingPart shifted_cycle_leading(int rho, int s, const Scalar& Qj, int j, int i, int m);

/// Closed form for H^{k + l rho}_m up to degree one.
LeadingPart shifted_composite_leading(const TwistSpec& spec, int k, int l, int m);

/// Shifted composite mode expanded through the cycle modes, truncated at
/// max_degree.
GradedOperator shifted_composite_mode(const TwistSpec& spec, int i, int m, Window w, int max_degree);

/// Cache of shifted cycle modes and their composites on one window.
class ShiftedModes {
 public:
  ShiftedModes(const TwistSpec& spec, Window w, int max_degree);
  const GradedOperator& factor(int j, int i, int m);
  const GradedOperator& composite(int i, int m);
  const TwistSpec& spec() const { return spec_; }

 private:
  TwistSpec spec_;
  Window w_;
  int max_degree_;
  std::map<std::tuple<int, int, int>, GradedOperator> factors_;
  std::map<std::pair<int, int>, GradedOperator> composites_;
};

/// Shift matrix built from the elementary symmetric functions of -Q^rho.
Matrix shift_matrix(int rho, const std::vector<Scalar>& Q);

struct RootShifts {
  std::vector<Scalar> Q;
  Matrix M;
};
/// Q_j = omega^j (omega primitive r-th root) and the matrix theta^{mu (ell-1)}.
RootShifts root_of_unity_shifts(int rho, int n);

struct VietaSides {
  Scalar lhs;
  Scalar rhs;
};
/// Subset sum over {1..n} \ {mu} of size ell - 1 of prod (-theta^j), against
/// theta^{mu (ell-1)}, with theta = omega_n^theta_power.
VietaSides vieta_subset_identity(int theta_power, int n, int mu, int ell);

/// Exact Gauss-Jordan inverse; nullopt when singular. Entries must be C-free.
std::optional<Matrix> invert_matrix(const Matrix& m);
Scalar determinant(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);

/// Operator in Airy form: degree-1 part exactly the annihilator `target`.
struct NormalizedOperator {
  Mode target;
  GradedOperator op;
};

/// Operators grouped by an integer weight; each group is replaced by the
/// combinations whose degree-one parts are single annihilators. Groups must
/// have no degree-zero terms and exactly as many distinct linear modes as
/// operators.
std::vector<NormalizedOperator> eliminate_linear_parts(
    const std::vector<std::pair<int, GradedOperator>>& grouped);

/// Shape of a quantum Airy operator: no degree 0, degree-1 part exactly
/// target, remaining degrees in [2, max_degree].
bool has_airy_shape(const NormalizedOperator& h, int max_degree);

/// Linear index q(i, m) = rho m - (rho - s)(i - 1) carried by H^i_m.
int linear_index(const TwistSpec& spec, int i, int m);

/// Airy-form operators for every target K^mu_q with 1 <= q <= w.max_index,
/// built from the shifted modes H^i_m with m >= bounds.at(i).
std::vector<NormalizedOperator> normalize_to_airy_form(const TwistSpec& spec,
                                                       const std::map<int, int>& bounds, Window w);

}  // namespace qairy
