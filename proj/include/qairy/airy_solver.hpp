#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qairy/dilaton.hpp"
#include "qairy/weyl.hpp"
#include "qairy/wmodes.hpp"

namespace qairy {

/// Secondary grading: K^j_p has weight scale[j] * p + s and hbar has weight 2 s.
/// A free-energy term of degree d then only involves x^j_p with
/// scale[j] * p <= s (d - 2).
struct WeightGrading {
  int s = 1;
  std::map<int, int> scale;
};

struct AiryStructure {
  std::vector<NormalizedOperator> operators;
  Window window;
  std::optional<WeightGrading> grading;

  /// Shape, distinct targets, and every variable used by an operator is a target.
  void validate() const;
};

/// F = sum_h hbar^{(h-2)/2} sum_sigma F[h, sigma] x^sigma / prod(mult!), i.e. the
/// 1/n! convention over ordered tuples. Keys are (hbar_half = h, sorted vars).
struct FreeEnergy {
  std::map<PolyKey, Scalar> coeffs;
  int cutoff = 0;
};

Scalar coefficient(const FreeEnergy& F, int h, std::vector<Mode> sigma);

/// hbar F as a polynomial in x with monomial coefficients.
Polynomial potential(const FreeEnergy& F);

struct SolveOptions {
  bool parallel = true;
  /// Order in which constraints pick the variable used to integrate a
  /// monomial; empty means the structure order.
  std::vector<std::size_t> order;
};

/// Largest index per cycle a solution to degree D_F can involve.
std::map<int, int> required_indices(const WeightGrading& g, int D_F);

FreeEnergy solve(const AiryStructure& A, int D_F, const SolveOptions& opt = {});
inline FreeEnergy solve_serial(const AiryStructure& A, int D_F) { return solve(A, D_F, {false, {}}); }

struct ResidualReport {
  bool clean = true;
  /// Operator degrees 0..checked_through were inspected.
  int checked_through = 0;
  std::optional<int> lowest_nonzero_degree;
  std::vector<std::pair<Mode, int>> failures;  // (target, degree)
};

/// Expands e^{-F} H_k e^{F} 1 through set partitions of each annihilator word
/// and inspects the components of degree <= D - 1, which are exactly the ones
/// fixed by F up to degree D.
ResidualReport residual_check(const AiryStructure& A, const FreeEnergy& F, int D, bool parallel = true);

/// exp(F) up to the given degree, with negative hbar powers. F carries hbar^{-1},
/// so each of its terms has degree >= 1.
Polynomial exp_truncated(const FreeEnergy& F, int max_degree);

/// e^{-F} A e^{F} 1 truncated at max_degree, with F given by its creator operator hbar F.
Polynomial conjugate_apply(const GradedOperator& a, const GradedOperator& hbarF, int max_degree);

/// Airy structure of the classified twist with shifts, on the window a
/// solution to degree D_F needs.
AiryStructure structure_from_spec(const TwistSpec& spec, const std::map<int, int>& bounds, int D_F);

std::string to_string(const FreeEnergy& F);

}  // namespace qairy
