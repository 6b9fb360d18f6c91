#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qairy/airy_solver.hpp"
#include "qairy/partitions.hpp"
#include "qairy/scalar.hpp"
#include "qairy/wmodes.hpp"

namespace qairy {

enum class CaseLabel { a, b, c, d, none };
enum class Rejection { none, NonCoprime, STooLarge, NoLambdaGoodPartition, ZeroShift, SingularShiftMatrix };

std::string to_string(CaseLabel c);
std::string to_string(Rejection r);

struct ClassificationVerdict {
  int rho = 1, n = 2, s = 1;
  bool admissible = false;
  CaseLabel case_label = CaseLabel::none;
  std::optional<Partition> partition;
  /// sum_K0_zero, shift_matrix_invertible, all_Q_nonzero
  std::vector<std::string> requirements;
  Rejection reason = Rejection::none;
  std::string detail;
  /// i -> smallest m of the mode subalgebra (without the H^1_0 slot)
  std::map<int, int> bounds;
  std::optional<Scalar> shift_determinant;
};

/// m_min = l (rho - s) + k - 1 - floor(s (k - 1) / rho) + delta_{k,1}.
int subalgebra_bound(int rho, int s, int k, int l);
/// The bound for every i = k + l rho in 1..r.
std::map<int, int> subalgebra_bounds(int rho, int n, int s);
/// i -> i - bound(i), with the H^1_0 slot lowering the bound of i = 1 to 0.
std::map<int, int> subalgebra_profile(int rho, int n, int s);

ClassificationVerdict classify(int rho, int n, int s, const std::vector<Scalar>& Q);
inline ClassificationVerdict classify(const TwistSpec& spec) {
  return classify(spec.rho, spec.n, spec.s, spec.Q);
}

/// Verdicts for every rho >= 1, n >= 2 with n rho <= r_max and 1 <= s <= s_max,
/// using root-of-unity shifts, ordered by (r, rho, s).
std::vector<ClassificationVerdict> enumerate_classifications(int r_max, int s_max);
/// The admissible subset of enumerate_classifications(r_max, r_max + 1).
std::vector<ClassificationVerdict> enumerate_admissible(int r_max);

struct ForbiddenWitness {
  std::vector<int> A;  // A_1..A_s
  int a = 0;           // A_1 - 1
  std::string failed_constraint;
  int failed_index = 0;
};
/// Ceiling blocks A_j and the first violated requirement of a decreasing
/// pseudo-partition, for 3 <= s <= rho - 1 coprime to rho.
ForbiddenWitness forbidden_partition_witness(int rho, int s);

struct CycleData {
  int rho = 1;
  int s = 1;
  Scalar Q;
};

struct AppendBase {
  Partition lambda;
  std::vector<CycleData> cycles;
};

enum class AppendRejection { none, ZeroShift, NoPartitionExtension };
std::string to_string(AppendRejection r);

struct AppendVerdict {
  bool accepted = false;
  AppendRejection reason = AppendRejection::none;
  int required_last = 0;  // sum of s_j
  std::optional<Partition> extended;
  /// Partitions of r + 1 agreeing with lambda on 1..r, with their value at r + 1.
  std::vector<std::pair<Partition, int>> candidates;
  /// i -> minimal m for the appended structure (i = 1..r + 1).
  std::map<int, int> bounds;
};

AppendVerdict append_one_cycle(const AppendBase& base);

/// How the mixed terms K^{new} H^{i-1} enter H~^i for 2 <= i <= r. `composite`
/// uses coefficient 1, as in the composite modes of r + 1 cycles; `theorem`
/// uses r^{i-1} H~^i = H^i + r sum K^{new} H^{i-1}.
enum class AppendNormalization { composite, theorem };

/// Airy structure obtained by adjoining an untwisted, unshifted cycle n + 1 to
/// the uniform twist `base`, normalized on the window a solution to degree
/// D_F needs. The scalar ring carries n + 1 zero-mode symbols.
AiryStructure appended_structure(const TwistSpec& base, const AppendVerdict& v, int D_F,
                                 AppendNormalization norm = AppendNormalization::composite);

/// Base data of a classified uniform twist.
AppendBase append_base(const ClassificationVerdict& v, const std::vector<Scalar>& Q);

}  // namespace qairy
