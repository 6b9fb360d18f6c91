#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qairy/scalar.hpp"
#include "qairy/weyl.hpp"

namespace qairy {

struct UnsupportedRho : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowTooSmall : WindowOverflow {
  using WindowOverflow::WindowOverflow;
};

/// n cycles of length rho, uniform dilaton shift index s, shift constants Q.
struct TwistSpec {
  int rho = 1;
  int n = 1;
  int s = 1;
  std::vector<Scalar> Q;
  /// Zero-mode symbols C_1..C_k of the scalar ring (sum fixed to zero); 0 means n.
  int zero_mode_symbols = 0;

  int r() const { return rho * n; }
  int symbols() const { return zero_mode_symbols ? zero_mode_symbols : n; }
  /// Throws std::invalid_argument on nonpositive parameters or a Q of wrong length.
  void validate() const;

  /// Q_j = omega^j with omega a primitive r-th root of unity.
  static TwistSpec with_root_shifts(int rho, int n, int s);
};

/// Coefficients Psi^(ell)_rho(p_1, ..., p_t) of the per-cycle modes.
class PsiProvider {
 public:
  virtual ~PsiProvider() = default;
  virtual int rho() const = 0;
  /// ps has length i - 2 ell for the mode index i in 1..rho.
  virtual Scalar psi(int ell, std::span<const int> ps) const = 0;
};

/// Registers (or replaces) the provider for its rho. Providers for rho = 1, 2
/// are built in.
void register_psi_provider(std::shared_ptr<const PsiProvider> provider);
/// Throws UnsupportedRho when nothing is registered for rho.
const PsiProvider& psi_provider(int rho);
bool has_psi_provider(int rho);

Scalar psi_coefficient(int rho, int ell, std::span<const int> ps);

/// W^{j,i}_m of the single cycle j, all tuples with |p_k| <= W.
GradedOperator cycle_mode(const TwistSpec& spec, int j, int i, int m, Window w);

/// W^i_m, products of cycle modes over subsets of cycles.
GradedOperator composite_mode(const TwistSpec& spec, int i, int m, Window w);

/// Sum over cycle subsets of the composite formula with caller-supplied
/// factors factor(j, i_j, m_j). Products are truncated at max_degree, and m_j
/// runs over cycle_mode_support.
GradedOperator composite_from_factors(
    const TwistSpec& spec, int i, int m, Window w,
    const std::function<const GradedOperator&(int j, int ij, int mj)>& factor, int max_degree);

/// i = k + l rho with 1 <= k <= rho, 0 <= l <= n - 1.
std::pair<int, int> reindex(const TwistSpec& spec, int i);

/// Range of m for which W^{j,i}_m has a nonzero materialization on w.
std::pair<int, int> cycle_mode_support(int rho, int i, Window w);

}  // namespace qairy
