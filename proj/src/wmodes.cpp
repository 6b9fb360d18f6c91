#include "qairy/wmodes.hpp"

#include <mutex>
#include <numeric>
#include <string>

namespace qairy {

void TwistSpec::validate() const {
  if (rho < 1 || n < 1 || s < 1) throw std::invalid_argument("rho, n and s must be positive");
  if (zero_mode_symbols != 0 && zero_mode_symbols < n)
    throw std::invalid_argument("fewer zero-mode symbols than cycles");
  if (static_cast<int>(Q.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " shift constants, got " +
                                std::to_string(Q.size()));
}

TwistSpec TwistSpec::with_root_shifts(int rho, int n, int s) {
  TwistSpec spec{rho, n, s, {}};
  if (rho < 1 || n < 1) throw std::invalid_argument("rho and n must be positive");
  for (int j = 1; j <= n; ++j) spec.Q.push_back(Scalar::root_power(rho * n, j));
  return spec;
}

namespace {

class UntwistedPsi : public PsiProvider {
 public:
  int rho() const override { return 1; }
  Scalar psi(int ell, std::span<const int> ps) const override {
    if (ell != 0 || ps.size() != 1) throw std::invalid_argument("rho = 1 has only the i = 1 mode");
    return Scalar(1);
  }
};

class TwoCyclePsi : public PsiProvider {
 public:
  int rho() const override { return 2; }
  Scalar psi(int ell, std::span<const int> ps) const override {
    auto even = [](int p) { return p % 2 == 0 ? 1 : 0; };
    if (ell == 0 && ps.size() == 1) return Scalar(2 * even(ps[0]));
    if (ell == 0 && ps.size() == 2) return Scalar(2 * even(ps[0]) * even(ps[1]) - 1);
    if (ell == 1 && ps.empty()) return Scalar(Rational(-1, 4));
    throw std::invalid_argument("no rho = 2 coefficient for this (ell, arity)");
  }
};

struct Registry {
  std::mutex mu;
  std::map<int, std::shared_ptr<const PsiProvider>> providers;

  Registry() {
    providers[1] = std::make_shared<UntwistedPsi>();
    providers[2] = std::make_shared<TwoCyclePsi>();
  }
};

Registry& registry() {
  static Registry reg;
  return reg;
}

Scalar factorial(int k) {
  Scalar f(1);
  for (int t = 2; t <= k; ++t) f *= Scalar(t);
  return f;
}

// All ordered tuples of length len with entries in [-W, W] summing to total.
void tuples(int len, int total, int W, std::vector<int>& cur,
            const std::function<void(const std::vector<int>&)>& emit) {
  if (len == 0) {
    if (total == 0) emit(cur);
    return;
  }
  for (int p = -W; p <= W; ++p) {
    const int rest = total - p;
    if (rest < -(len - 1) * W || rest > (len - 1) * W) continue;
    cur.push_back(p);
    tuples(len - 1, rest, W, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

void register_psi_provider(std::shared_ptr<const PsiProvider> provider) {
  if (!provider || provider->rho() < 1) throw std::invalid_argument("invalid Psi provider");
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  reg.providers[provider->rho()] = std::move(provider);
}

const PsiProvider& psi_provider(int rho) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto it = reg.providers.find(rho);
  if (it == reg.providers.end())
    throw UnsupportedRho("no Psi coefficients registered for rho = " + std::to_string(rho));
  return *it->second;
}

bool has_psi_provider(int rho) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  return reg.providers.count(rho) > 0;
}

Scalar psi_coefficient(int rho, int ell, std::span<const int> ps) {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  const int i = static_cast<int>(ps.size()) + 2 * ell;
  if (i < 1 || i > rho) throw std::invalid_argument("mode index outside 1..rho");
  return psi_provider(rho).psi(ell, ps);
}

std::pair<int, int> cycle_mode_support(int rho, int i, Window w) {
  const int reach = i * w.max_index / rho;
  return {i - 1 - reach, i - 1 + reach};
}

GradedOperator cycle_mode(const TwistSpec& spec, int j, int i, int m, Window w) {
  spec.validate();
  if (j < 1 || j > spec.n) throw std::invalid_argument("cycle index out of range");
  if (i < 1 || i > spec.rho) throw std::invalid_argument("cycle mode index outside 1..rho");
  const PsiProvider& psi = psi_provider(spec.rho);
  if (i > w.max_degree)
    throw WindowTooSmall("cycle mode of degree " + std::to_string(i) + " exceeds window degree " +
                         std::to_string(w.max_degree));
  GradedOperator out(w);
  const int total = spec.rho * (m - i + 1);
  const Scalar zero_mode = Scalar::symbol(spec.symbols(), j);
  for (int ell = 0; 2 * ell <= i; ++ell) {
    const Scalar pref = factorial(i) / (Scalar(spec.rho) * Scalar(1L << ell) * factorial(ell) *
                                        factorial(i - 2 * ell));
    std::vector<int> cur;
    tuples(i - 2 * ell, total, w.max_index, cur, [&](const std::vector<int>& ps) {
      Scalar c = psi.psi(ell, ps);
      if (c.is_zero()) return;
      Signature sig{2 * ell, {}, {}};
      for (int p : ps) {
        if (p < 0) {
          sig.creators.push_back({j, p});
        } else if (p > 0) {
          sig.annihilators.push_back({j, p});
          sig.hbar_half += 2;
        } else {
          sig.hbar_half += 1;
          c *= zero_mode;
        }
      }
      std::sort(sig.creators.begin(), sig.creators.end());
      std::sort(sig.annihilators.begin(), sig.annihilators.end());
      out.add(sig, c * pref);
    });
  }
  return out;
}

GradedOperator composite_from_factors(
    const TwistSpec& spec, int i, int m, Window w,
    const std::function<const GradedOperator&(int j, int ij, int mj)>& factor, int max_degree) {
  spec.validate();
  if (i < 1 || i > spec.r()) throw std::invalid_argument("composite mode index outside 1..r");
  GradedOperator out(w);
  const int n = spec.n, rho = spec.rho;
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    std::vector<int> cycles;
    for (int j = 1; j <= n; ++j)
      if (mask & (1U << (j - 1))) cycles.push_back(j);
    const int size = static_cast<int>(cycles.size());
    if (size > i || size * rho < i) continue;
    // rho^{|M| - i}
    const Scalar pref = Scalar(Rational(1)) / Scalar(rho).pow(static_cast<unsigned>(i - size));
    // depth-first over (i_j, m_j) assignments with the running products
    std::function<void(int, int, int, const GradedOperator&)> rec =
        [&](int t, int irem, int mrem, const GradedOperator& acc) {
          if (t == size - 1) {
            if (irem < 1 || irem > rho) return;
            const auto [lo, hi] = cycle_mode_support(rho, irem, w);
            if (mrem < lo || mrem > hi) return;
            const GradedOperator& f = factor(cycles[t], irem, mrem);
            if (f.is_zero()) return;
            out += product_truncated(acc, f, max_degree) * pref;
            return;
          }
          const int later = size - 1 - t;
          for (int a = 1; a <= rho; ++a) {
            if (irem - a < later || irem - a > later * rho) continue;
            const auto [lo, hi] = cycle_mode_support(rho, a, w);
            for (int mm = lo; mm <= hi; ++mm) {
              const GradedOperator& f = factor(cycles[t], a, mm);
              if (f.is_zero()) continue;
              GradedOperator next = product_truncated(acc, f, max_degree);
              if (next.is_zero()) continue;
              rec(t + 1, irem - a, mrem - mm, next);
            }
          }
        };
    rec(0, i, m + 1 - size, GradedOperator::constant(Scalar(1), w));
  }
  return out.truncated(max_degree);
}

GradedOperator composite_mode(const TwistSpec& spec, int i, int m, Window w) {
  if (i > w.max_degree)
    throw WindowTooSmall("composite mode of degree " + std::to_string(i) +
                         " exceeds window degree " + std::to_string(w.max_degree));
  std::map<std::tuple<int, int, int>, GradedOperator> cache;
  auto factor = [&](int j, int ij, int mj) -> const GradedOperator& {
    auto key = std::make_tuple(j, ij, mj);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, cycle_mode(spec, j, ij, mj, w)).first;
    return it->second;
  };
  return composite_from_factors(spec, i, m, w, factor, w.max_degree);
}

std::pair<int, int> reindex(const TwistSpec& spec, int i) {
  if (i < 1 || i > spec.r())
    throw std::out_of_range("mode index " + std::to_string(i) + " outside 1.." +
                            std::to_string(spec.r()));
  const int l = (i - 1) / spec.rho;
  return {i - l * spec.rho, l};
}

}  // namespace qairy
