#include "qairy/dilaton.hpp"

#include <numeric>
#include <string>

namespace qairy {

GradedOperator LeadingPart::to_operator(Window w, int symbols) const {
  GradedOperator out(w);
  out.add({}, constant);
  for (const auto& [mode, c] : linear) {
    if (mode.is_annihilator())
      out.add({2, {}, {mode}}, c);
    else if (mode.is_creator())
      out.add({0, {mode}, {}}, c);
    else
      out.add({1, {}, {}}, c * Scalar::symbol(symbols, mode.cycle));
  }
  return out;
}

GradedOperator shift_operator(const GradedOperator& a, int s, const std::vector<Scalar>& Q) {
  if (s < 1) throw std::invalid_argument("dilaton shift index must be positive");
  GradedOperator out(a.window());
  for (const auto& [sig, coeff] : a.terms()) {
    std::vector<std::pair<Signature, Scalar>> acc{{sig, coeff}};
    for (auto it = sig.creators.begin(); it != sig.creators.end();) {
      auto run_end = std::upper_bound(it, sig.creators.end(), *it);
      const Mode mode = *it;
      const int copies = static_cast<int>(run_end - it);
      it = run_end;
      if (mode.index != -s) continue;
      if (mode.cycle < 1 || mode.cycle > static_cast<int>(Q.size()))
        throw std::invalid_argument("no shift constant for cycle " + std::to_string(mode.cycle));
      const Scalar minus_q = -Q[mode.cycle - 1];
      std::vector<std::pair<Signature, Scalar>> next;
      for (const auto& [cur, c] : acc) {
        Scalar binom(1);
        for (int t = 0; t <= copies; ++t) {
          Signature reduced = cur;
          auto pos = std::lower_bound(reduced.creators.begin(), reduced.creators.end(), mode);
          reduced.creators.erase(pos, pos + t);
          next.emplace_back(std::move(reduced), c * binom * minus_q.pow(static_cast<unsigned>(t)));
          binom = binom * Scalar(copies - t) / Scalar(t + 1);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [sg, c] : acc) out.add(sg, c);
  }
  return out;
}

Scalar degree_zero_normalization(int rho, int s) {
  if (!has_psi_provider(rho)) return Scalar(1);
  const std::vector<int> ps(rho, -s);
  // (1/rho) Psi(-s, ..., -s) (-Q)^rho = -kappa Q^rho
  Scalar k = psi_provider(rho).psi(0, ps) / Scalar(rho);
  return rho % 2 ? k : -k;
}

namespace {

void require_coprime(int rho, int s) {
  if (std::gcd(rho, s) != 1)
    throw NonCoprime("gcd(rho, s) = " + std::to_string(std::gcd(rho, s)) + " for rho = " +
                     std::to_string(rho) + ", s = " + std::to_string(s));
}

// e_0..e_len of the given values
std::vector<Scalar> elementary_symmetric(const std::vector<Scalar>& xs) {
  std::vector<Scalar> e(xs.size() + 1);
  e[0] = Scalar(1);
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t t = a + 1; t >= 1; --t) e[t] += e[t - 1] * xs[a];
  }
  return e;
}

}  // namespace

LeadingPart shifted_cycle_leading(int rho, int s, const Scalar& Qj, int j, int i, int m) {
  require_coprime(rho, s);
  if (i < 1 || i > rho) throw std::invalid_argument("cycle mode index outside 1..rho");
  LeadingPart lp;
  if (rho * (m - i + 1) + s * i == 0)
    lp.constant = -degree_zero_normalization(rho, s) * Qj.pow(static_cast<unsigned>(i));
  const Scalar c = Qj.pow(static_cast<unsigned>(i - 1));
  if (!c.is_zero()) lp.linear[{j, rho * m - (rho - s) * (i - 1)}] = c;
  return lp;
}

LeadingPart shifted_composite_leading(const TwistSpec& spec, int k, int l, int m) {
  spec.validate();
  const int rho = spec.rho, s = spec.s, n = spec.n;
  require_coprime(rho, s);
  if (k < 1 || k > rho || l < 0 || l > n - 1) throw std::invalid_argument("(k, l) out of range");
  const Scalar kappa = degree_zero_normalization(rho, s);
  std::vector<Scalar> shifted;
  for (const auto& q : spec.Q) shifted.push_back(-kappa * q.pow(static_cast<unsigned>(rho)));
  const Scalar pref =
      Scalar(1) / Scalar(rho).pow(static_cast<unsigned>(k + l * rho - l - 1));
  LeadingPart lp;
  if (k == rho && m == (l + 1) * (rho - s) - 1) lp.constant = pref * elementary_symmetric(shifted)[l + 1];
  const int q = rho * (m - l * (rho - s)) - (rho - s) * (k - 1);
  for (int mu = 1; mu <= n; ++mu) {
    std::vector<Scalar> others;
    for (int j = 1; j <= n; ++j)
      if (j != mu) others.push_back(shifted[j - 1]);
    const Scalar c = pref * spec.Q[mu - 1].pow(static_cast<unsigned>(k - 1)) *
                     elementary_symmetric(others)[l];
    if (!c.is_zero()) lp.linear[{mu, q}] = c;
  }
  return lp;
}

ShiftedModes::ShiftedModes(const TwistSpec& spec, Window w, int max_degree)
    : spec_(spec), w_(w), max_degree_(max_degree) {
  spec_.validate();
}

const GradedOperator& ShiftedModes::factor(int j, int i, int m) {
  auto key = std::make_tuple(j, i, m);
  auto it = factors_.find(key);
  if (it == factors_.end()) {
    GradedOperator f = shift_operator(cycle_mode(spec_, j, i, m, w_), spec_.s, spec_.Q);
    it = factors_.emplace(key, f.truncated(max_degree_)).first;
  }
  return it->second;
}

const GradedOperator& ShiftedModes::composite(int i, int m) {
  auto key = std::make_pair(i, m);
  auto it = composites_.find(key);
  if (it == composites_.end()) {
    GradedOperator c = composite_from_factors(
        spec_, i, m, w_, [this](int j, int ij, int mj) -> const GradedOperator& { return factor(j, ij, mj); },
        max_degree_);
    it = composites_.emplace(key, std::move(c)).first;
  }
  return it->second;
}

GradedOperator shifted_composite_mode(const TwistSpec& spec, int i, int m, Window w, int max_degree) {
  spec.validate();
  Window wide{w.max_index, std::max(w.max_degree, spec.rho)};
  ShiftedModes factors(spec, wide, max_degree);
  GradedOperator out = factors.composite(i, m);
  out.set_window(w);
  return out;
}

Matrix shift_matrix(int rho, const std::vector<Scalar>& Q) {
  const int n = static_cast<int>(Q.size());
  if (n < 1) throw std::invalid_argument("shift matrix needs at least one constant");
  std::vector<Scalar> minus_pow;
  for (const auto& q : Q) minus_pow.push_back(-q.pow(static_cast<unsigned>(rho)));
  Matrix M(n, std::vector<Scalar>(n));
  for (int mu = 1; mu <= n; ++mu) {
    std::vector<Scalar> others;
    for (int j = 1; j <= n; ++j)
      if (j != mu) others.push_back(minus_pow[j - 1]);
    const auto e = elementary_symmetric(others);
    for (int ell = 1; ell <= n; ++ell) M[mu - 1][ell - 1] = e[ell - 1];
  }
  return M;
}

RootShifts root_of_unity_shifts(int rho, int n) {
  if (rho < 1 || n < 2) throw std::invalid_argument("root shifts need rho >= 1 and n >= 2");
  const int r = rho * n;
  RootShifts out;
  for (int j = 1; j <= n; ++j) out.Q.push_back(Scalar::root_power(r, j));
  out.M.assign(n, std::vector<Scalar>(n));
  for (int mu = 1; mu <= n; ++mu)
    for (int ell = 1; ell <= n; ++ell)
      out.M[mu - 1][ell - 1] = Scalar::root_power(r, static_cast<long long>(rho) * mu * (ell - 1));
  return out;
}

VietaSides vieta_subset_identity(int theta_power, int n, int mu, int ell) {
  if (n < 2 || mu < 1 || mu > n || ell < 1 || ell > n)
    throw std::invalid_argument("vieta identity needs n >= 2 and 1 <= mu, ell <= n");
  if (std::gcd(theta_power, n) != 1) throw std::invalid_argument("theta must be primitive");
  VietaSides out;
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    if (mask & (1U << (mu - 1))) continue;
    if (std::popcount(mask) != ell - 1) continue;
    Scalar prod(1);
    for (int j = 1; j <= n; ++j)
      if (mask & (1U << (j - 1))) prod *= -Scalar::root_power(n, static_cast<long long>(theta_power) * j);
    out.lhs += prod;
  }
  out.rhs = Scalar::root_power(n, static_cast<long long>(theta_power) * mu * (ell - 1));
  return out;
}

std::optional<Matrix> invert_matrix(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("matrix must be square");
    for (const auto& x : row)
      if (!x.is_c_free()) throw NotInvertible("matrix entries must be free of zero-mode symbols");
  }
  Matrix a = m;
  Matrix inv(n, std::vector<Scalar>(n));
  for (std::size_t k = 0; k < n; ++k) inv[k][k] = Scalar(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Scalar f = a[c][c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Scalar g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

Scalar determinant(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Scalar();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Scalar f = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Scalar g = a[r][c] * f;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= g * a[c][k];
    }
  }
  return det;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), p = b.size(), q = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<Scalar>(q));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t j = 0; j < q; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

bool has_airy_shape(const NormalizedOperator& h, int max_degree) {
  if (!h.target.is_annihilator()) return false;
  bool saw_target = false;
  for (const auto& [sig, c] : h.op.terms()) {
    const int d = grading_degree(sig);
    if (d == 0 || d > max_degree) return false;
    if (d == 1) {
      if (sig != Signature{2, {}, {h.target}} || !c.is_one()) return false;
      saw_target = true;
    }
  }
  return saw_target;
}

std::vector<NormalizedOperator> eliminate_linear_parts(
    const std::vector<std::pair<int, GradedOperator>>& grouped) {
  std::map<int, std::vector<const GradedOperator*>> groups;
  for (const auto& [key, op] : grouped) groups[key].push_back(&op);
  std::vector<NormalizedOperator> out;
  for (const auto& [key, ops] : groups) {
    std::map<Mode, int> columns;
    for (const auto* op : ops) {
      for (const auto& [sig, c] : op->terms()) {
        const int d = grading_degree(sig);
        if (d == 0)
          throw InconsistentStructure("degree-zero term in block " + std::to_string(key));
        if (d != 1) continue;
        if (sig.annihilators.size() != 1 || !sig.creators.empty())
          throw InconsistentStructure("degree-one term is not a derivative in block " +
                                      std::to_string(key));
        columns.emplace(sig.annihilators.front(), 0);
      }
    }
    if (columns.size() != ops.size())
      throw InconsistentStructure("block " + std::to_string(key) + " has " +
                                  std::to_string(ops.size()) + " operators but " +
                                  std::to_string(columns.size()) + " linear modes");
    int col = 0;
    for (auto& [mode, idx] : columns) idx = col++;
    const std::size_t n = ops.size();
    Matrix A(n, std::vector<Scalar>(n));
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& [mode, idx] : columns) {
        auto it = ops[b]->terms().find(Signature{2, {}, {mode}});
        if (it != ops[b]->terms().end()) A[b][idx] = it->second;
      }
    }
    auto X = invert_matrix(A);
    if (!X) throw SingularBlock("linear block " + std::to_string(key) + " is singular");
    for (const auto& [mode, idx] : columns) {
      GradedOperator h(ops.front()->window());
      for (std::size_t b = 0; b < n; ++b) {
        if ((*X)[idx][b].is_zero()) continue;
        h += *ops[b] * (*X)[idx][b];
      }
      out.push_back({mode, std::move(h)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const NormalizedOperator& a, const NormalizedOperator& b) { return a.target < b.target; });
  return out;
}

int linear_index(const TwistSpec& spec, int i, int m) {
  return spec.rho * m - (spec.rho - spec.s) * (i - 1);
}

std::vector<NormalizedOperator> normalize_to_airy_form(const TwistSpec& spec,
                                                       const std::map<int, int>& bounds, Window w) {
  spec.validate();
  require_coprime(spec.rho, spec.s);
  if (spec.rho > 1) {
    for (int j = 1; j <= spec.n; ++j)
      if (spec.Q[j - 1].is_zero()) throw ZeroShift("Q_" + std::to_string(j) + " = 0 with rho > 1");
  }
  const int r = spec.r();
  const Window wide{w.max_index, std::max({w.max_degree, r, spec.rho})};
  ShiftedModes factors(spec, wide, r);
  std::vector<std::pair<int, GradedOperator>> grouped;
  for (const auto& [i, m_min] : bounds) {
    if (i < 1 || i > r) throw std::invalid_argument("bound for mode index outside 1..r");
    for (int m = m_min; linear_index(spec, i, m) <= w.max_index; ++m) {
      grouped.emplace_back(linear_index(spec, i, m), factors.composite(i, m));
    }
  }
  auto out = eliminate_linear_parts(grouped);
  if (static_cast<int>(out.size()) != spec.n * std::max(w.max_index, 0))
    throw InconsistentStructure("subalgebra does not cover every derivative up to index " +
                                std::to_string(w.max_index));
  for (const auto& h : out) {
    if (!has_airy_shape(h, r))
      throw InconsistentStructure("normalized operator for " + to_string(h.target) +
                                  " violates the Airy shape");
  }
  return out;
}

}  // namespace qairy
