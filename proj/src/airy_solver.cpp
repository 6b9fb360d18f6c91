#include "qairy/airy_solver.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include <omp.h>

namespace qairy {

namespace {

Scalar multiplicity_factorial(const std::vector<Mode>& vars) {
  Scalar f(1);
  std::size_t run = 0;
  for (std::size_t t = 0; t < vars.size(); ++t) {
    run = (t > 0 && vars[t] == vars[t - 1]) ? run + 1 : 1;
    if (run > 1) f *= Scalar(static_cast<long>(run));
  }
  return f;
}

long multiplicity(const std::vector<Mode>& vars, const Mode& v) {
  return static_cast<long>(std::count(vars.begin(), vars.end(), v));
}

std::vector<Mode> with_var(std::vector<Mode> vars, const Mode& v) {
  vars.insert(std::upper_bound(vars.begin(), vars.end(), v), v);
  return vars;
}

// hbar F as an operator built from creators: x^j_p = K^j_{-p} / p.
GradedOperator creator_operator(const Polynomial& g, int max_degree) {
  int W = 0;
  for (const auto& [k, c] : g.terms())
    for (const auto& v : k.vars) W = std::max(W, v.index);
  GradedOperator op(Window{W, max_degree});
  for (const auto& [k, c] : g.terms()) {
    if (grading_degree(k) > max_degree) continue;
    Signature sig{k.hbar_half, {}, {}};
    Scalar coef = c;
    for (const auto& v : k.vars) {
      sig.creators.push_back({v.cycle, -v.index});
      coef *= Scalar(Rational(1, v.index));
    }
    std::sort(sig.creators.begin(), sig.creators.end());
    op.add(sig, coef);
  }
  return op;
}

// [a, g] / hbar for creator-only g, keeping degrees <= max_degree.
GradedOperator bracket_over_hbar(const GradedOperator& a, const GradedOperator& g, int max_degree) {
  const GradedOperator c = commutator_with_creators(a, g, max_degree + 2);
  GradedOperator out(Window{c.window().max_index, max_degree});
  for (const auto& [sig, coef] : c.terms()) {
    Signature s = sig;
    s.hbar_half -= 2;
    if (grading_degree(s) > max_degree) continue;
    out.add(s, coef);
  }
  return out;
}

// Terms that can still change under a further bracket: some annihilator, and
// room below max_degree (each bracket raises the degree by at least one).
GradedOperator bracket_candidates(const GradedOperator& a, int max_degree) {
  GradedOperator out(a.window());
  for (const auto& [sig, c] : a.terms())
    if (!sig.annihilators.empty() && grading_degree(sig) < max_degree) out.add(sig, c);
  return out;
}

std::vector<std::size_t> constraint_order(const AiryStructure& A, const SolveOptions& opt) {
  std::vector<std::size_t> order = opt.order;
  if (order.empty()) {
    order.resize(A.operators.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) throw std::invalid_argument("constraint order is not a permutation");
  if (sorted.size() != A.operators.size()) throw std::invalid_argument("constraint order is not a permutation");
  return order;
}

}  // namespace

void AiryStructure::validate() const {
  std::set<Mode> targets;
  for (const auto& h : operators) {
    if (!has_airy_shape(h, window.max_degree))
      throw InconsistentStructure("operator for " + to_string(h.target) + " is not in Airy form");
    if (!targets.insert(h.target).second)
      throw InconsistentStructure("target " + to_string(h.target) + " appears twice");
  }
  for (const auto& h : operators)
    for (const auto& [sig, c] : h.op.terms()) {
      for (const auto& m : sig.creators)
        if (!targets.count({m.cycle, -m.index}))
          throw WindowTooSmall("variable " + to_string(Mode{m.cycle, -m.index}) + " has no operator");
      for (const auto& m : sig.annihilators)
        if (!targets.count(m))
          throw WindowTooSmall("variable " + to_string(m) + " has no operator");
    }
}

Scalar coefficient(const FreeEnergy& F, int h, std::vector<Mode> sigma) {
  std::sort(sigma.begin(), sigma.end());
  PolyKey key{h, sigma};
  if (grading_degree(key) > F.cutoff)
    throw std::out_of_range("coefficient degree beyond the free-energy cutoff");
  auto it = F.coeffs.find(key);
  return it == F.coeffs.end() ? Scalar(0) : it->second;
}

Polynomial potential(const FreeEnergy& F) {
  Polynomial g;
  for (const auto& [k, c] : F.coeffs) g.add(k, c / multiplicity_factorial(k.vars));
  return g;
}

std::map<int, int> required_indices(const WeightGrading& g, int D_F) {
  std::map<int, int> out;
  const int budget = g.s * std::max(D_F - 2, 0);
  for (auto [j, scale] : g.scale) out[j] = budget / scale;
  return out;
}

Polynomial conjugate_apply(const GradedOperator& a, const GradedOperator& hbarF, int max_degree) {
  GradedOperator acc = a.truncated(max_degree);
  GradedOperator cur = bracket_candidates(acc, max_degree);
  for (int t = 1; !cur.is_zero(); ++t) {
    cur = bracket_over_hbar(cur, hbarF, max_degree) * Scalar(Rational(1, t));
    acc += cur;
    cur = bracket_candidates(cur, max_degree);
  }
  Polynomial out;
  for (const auto& [sig, c] : acc.terms()) {
    if (!sig.annihilators.empty()) continue;
    GradedOperator single(acc.window());
    single.add(sig, c);
    out += apply(single, Polynomial::one());
  }
  return out;
}

FreeEnergy solve(const AiryStructure& A, int D_F, const SolveOptions& opt) {
  A.validate();
  if (A.grading) {
    std::set<Mode> targets;
    for (const auto& h : A.operators) targets.insert(h.target);
    for (auto [j, top] : required_indices(*A.grading, D_F))
      for (int p = 1; p <= top; ++p)
        if (!targets.count({j, p}))
          throw WindowTooSmall("degree " + std::to_string(D_F) + " needs an operator for " +
                               to_string(Mode{j, p}));
  }
  const auto order = constraint_order(A, opt);
  const std::size_t K = A.operators.size();
  FreeEnergy F;
  F.cutoff = D_F;
  Polynomial g;  // hbar F
  for (int d = 3; d <= D_F; ++d) {
    const GradedOperator gop = creator_operator(g, d - 1);
    std::vector<Polynomial> rhs(K);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (std::size_t k = 0; k < K; ++k) {
      rhs[k] = Polynomial() - conjugate_apply(A.operators[k].op, gop, d - 1).homogeneous_part(d - 1);
    }
    // d_k G_d = rhs[k]; each monomial is integrated through the first constraint in `order`
    // whose variable it contains.
    std::map<Mode, std::size_t> rank;
    for (std::size_t t = 0; t < K; ++t) rank[A.operators[order[t]].target] = t;
    Polynomial gd;
    for (std::size_t t = 0; t < K; ++t) {
      const std::size_t k = order[t];
      const Mode v = A.operators[k].target;
      for (const auto& [key, c] : rhs[k].terms()) {
        PolyKey up{key.hbar_half, with_var(key.vars, v)};
        std::size_t first = K;
        for (const auto& u : up.vars) first = std::min(first, rank.at(u));
        if (first != t) continue;
        gd.add(up, c / Scalar(multiplicity(up.vars, v)));
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      const Mode v = A.operators[k].target;
      if (gd.hbar_derivative(v) != rhs[k] * Polynomial::monomial({2, {}}, Scalar(1)))
        throw InconsistentStructure("degree " + std::to_string(d) + " constraint for " + to_string(v) +
                                    " is not integrable");
    }
    g += gd;
    for (const auto& [key, c] : gd.terms()) F.coeffs[key] = c * multiplicity_factorial(key.vars);
  }
  return F;
}

Polynomial exp_truncated(const FreeEnergy& F, int max_degree) {
  const Polynomial g = potential(F);
  Polynomial f;
  for (const auto& [k, c] : g.terms()) f.add({k.hbar_half - 2, k.vars}, c);
  Polynomial z = Polynomial::one();
  Polynomial term = Polynomial::one();
  for (int t = 1; t <= max_degree; ++t) {
    term = (term * f).truncated(max_degree) * Polynomial::monomial({0, {}}, Scalar(Rational(1, t)));
    if (term.is_zero()) break;
    z += term;
  }
  return z.truncated(max_degree);
}

namespace {

// Restricted growth strings of length b: block labels of every set partition.
void set_partitions(int b, std::vector<int>& cur, int blocks,
                    const std::function<void(const std::vector<int>&, int)>& emit) {
  if (static_cast<int>(cur.size()) == b) {
    emit(cur, blocks);
    return;
  }
  for (int t = 0; t <= blocks; ++t) {
    cur.push_back(t);
    set_partitions(b, cur, std::max(blocks, t + 1), emit);
    cur.pop_back();
  }
}

// hbar^{|B|-1} d_B (hbar F), cached by the sorted derivative multiset.
class DerivativeCache {
 public:
  explicit DerivativeCache(const Polynomial& g) : g_(g) {}
  const Polynomial& get(std::vector<Mode> vars) {
    std::sort(vars.begin(), vars.end());
    std::lock_guard lock(mu_);
    auto it = cache_.find(vars);
    if (it != cache_.end()) return it->second;
    Polynomial d = g_;
    for (const auto& v : vars) d = d.hbar_derivative(v);
    Polynomial out;
    for (const auto& [k, c] : d.terms()) out.add({k.hbar_half - 2, k.vars}, c);
    return cache_.emplace(vars, std::move(out)).first->second;
  }

 private:
  const Polynomial& g_;
  std::mutex mu_;
  std::map<std::vector<Mode>, Polynomial> cache_;
};

Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, int max_degree) {
  Polynomial out;
  for (const auto& [ka, ca] : a.terms()) {
    const int da = grading_degree(ka);
    for (const auto& [kb, cb] : b.terms()) {
      if (da + grading_degree(kb) > max_degree) continue;
      std::vector<Mode> vars = ka.vars;
      vars.insert(vars.end(), kb.vars.begin(), kb.vars.end());
      std::sort(vars.begin(), vars.end());
      out.add({ka.hbar_half + kb.hbar_half, std::move(vars)}, ca * cb);
    }
  }
  return out;
}

// e^{-F} A e^{F} 1 up to max_degree: each annihilator word expands over set
// partitions into products of derivatives of hbar F.
Polynomial bell_conjugate(const GradedOperator& a, DerivativeCache& cache, int max_degree) {
  Polynomial out;
  for (const auto& [sig, c] : a.terms()) {
    const int base = grading_degree(sig) - static_cast<int>(sig.annihilators.size());
    if (base > max_degree) continue;
    GradedOperator front(Window{a.window().max_index, a.window().max_degree});
    Signature fs = sig;
    fs.annihilators.clear();
    fs.hbar_half -= 2 * static_cast<int>(sig.annihilators.size());
    front.add(fs, c);
    const Polynomial prefix = apply(front, Polynomial::one());
    if (sig.annihilators.empty()) {
      out += prefix;
      continue;
    }
    const int b = static_cast<int>(sig.annihilators.size());
    std::vector<int> cur;
    set_partitions(b, cur, 0, [&](const std::vector<int>& label, int blocks) {
      // every block contributes degree >= |B| + 1
      if (base + b + blocks > max_degree) return;
      Polynomial prod = prefix;
      for (int t = 0; t < blocks && !prod.is_zero(); ++t) {
        std::vector<Mode> vars;
        for (int e = 0; e < b; ++e)
          if (label[e] == t) vars.push_back(sig.annihilators[e]);
        prod = multiply_truncated(prod, cache.get(vars), max_degree);
      }
      out += prod;
    });
  }
  return out.truncated(max_degree);
}

}  // namespace

ResidualReport residual_check(const AiryStructure& A, const FreeEnergy& F, int D, bool parallel) {
  ResidualReport rep;
  rep.checked_through = D - 1;
  const Polynomial g = potential(F);
  DerivativeCache cache(g);
  const std::size_t K = A.operators.size();
  std::vector<std::optional<int>> lowest(K);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t k = 0; k < K; ++k) {
    const Polynomial res = bell_conjugate(A.operators[k].op, cache, D - 1);
    for (const auto& [key, c] : res.terms()) {
      const int deg = grading_degree(key);
      if (!lowest[k] || deg < *lowest[k]) lowest[k] = deg;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (!lowest[k]) continue;
    rep.clean = false;
    rep.failures.emplace_back(A.operators[k].target, *lowest[k]);
    if (!rep.lowest_nonzero_degree || *lowest[k] < *rep.lowest_nonzero_degree)
      rep.lowest_nonzero_degree = lowest[k];
  }
  return rep;
}

AiryStructure structure_from_spec(const TwistSpec& spec, const std::map<int, int>& bounds, int D_F) {
  WeightGrading grading{spec.s, {}};
  for (int j = 1; j <= spec.n; ++j) grading.scale[j] = 1;
  const int W = std::max(1, spec.s * (D_F - 2));
  AiryStructure A;
  A.window = Window{W, spec.r()};
  A.operators = normalize_to_airy_form(spec, bounds, A.window);
  A.grading = grading;
  return A;
}

std::string to_string(const FreeEnergy& F) {
  std::ostringstream os;
  for (const auto& [k, c] : F.coeffs) {
    os << "h=" << k.hbar_half << " [";
    for (std::size_t t = 0; t < k.vars.size(); ++t) os << (t ? " " : "") << to_string(k.vars[t]);
    os << "] " << c.to_string() << "\n";
  }
  return os.str();
}

}  // namespace qairy
