#include "qairy/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace qairy {

std::string to_string(const Mode& m) {
  return "K^" + std::to_string(m.cycle) + "_" + std::to_string(m.index);
}

Window merge(const Window& a, const Window& b) {
  return {std::max(a.max_index, b.max_index), std::max(a.max_degree, b.max_degree)};
}

int grading_degree(const Signature& s) {
  return static_cast<int>(s.creators.size()) - static_cast<int>(s.annihilators.size()) + s.hbar_half;
}

int max_mode_index(const Signature& s) {
  int w = 0;
  for (const auto& m : s.creators) w = std::max(w, std::abs(m.index));
  for (const auto& m : s.annihilators) w = std::max(w, std::abs(m.index));
  return w;
}

namespace {

void check_shape(const Signature& sig) {
  if (sig.hbar_half < 2 * static_cast<int>(sig.annihilators.size()))
    throw std::invalid_argument("signature has fewer hbar powers than annihilators");
  if (!std::is_sorted(sig.creators.begin(), sig.creators.end()) ||
      !std::is_sorted(sig.annihilators.begin(), sig.annihilators.end()))
    throw std::invalid_argument("signature mode lists must be sorted");
  for (const auto& m : sig.creators)
    if (!m.is_creator()) throw std::invalid_argument("non-creator in creator list");
  for (const auto& m : sig.annihilators)
    if (!m.is_annihilator()) throw std::invalid_argument("non-annihilator in annihilator list");
}

bool inside(const Signature& sig, const Window& w) {
  return grading_degree(sig) <= w.max_degree && max_mode_index(sig) <= w.max_index;
}

}  // namespace

GradedOperator GradedOperator::mode(const Mode& m, Window w, int symbols) {
  GradedOperator op(w);
  if (m.is_annihilator()) {
    op.add({2, {}, {m}}, Scalar(1));
  } else if (m.is_creator()) {
    op.add({0, {m}, {}}, Scalar(1));
  } else {
    op.add({1, {}, {}}, Scalar::symbol(symbols, m.cycle));
  }
  return op;
}

GradedOperator GradedOperator::constant(const Scalar& c, Window w) {
  GradedOperator op(w);
  op.add({}, c);
  return op;
}

GradedOperator GradedOperator::hbar_power(int hbar_half, const Scalar& c, Window w) {
  GradedOperator op(w);
  op.add({hbar_half, {}, {}}, c);
  return op;
}

void GradedOperator::set_window(Window w) {
  for (const auto& [sig, c] : terms_) {
    if (!inside(sig, w)) throw WindowOverflow("existing term does not fit the new window");
  }
  window_ = w;
}

void GradedOperator::add(const Signature& sig, const Scalar& c) {
  if (c.is_zero()) return;
  check_shape(sig);
  if (!inside(sig, window_))
    throw WindowOverflow("term of degree " + std::to_string(grading_degree(sig)) + " / index " +
                         std::to_string(max_mode_index(sig)) + " exceeds window (W=" +
                         std::to_string(window_.max_index) +
                         ", D=" + std::to_string(window_.max_degree) + ")");
  auto [it, fresh] = terms_.try_emplace(sig, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void GradedOperator::add_truncated(const Signature& sig, const Scalar& c) {
  if (!inside(sig, window_)) return;
  add(sig, c);
}

GradedOperator& GradedOperator::operator+=(const GradedOperator& b) {
  window_ = merge(window_, b.window_);
  for (const auto& [sig, c] : b.terms_) add(sig, c);
  return *this;
}

GradedOperator& GradedOperator::operator-=(const GradedOperator& b) {
  window_ = merge(window_, b.window_);
  for (const auto& [sig, c] : b.terms_) add(sig, -c);
  return *this;
}

GradedOperator& GradedOperator::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

GradedOperator GradedOperator::operator-() const {
  GradedOperator out = *this;
  for (auto& [sig, c] : out.terms_) c = -c;
  return out;
}

GradedOperator GradedOperator::truncated(int max_degree) const {
  GradedOperator out(window_);
  for (const auto& [sig, c] : terms_)
    if (grading_degree(sig) <= max_degree) out.terms_.emplace(sig, c);
  return out;
}

GradedOperator GradedOperator::homogeneous_part(int degree) const {
  GradedOperator out(window_);
  for (const auto& [sig, c] : terms_)
    if (grading_degree(sig) == degree) out.terms_.emplace(sig, c);
  return out;
}

GradedOperator GradedOperator::restricted(int max_index) const {
  GradedOperator out(window_);
  for (const auto& [sig, c] : terms_)
    if (max_mode_index(sig) <= max_index) out.terms_.emplace(sig, c);
  return out;
}

int GradedOperator::min_degree() const {
  int d = -1;
  for (const auto& [sig, c] : terms_) {
    const int g = grading_degree(sig);
    if (d < 0 || g < d) d = g;
  }
  return d;
}

int GradedOperator::max_degree() const {
  int d = -1;
  for (const auto& [sig, c] : terms_) d = std::max(d, grading_degree(sig));
  return d;
}

std::string GradedOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [sig, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    const int surplus = sig.hbar_half - 2 * static_cast<int>(sig.annihilators.size());
    if (surplus == 1) os << "*hbar^(1/2)";
    if (surplus > 1) os << (surplus % 2 ? "*hbar^(" + std::to_string(surplus) + "/2)"
                                        : "*hbar^" + std::to_string(surplus / 2));
    for (const auto& m : sig.creators) os << "*" << qairy::to_string(m);
    for (const auto& m : sig.annihilators) os << "*" << qairy::to_string(m);
  }
  return os.str();
}

GradedOperator commutator_basic(const Mode& a, const Mode& b, Window w) {
  GradedOperator out(w);
  if (a.cycle == b.cycle && a.index + b.index == 0 && a.index != 0)
    out.add({2, {}, {}}, Scalar(static_cast<long>(a.index)));
  return out;
}

namespace {

struct Contractible {
  Mode ann;    // annihilator K^j_m of the left factor
  int alpha;   // its multiplicity on the left
  int beta;    // multiplicity of K^j_{-m} on the right
};

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// Remove `count` copies of m from a sorted list.
void remove_copies(std::vector<Mode>& v, const Mode& m, int count) {
  auto it = std::lower_bound(v.begin(), v.end(), m);
  v.erase(it, it + count);
}

std::vector<Mode> merged(const std::vector<Mode>& a, const std::vector<Mode>& b) {
  std::vector<Mode> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Every Wick term of (a)(b) with its integer weight.
template <class Emit>
void wick_terms(const Signature& a, const Signature& b, Emit&& emit, bool contracted_only = false) {
  std::vector<Contractible> shared;
  for (auto it = a.annihilators.begin(); it != a.annihilators.end();) {
    auto run_end = std::upper_bound(it, a.annihilators.end(), *it);
    const Mode partner{it->cycle, -it->index};
    auto [lo, hi] = std::equal_range(b.creators.begin(), b.creators.end(), partner);
    if (lo != hi)
      shared.push_back({*it, static_cast<int>(run_end - it), static_cast<int>(hi - lo)});
    it = run_end;
  }
  const int h = a.hbar_half + b.hbar_half;
  if (shared.empty()) {
    if (contracted_only) return;
    emit(Signature{h, merged(a.creators, b.creators), merged(a.annihilators, b.annihilators)},
         mpz_class(1));
    return;
  }
  std::vector<int> k(shared.size(), 0);
  if (contracted_only) k[0] = 1;
  while (true) {
    mpz_class weight = 1;
    std::vector<Mode> left_ann = a.annihilators;
    std::vector<Mode> right_cre = b.creators;
    for (std::size_t t = 0; t < shared.size(); ++t) {
      if (k[t] == 0) continue;
      const auto& s = shared[t];
      mpz_class mk;
      mpz_pow_ui(mk.get_mpz_t(), mpz_class(s.ann.index).get_mpz_t(), static_cast<unsigned long>(k[t]));
      weight *= binomial(s.alpha, k[t]) * binomial(s.beta, k[t]) * factorial(k[t]) * mk;
      remove_copies(left_ann, s.ann, k[t]);
      remove_copies(right_cre, Mode{s.ann.cycle, -s.ann.index}, k[t]);
    }
    emit(Signature{h, merged(a.creators, right_cre), merged(left_ann, b.annihilators)}, weight);
    std::size_t t = 0;
    while (t < shared.size()) {
      if (k[t] < std::min(shared[t].alpha, shared[t].beta)) {
        ++k[t];
        break;
      }
      k[t] = 0;
      ++t;
    }
    if (t == shared.size()) break;
  }
}

}  // namespace

GradedOperator normal_order_product(const GradedOperator& a, const GradedOperator& b) {
  GradedOperator out(merge(a.window(), b.window()));
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      const Scalar c = ca * cb;
      wick_terms(sa, sb, [&](Signature sig, const mpz_class& w) {
        out.add(sig, c * Scalar(Rational(w)));
      });
    }
  }
  return out;
}

GradedOperator commutator_with_creators(const GradedOperator& a, const GradedOperator& b, int max_degree) {
  Window w = merge(a.window(), b.window());
  w.max_degree = std::max(w.max_degree, max_degree);
  GradedOperator out(w);
  for (const auto& [sb, cb] : b.terms())
    if (!sb.annihilators.empty()) throw std::invalid_argument("right factor must be creator-only");
  for (const auto& [sa, ca] : a.terms()) {
    if (sa.annihilators.empty()) continue;
    for (const auto& [sb, cb] : b.terms()) {
      if (grading_degree(sa) + grading_degree(sb) > max_degree) continue;
      const Scalar c = ca * cb;
      wick_terms(sa, sb, [&](Signature sig, const mpz_class& w8) {
        out.add(sig, c * Scalar(Rational(w8)));
      }, true);
    }
  }
  return out;
}

GradedOperator product_truncated(const GradedOperator& a, const GradedOperator& b, int max_degree) {
  Window w = merge(a.window(), b.window());
  w.max_degree = std::max(w.max_degree, max_degree);
  GradedOperator out(w);
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      // Wick contractions preserve the grading degree
      if (grading_degree(sa) + grading_degree(sb) > max_degree) continue;
      const Scalar c = ca * cb;
      wick_terms(sa, sb, [&](Signature sig, const mpz_class& w8) {
        out.add(sig, c * Scalar(Rational(w8)));
      });
    }
  }
  return out;
}

GradedOperator operator_commutator(const GradedOperator& a, const GradedOperator& b) {
  return normal_order_product(a, b) - normal_order_product(b, a);
}

// ---------------------------------------------------------------------------

int grading_degree(const PolyKey& k) { return static_cast<int>(k.vars.size()) + k.hbar_half; }

Polynomial Polynomial::one() {
  Polynomial p;
  p.add({}, Scalar(1));
  return p;
}

Polynomial Polynomial::monomial(PolyKey key, const Scalar& c) {
  std::sort(key.vars.begin(), key.vars.end());
  for (const auto& v : key.vars)
    if (v.index < 1) throw std::invalid_argument("polynomial variables need positive index");
  Polynomial p;
  p.add(key, c);
  return p;
}

void Polynomial::add(const PolyKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& b) {
  for (const auto& [k, c] : b.terms_) add(k, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& b) {
  for (const auto& [k, c] : b.terms_) add(k, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add({ka.hbar_half + kb.hbar_half, merged(ka.vars, kb.vars)}, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::hbar_derivative(const Mode& v) const {
  Polynomial out;
  for (const auto& [k, c] : terms_) {
    auto [lo, hi] = std::equal_range(k.vars.begin(), k.vars.end(), v);
    const long mult = hi - lo;
    if (mult == 0) continue;
    PolyKey nk{k.hbar_half + 2, k.vars};
    nk.vars.erase(nk.vars.begin() + (lo - k.vars.begin()));
    out.add(nk, c * Scalar(mult));
  }
  return out;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial out;
  for (const auto& [k, c] : terms_)
    if (grading_degree(k) == degree) out.terms_.emplace(k, c);
  return out;
}

Polynomial Polynomial::truncated(int max_degree) const {
  Polynomial out;
  for (const auto& [k, c] : terms_)
    if (grading_degree(k) <= max_degree) out.terms_.emplace(k, c);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.hbar_half) os << "*hbar^(" << k.hbar_half << "/2)";
    for (const auto& v : k.vars) os << "*x^" << v.cycle << "_" << v.index;
  }
  return os.str();
}

Polynomial apply(const GradedOperator& a, const Polynomial& f) {
  Polynomial out;
  for (const auto& [sig, c] : a.terms()) {
    Polynomial g = f;
    for (const auto& m : sig.annihilators) {
      g = g.hbar_derivative(m);
      if (g.is_zero()) break;
    }
    if (g.is_zero()) continue;
    const int surplus = sig.hbar_half - 2 * static_cast<int>(sig.annihilators.size());
    Scalar factor = c;
    std::vector<Mode> created;
    for (const auto& m : sig.creators) {
      factor *= Scalar(static_cast<long>(-m.index));
      created.push_back({m.cycle, -m.index});
    }
    std::sort(created.begin(), created.end());
    for (const auto& [k, gc] : g.terms()) {
      out.add({k.hbar_half + surplus, merged(k.vars, created)}, gc * factor);
    }
  }
  return out;
}

}  // namespace qairy
