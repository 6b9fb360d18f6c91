#include "qairy/classify.hpp"

#include <numeric>
#include <stdexcept>

#include "qairy/dilaton.hpp"

namespace qairy {

std::string to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::a: return "a";
    case CaseLabel::b: return "b";
    case CaseLabel::c: return "c";
    case CaseLabel::d: return "d";
    case CaseLabel::none: return "none";
  }
  return "none";
}

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::NonCoprime: return "NonCoprime";
    case Rejection::STooLarge: return "STooLarge";
    case Rejection::NoLambdaGoodPartition: return "NoLambdaGoodPartition";
    case Rejection::ZeroShift: return "ZeroShift";
    case Rejection::SingularShiftMatrix: return "SingularShiftMatrix";
  }
  return "none";
}

std::string to_string(AppendRejection r) {
  switch (r) {
    case AppendRejection::none: return "none";
    case AppendRejection::ZeroShift: return "ZeroShift";
    case AppendRejection::NoPartitionExtension: return "NoPartitionExtension";
  }
  return "none";
}

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

int subalgebra_bound(int rho, int s, int k, int l) {
  if (rho < 1 || s < 1 || k < 1 || k > rho || l < 0)
    throw std::invalid_argument("subalgebra_bound needs 1 <= k <= rho, l >= 0, s >= 1");
  return l * (rho - s) + k - 1 - floor_div(s * (k - 1), rho) + (k == 1 ? 1 : 0);
}

std::map<int, int> subalgebra_bounds(int rho, int n, int s) {
  std::map<int, int> out;
  for (int l = 0; l < n; ++l)
    for (int k = 1; k <= rho; ++k) out[k + l * rho] = subalgebra_bound(rho, s, k, l);
  return out;
}

std::map<int, int> subalgebra_profile(int rho, int n, int s) {
  std::map<int, int> prof;
  for (auto [i, b] : subalgebra_bounds(rho, n, s)) prof[i] = i - (i == 1 ? 0 : b);
  return prof;
}

ClassificationVerdict classify(int rho, int n, int s, const std::vector<Scalar>& Q) {
  if (rho < 1 || s < 1) throw std::invalid_argument("rho and s must be positive");
  if (n < 2) throw std::invalid_argument("classification covers n >= 2 cycles");
  if (static_cast<int>(Q.size()) != n) throw std::invalid_argument("need one shift constant per cycle");
  ClassificationVerdict v;
  v.rho = rho;
  v.n = n;
  v.s = s;
  auto reject = [&](Rejection r, std::string detail) {
    v.reason = r;
    v.detail = std::move(detail);
    return v;
  };
  if (std::gcd(rho, s) != 1)
    return reject(Rejection::NonCoprime, "gcd(rho, s) = " + std::to_string(std::gcd(rho, s)));
  if (s >= 3) return reject(Rejection::STooLarge, "no lambda-good subalgebra for s >= 3");
  v.bounds = subalgebra_bounds(rho, n, s);
  auto partition = find_partition_with_profile(rho * n, subalgebra_profile(rho, n, s));
  if (!partition)
    return reject(Rejection::NoLambdaGoodPartition, "the subalgebra profile is not a partition profile");
  v.partition = partition;
  if (rho > 1) {
    for (int j = 0; j < n; ++j)
      if (Q[j].is_zero()) return reject(Rejection::ZeroShift, "Q_" + std::to_string(j + 1) + " = 0");
  }
  const Matrix M = shift_matrix(rho, Q);
  v.shift_determinant = determinant(M);
  if (!invert_matrix(M)) return reject(Rejection::SingularShiftMatrix, "shift matrix is singular");
  v.admissible = true;
  v.case_label = rho == 1 ? (s == 1 ? CaseLabel::a : CaseLabel::c)
                          : (s == 1 ? CaseLabel::b : CaseLabel::d);
  v.requirements = {"sum_K0_zero", "shift_matrix_invertible"};
  if (rho > 1) v.requirements.push_back("all_Q_nonzero");
  return v;
}

std::vector<ClassificationVerdict> enumerate_classifications(int r_max, int s_max) {
  std::vector<ClassificationVerdict> out;
  for (int r = 2; r <= r_max; ++r)
    for (int rho = 1; rho <= r / 2; ++rho) {
      if (r % rho) continue;
      const int n = r / rho;
      const auto Q = TwistSpec::with_root_shifts(rho, n, 1).Q;
      for (int s = 1; s <= s_max; ++s) out.push_back(classify(rho, n, s, Q));
    }
  return out;
}

std::vector<ClassificationVerdict> enumerate_admissible(int r_max) {
  if (r_max < 4) throw std::invalid_argument("enumerate_admissible needs r_max >= 4");
  std::vector<ClassificationVerdict> out;
  for (auto& v : enumerate_classifications(r_max, r_max + 1))
    if (v.admissible) out.push_back(std::move(v));
  return out;
}

ForbiddenWitness forbidden_partition_witness(int rho, int s) {
  if (s < 3 || s > rho - 1 || std::gcd(rho, s) != 1)
    throw std::invalid_argument("witness needs 3 <= s <= rho - 1 with gcd(rho, s) = 1");
  ForbiddenWitness w;
  for (int j = 1; j <= s; ++j) w.A.push_back(ceil_div(rho * j, s) - ceil_div(rho * (j - 1), s));
  w.a = w.A[0] - 1;
  for (int j = 2; j <= s - 1; ++j) {
    if (w.A[j - 1] != w.a) {
      w.failed_constraint = "A_" + std::to_string(j) + " = A_1 - 1";
      w.failed_index = j;
      return w;
    }
  }
  if (w.A[s - 1] + 1 != w.a) {
    w.failed_constraint = "A_s + 1 = A_1 - 1";
    w.failed_index = s;
    return w;
  }
  // only reachable if a s = rho, which coprimality rules out
  w.failed_constraint = "a s = rho";
  w.failed_index = 0;
  return w;
}

AppendVerdict append_one_cycle(const AppendBase& base) {
  int r = 0, sum_s = 0;
  for (const auto& c : base.cycles) {
    if (c.rho < 1 || c.s < 1) throw std::invalid_argument("cycle data must be positive");
    r += c.rho;
    sum_s += c.s;
  }
  if (r != base.lambda.size()) throw std::invalid_argument("partition size differs from r");
  AppendVerdict v;
  v.required_last = sum_s;
  for (const auto& c : base.cycles) {
    if (c.Q.is_zero()) {
      v.reason = AppendRejection::ZeroShift;
      return v;
    }
  }
  std::map<int, int> prof;
  for (int i = 1; i <= r; ++i) prof[i] = lambda_of(base.lambda, i);
  for (auto& p : partitions_matching(r + 1, prof)) {
    const int last = lambda_of(p, r + 1);
    v.candidates.emplace_back(std::move(p), last);
  }
  prof[r + 1] = sum_s;
  v.extended = find_partition_with_profile(r + 1, prof);
  if (!v.extended) {
    v.reason = AppendRejection::NoPartitionExtension;
    return v;
  }
  v.accepted = true;
  for (int i = 1; i <= r; ++i) v.bounds[i] = i - lambda_of(base.lambda, i);
  v.bounds[r + 1] = r + 1 - sum_s;
  return v;
}

AiryStructure appended_structure(const TwistSpec& base, const AppendVerdict& v, int D_F,
                                 AppendNormalization norm) {
  if (!v.accepted) throw std::invalid_argument("appending was rejected");
  const int rho = base.rho, n = base.n, s = base.s, r = base.r();
  const int fresh = n + 1;
  const int Wt = std::max(1, s * (D_F - 2));
  const int Wn = Wt / rho;
  TwistSpec spec = base;
  spec.zero_mode_symbols = n + 1;
  const Window w{Wt, r + 1};
  ShiftedModes modes(spec, w, r + 1);

  auto weight = [&](int i, int m) { return rho * (m - i + 1) + s * i; };
  auto new_mode = [&](int m) { return GradedOperator::mode({fresh, m}, w, n + 1); };
  // K^{new}_{m1} H^{i-1}_{m2} summed over m1 + m2 = m - 1, |m1| <= Wn
  auto mixed = [&](int i, int m) {
    GradedOperator out(w);
    for (int m1 = -Wn; m1 <= Wn; ++m1) {
      const int m2 = m - 1 - m1;
      if (i == 1) {
        if (m2 == -1) out += new_mode(m1);
        continue;
      }
      const GradedOperator& h = modes.composite(i - 1, m2);
      if (h.is_zero()) continue;
      out += product_truncated(new_mode(m1), h, r + 1);
    }
    return out;
  };

  std::vector<std::pair<int, GradedOperator>> grouped;
  for (const auto& [i, m_min] : v.bounds) {
    for (int m = m_min; weight(i, m) <= Wt + s; ++m) {
      GradedOperator h = i <= r ? modes.composite(i, m) : GradedOperator(w);
      const Scalar c = (norm == AppendNormalization::theorem && i >= 2 && i <= r) ? Scalar(r) : Scalar(1);
      h += mixed(i, m) * c;
      GradedOperator kept(Window{Wt, r + 1});
      for (const auto& [sig, coef] : h.terms()) {
        bool inside = true;
        for (const auto& md : sig.creators)
          if (md.cycle == fresh && -md.index > Wn) inside = false;
        for (const auto& md : sig.annihilators)
          if (md.cycle == fresh && md.index > Wn) inside = false;
        if (inside) kept.add(sig, coef);
      }
      if (!kept.is_zero()) grouped.emplace_back(weight(i, m), std::move(kept));
    }
  }
  AiryStructure A;
  A.window = Window{Wt, r + 1};
  A.operators = eliminate_linear_parts(grouped);
  if (static_cast<int>(A.operators.size()) != n * Wt + Wn)
    throw InconsistentStructure("appended subalgebra does not cover every derivative in the window");
  WeightGrading g{s, {}};
  for (int j = 1; j <= n; ++j) g.scale[j] = 1;
  g.scale[fresh] = rho;
  A.grading = g;
  A.validate();
  return A;
}

AppendBase append_base(const ClassificationVerdict& v, const std::vector<Scalar>& Q) {
  if (!v.admissible || !v.partition) throw std::invalid_argument("append needs an admissible verdict");
  AppendBase base{*v.partition, {}};
  for (int j = 0; j < v.n; ++j) base.cycles.push_back({v.rho, v.s, Q.at(j)});
  return base;
}

}  // namespace qairy
