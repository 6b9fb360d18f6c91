#include "qairy/json_io.hpp"

#include <algorithm>
#include <tuple>

namespace qairy {

namespace {

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("not a rational: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

json modes_json(const std::vector<Mode>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

std::vector<Mode> modes_from_json(const json& j) {
  std::vector<Mode> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError("a mode is a pair [cycle, index]");
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

json window_json(const Window& w) { return {{"W", w.max_index}, {"D", w.max_degree}}; }

}  // namespace

json to_json(const Scalar& x) {
  struct Row {
    CMonomial mono;
    int pow;
    Rational q;
  };
  std::vector<Row> rows;
  for (const auto& t : x.terms())
    for (std::size_t k = 0; k < t.coeffs.size(); ++k)
      if (t.coeffs[k] != 0) rows.push_back({t.monomial, static_cast<int>(k), t.coeffs[k]});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.mono, a.pow) < std::tie(b.mono, b.pow); });
  json terms = json::array();
  for (const auto& r : rows)
    terms.push_back({{"omega_pow", r.pow},
                     {"num", r.q.get_num().get_str()},
                     {"den", r.q.get_den().get_str()},
                     {"c_monomial", r.mono}});
  return {{"N", x.is_omega_free() ? 1 : x.order()}, {"terms", terms}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (!j.is_object() || !j.contains("N") || !j.contains("terms")) throw ParseError("malformed scalar");
  const int N = j.at("N").get<int>();
  if (N < 1) throw ParseError("scalar field order must be positive");
  const int d = cyclotomic_degree(N);
  std::map<CMonomial, std::vector<Rational>> grouped;
  int free = -1;
  for (const auto& t : j.at("terms")) {
    const auto mono = t.at("c_monomial").get<CMonomial>();
    if (free >= 0 && static_cast<int>(mono.size()) != free) throw ParseError("inconsistent c_monomial lengths");
    free = static_cast<int>(mono.size());
    const int k = t.at("omega_pow").get<int>();
    if (k < 0 || k >= d) throw ParseError("omega_pow outside the power basis");
    auto& c = grouped.try_emplace(mono, d, Rational(0)).first->second;
    c[k] += parse_rational(t.at("num").get<std::string>()) / parse_rational(t.at("den").get<std::string>());
  }
  std::vector<Scalar::Term> terms;
  for (auto& [m, c] : grouped) terms.push_back({m, std::move(c)});
  return Scalar::from_terms(N, free > 0 ? free + 1 : 0, std::move(terms));
}

std::vector<Scalar> scalars_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON list of scalars");
  std::vector<Scalar> out;
  for (const auto& e : j) out.push_back(scalar_from_json(e));
  return out;
}

json to_json(const Mode& m) { return json::array({m.cycle, m.index}); }

json to_json(const GradedOperator& a) {
  json terms = json::array();
  for (const auto& [sig, c] : a.terms())
    terms.push_back({{"coeff", to_json(c)},
                     {"hbar_half", sig.hbar_half},
                     {"creators", modes_json(sig.creators)},
                     {"annihilators", modes_json(sig.annihilators)}});
  return {{"window", window_json(a.window())}, {"terms", terms}};
}

GradedOperator operator_from_json(const json& j) {
  const auto& w = j.at("window");
  GradedOperator a(Window{w.at("W").get<int>(), w.at("D").get<int>()});
  for (const auto& t : j.at("terms")) {
    Signature sig{t.at("hbar_half").get<int>(), modes_from_json(t.at("creators")),
                  modes_from_json(t.at("annihilators"))};
    for (const auto& m : sig.creators)
      if (m.index >= 0) throw ParseError("creators need negative indices");
    for (const auto& m : sig.annihilators)
      if (m.index <= 0) throw ParseError("annihilators need positive indices");
    if (sig.hbar_half < 2 * static_cast<int>(sig.annihilators.size()))
      throw ParseError("hbar_half must cover the annihilators");
    a.add(sig, scalar_from_json(t.at("coeff")));
  }
  return a;
}

json to_json(const AiryStructure& A) {
  json ops = json::array();
  for (const auto& h : A.operators) ops.push_back({{"target", to_json(h.target)}, {"operator", to_json(h.op)}});
  json out = {{"window", window_json(A.window)}, {"operators", ops}};
  if (A.grading) {
    json scale = json::array();
    for (auto [j, c] : A.grading->scale) scale.push_back({j, c});
    out["grading"] = {{"s", A.grading->s}, {"scale", scale}};
  }
  return out;
}

AiryStructure structure_from_json(const json& j) {
  AiryStructure A;
  const auto& w = j.at("window");
  A.window = Window{w.at("W").get<int>(), w.at("D").get<int>()};
  for (const auto& e : j.at("operators")) {
    const auto t = e.at("target");
    A.operators.push_back({Mode{t.at(0).get<int>(), t.at(1).get<int>()}, operator_from_json(e.at("operator"))});
  }
  if (j.contains("grading")) {
    WeightGrading g;
    g.s = j["grading"].at("s").get<int>();
    for (const auto& e : j["grading"].at("scale")) g.scale[e.at(0).get<int>()] = e.at(1).get<int>();
    A.grading = g;
  }
  return A;
}

json to_json(const FreeEnergy& F) {
  std::vector<std::pair<int, const PolyKey*>> keys;
  for (const auto& [k, v] : F.coeffs)
    if (!v.is_zero()) keys.emplace_back(grading_degree(k), &k);
  std::sort(keys.begin(), keys.end(),
            [](const auto& a, const auto& b) { return std::tie(a.first, *a.second) < std::tie(b.first, *b.second); });
  json out = json::array();
  for (const auto& [d, k] : keys)
    out.push_back({{"hbar_half", k->hbar_half}, {"vars", modes_json(k->vars)}, {"value", to_json(F.coeffs.at(*k))}});
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    out.push_back(r);
  }
  return out;
}

namespace {

json bounds_json(const std::map<int, int>& b) {
  json out = json::array();
  for (auto [i, m] : b) out.push_back({{"i", i}, {"m_min", m}});
  return out;
}

}  // namespace

json to_json(const ClassificationVerdict& v) {
  json out = {{"rho", v.rho},
              {"n", v.n},
              {"s", v.s},
              {"admissible", v.admissible},
              {"case", to_string(v.case_label)},
              {"requirements", v.requirements},
              {"reason", to_string(v.reason)},
              {"detail", v.detail},
              {"bounds", bounds_json(v.bounds)}};
  out["partition"] = v.partition ? json(v.partition->parts()) : json(nullptr);
  out["shift_determinant"] = v.shift_determinant ? to_json(*v.shift_determinant) : json(nullptr);
  return out;
}

json to_json(const AppendVerdict& v) {
  json cands = json::array();
  for (const auto& [p, last] : v.candidates) cands.push_back({{"partition", p.parts()}, {"lambda_last", last}});
  json out = {{"accepted", v.accepted},
              {"reason", to_string(v.reason)},
              {"required_last", v.required_last},
              {"candidates", cands},
              {"bounds", bounds_json(v.bounds)}};
  out["extended"] = v.extended ? json(v.extended->parts()) : json(nullptr);
  return out;
}

json to_json(const Bivariate& p) {
  json out = json::array();
  for (const auto& [ab, c] : p.terms()) out.push_back({{"x", ab.first}, {"y", ab.second}, {"coeff", to_json(c)}});
  return out;
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"passed", r.passed()}, {"failed", r.failed()}, {"ok", r.ok()}, {"checks", checks}};
}

}  // namespace qairy
