#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qairy/json_io.hpp"

using namespace qairy;

namespace {

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string suite = "all";
  int rho = 0, n = 0, s = 0;
  std::string shifts = "roots";
  int degree = 6;
  int window = 0;
  int r_max = 6;
  bool all = false;
  std::string form = "airy";
  int m_min = 0, m_max = 2;
  std::string structure;
  std::string normalization = "composite";
  bool solve = false;
  std::string output;
  std::string format = "json";
};

struct Result {
  int code = kOk;
  json body;
  std::string text;
  bool lines = false;  // body is an array emitted as JSON lines
};

int verbosity() {
  const char* v = std::getenv("QAIRY_VERBOSE");
  return v ? std::atoi(v) : 0;
}

void note(const std::string& msg) {
  if (verbosity() > 0) std::cerr << "[qairy] " << msg << "\n";
}

void need_spec(const RunConfig& c, bool with_s = true) {
  if (c.rho < 1 || c.n < 1 || (with_s && c.s < 1))
    throw UsageError("--rho, --n" + std::string(with_s ? " and --s" : "") + " must be positive");
}

std::vector<Scalar> shifts_for(const RunConfig& c) {
  if (c.shifts == "roots") return TwistSpec::with_root_shifts(c.rho, c.n, std::max(c.s, 1)).Q;
  std::vector<Scalar> Q;
  try {
    Q = scalars_from_json(json::parse(c.shifts));
  } catch (const json::exception& e) {
    throw UsageError(std::string("--shifts: ") + e.what());
  } catch (const ParseError& e) {
    throw UsageError(std::string("--shifts: ") + e.what());
  }
  if (static_cast<int>(Q.size()) != c.n) throw UsageError("--shifts needs exactly n values");
  return Q;
}

TwistSpec spec_for(const RunConfig& c) {
  need_spec(c);
  TwistSpec spec{c.rho, c.n, c.s, shifts_for(c)};
  return spec;
}

json spec_json(const TwistSpec& spec) {
  json q = json::array();
  for (const auto& x : spec.Q) q.push_back(to_json(x));
  return {{"rho", spec.rho}, {"n", spec.n}, {"s", spec.s}, {"shifts", q}};
}

std::string parts_text(const std::optional<Partition>& p) {
  if (!p) return "-";
  std::string out = "(";
  for (std::size_t k = 0; k < p->parts().size(); ++k) out += (k ? "," : "") + std::to_string(p->parts()[k]);
  return out + ")";
}

std::string verdict_text(const ClassificationVerdict& v) {
  std::ostringstream os;
  os << "rho=" << v.rho << " n=" << v.n << " s=" << v.s << ": ";
  if (v.admissible) {
    os << "admissible, case " << to_string(v.case_label) << ", partition " << parts_text(v.partition);
    os << ", requires";
    for (const auto& r : v.requirements) os << " " << r;
  } else {
    os << "rejected, " << to_string(v.reason) << " (" << v.detail << ")";
  }
  return os.str();
}

Result cmd_classify(const RunConfig& c) {
  const auto v = classify(spec_for(c));
  return {v.admissible ? kOk : kRejected, to_json(v), verdict_text(v) + "\n"};
}

Result cmd_enumerate(const RunConfig& c) {
  if (c.r_max < 2) throw UsageError("--r-max must be at least 2");
  Result res;
  res.lines = true;
  res.body = json::array();
  for (const auto& v : enumerate_classifications(c.r_max, c.r_max + 1)) {
    if (!c.all && !v.admissible) continue;
    res.body.push_back(to_json(v));
    res.text += verdict_text(v) + "\n";
  }
  return res;
}

Result cmd_shift_matrix(const RunConfig& c) {
  need_spec(c, false);
  const auto Q = shifts_for(c);
  const Matrix M = shift_matrix(c.rho, Q);
  const bool inv = invert_matrix(M).has_value();
  const Scalar det = determinant(M);
  Result res{inv ? kOk : kRejected, {{"rho", c.rho}, {"n", c.n}, {"matrix", to_json(M)}, {"invertible", inv},
                                     {"det", to_json(det)}}, {}};
  std::ostringstream os;
  for (const auto& row : M) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "  " : "") << row[k].to_string();
    os << "\n";
  }
  os << "det = " << det.to_string() << (inv ? " (invertible)" : " (singular)") << "\n";
  res.text = os.str();
  return res;
}

Window window_for(const RunConfig& c, int default_w, int r) { return Window{c.window > 0 ? c.window : default_w, r}; }

Result cmd_construct(const RunConfig& c) {
  const TwistSpec spec = spec_for(c);
  const int r = spec.r();
  Result res;
  res.body = {{"spec", spec_json(spec)}, {"form", c.form}};
  std::ostringstream os;
  if (c.form == "airy") {
    const auto v = classify(spec);
    if (!v.admissible) {
      res.code = kRejected;
      res.body["verdict"] = to_json(v);
      res.text = verdict_text(v) + "\n";
      return res;
    }
    AiryStructure A = structure_from_spec(spec, v.bounds, c.degree);
    if (c.window > 0) {
      A.window = Window{c.window, r};
      A.operators = normalize_to_airy_form(spec, v.bounds, A.window);
    }
    res.body["structure"] = to_json(A);
    for (const auto& h : A.operators)
      os << "H[" << to_string(h.target) << "] = " << h.op.to_string() << "\n";
  } else if (c.form == "raw" || c.form == "shifted") {
    if (c.m_min > c.m_max) throw UsageError("--m-min exceeds --m-max");
    const Window w = window_for(c, std::max(std::abs(c.m_min), std::abs(c.m_max)) + r, r);
    json modes = json::array();
    for (int i = 1; i <= r; ++i)
      for (int m = c.m_min; m <= c.m_max; ++m) {
        const GradedOperator h =
            c.form == "raw" ? composite_mode(spec, i, m, w) : shifted_composite_mode(spec, i, m, w, r);
        modes.push_back({{"i", i}, {"m", m}, {"operator", to_json(h)}});
        os << "H^" << i << "_" << m << " = " << h.to_string() << "\n";
      }
    res.body["window"] = {{"W", w.max_index}, {"D", w.max_degree}};
    res.body["modes"] = modes;
  } else {
    throw UsageError("--form must be raw, shifted or airy");
  }
  res.text = os.str();
  return res;
}

json residual_json(const ResidualReport& rep) {
  json fails = json::array();
  for (const auto& [t, d] : rep.failures) fails.push_back({{"target", to_json(t)}, {"degree", d}});
  json out = {{"clean", rep.clean}, {"checked_through", rep.checked_through}, {"failures", fails}};
  out["lowest_nonzero_degree"] = rep.lowest_nonzero_degree ? json(*rep.lowest_nonzero_degree) : json(nullptr);
  return out;
}

// Solves and checks; InconsistentStructure propagates to the caller.
Result solve_and_check(const AiryStructure& A, int D_F) {
  note("solving " + std::to_string(A.operators.size()) + " operators to degree " + std::to_string(D_F));
  const FreeEnergy F = solve(A, D_F);
  note("checking residuals");
  const ResidualReport rep = residual_check(A, F, D_F);
  Result res;
  res.code = rep.clean ? kOk : kInternal;
  res.body = {{"cutoff", F.cutoff},
              {"window", {{"W", A.window.max_index}, {"D", A.window.max_degree}}},
              {"free_energy", to_json(F)},
              {"residual", residual_json(rep)}};
  res.text = to_string(F) + (rep.clean ? "residual check clean" : "residual check FAILED") + " through degree " +
             std::to_string(rep.checked_through) + "\n";
  return res;
}

Result cmd_solve(const RunConfig& c) {
  if (c.degree < 3) throw UsageError("--degree must be at least 3");
  if (!c.structure.empty()) {
    std::ifstream in(c.structure);
    if (!in) throw UsageError("cannot read " + c.structure);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(c.structure + ": " + e.what());
    }
    const json& s = j.contains("structure") ? j["structure"] : j;
    AiryStructure A;
    try {
      A = structure_from_json(s);
    } catch (const json::exception& e) {
      throw UsageError(c.structure + ": " + e.what());
    }
    return solve_and_check(A, c.degree);
  }
  const TwistSpec spec = spec_for(c);
  const auto v = classify(spec);
  if (!v.admissible) return {kRejected, {{"verdict", to_json(v)}}, verdict_text(v) + "\n"};
  AiryStructure A = structure_from_spec(spec, v.bounds, c.degree);
  if (c.window > 0 && c.window != A.window.max_index) {
    AiryStructure B = A;
    B.window = Window{c.window, spec.r()};
    B.operators = normalize_to_airy_form(spec, v.bounds, B.window);
    try {
      auto res = solve_and_check(B, c.degree);
      res.body["spec"] = spec_json(spec);
      return res;
    } catch (const WindowTooSmall& e) {
      note(std::string("window expanded: ") + e.what());
    }
  }
  auto res = solve_and_check(A, c.degree);
  res.body["spec"] = spec_json(spec);
  return res;
}

Result cmd_append(const RunConfig& c) {
  const TwistSpec spec = spec_for(c);
  const auto base = classify(spec);
  if (!base.admissible) return {kRejected, {{"verdict", to_json(base)}}, verdict_text(base) + "\n"};
  const AppendVerdict v = append_one_cycle(append_base(base, spec.Q));
  Result res;
  res.body = {{"spec", spec_json(spec)}, {"base_partition", base.partition->parts()}, {"append", to_json(v)}};
  std::ostringstream os;
  os << "base " << parts_text(base.partition) << ", required lambda(r+1) = " << v.required_last;
  for (const auto& [p, last] : v.candidates) os << ", candidate " << parts_text(p) << " gives " << last;
  if (!v.accepted) {
    res.code = kRejected;
    os << ": rejected, " << to_string(v.reason) << "\n";
    res.text = os.str();
    return res;
  }
  os << ": accepted, extended " << parts_text(v.extended) << "\n";
  AppendNormalization norm;
  if (c.normalization == "composite")
    norm = AppendNormalization::composite;
  else if (c.normalization == "theorem")
    norm = AppendNormalization::theorem;
  else
    throw UsageError("--normalization must be composite or theorem");
  if (c.degree < 3) throw UsageError("--degree must be at least 3");
  const AiryStructure A = appended_structure(spec, v, c.degree, norm);
  res.body["structure"] = {{"operators", A.operators.size()},
                           {"window", {{"W", A.window.max_index}, {"D", A.window.max_degree}}},
                           {"normalization", c.normalization}};
  os << A.operators.size() << " appended operators on window W=" << A.window.max_index << "\n";
  if (c.solve) {
    auto solved = solve_and_check(A, c.degree);
    res.body["solve"] = solved.body;
    res.code = solved.code;
    os << solved.text;
  }
  res.text = os.str();
  return res;
}

Result cmd_curve(const RunConfig& c) {
  need_spec(c);
  PlaneCurve pc;
  try {
    pc = curve_for(c.rho, c.n, c.s);
  } catch (const NotAdmissible& e) {
    return {kRejected, {{"rho", c.rho}, {"n", c.n}, {"s", c.s}, {"error", "NotAdmissible"}, {"detail", e.what()}},
            std::string("not admissible: ") + e.what() + "\n"};
  }
  const bool ok = verify_factorization(pc);
  json factors = json::array();
  std::ostringstream os;
  os << pc.polynomial.to_string() << "\n";
  if (pc.factors)
    for (const auto& f : *pc.factors) {
      factors.push_back(to_json(f));
      os << "  factor " << f.to_string() << "\n";
    }
  os << (ok ? "factorization verified" : "factorization FAILED") << "\n";
  return {ok ? kOk : kInternal,
          {{"rho", c.rho}, {"n", c.n}, {"s", c.s}, {"polynomial", to_json(pc.polynomial)}, {"factors", factors},
           {"verified", ok}},
          os.str()};
}

Result cmd_verify(const RunConfig& c) {
  std::vector<std::string> names;
  if (c.suite == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), c.suite) == known.end())
      throw UsageError("unknown suite " + c.suite);
    names = {c.suite};
  }
  Result res;
  json suites = json::array();
  bool ok = true;
  std::ostringstream os;
  for (const auto& name : names) {
    note("running suite " + name);
    const SuiteReport rep = run_suite(name);
    ok = ok && rep.ok();
    suites.push_back(to_json(rep));
    for (const auto& ch : rep.checks)
      os << (ch.pass ? "PASS " : "FAIL ") << name << ": " << ch.name << (ch.detail.empty() ? "" : " - " + ch.detail)
         << "\n";
    os << name << ": " << rep.passed() << " passed, " << rep.failed() << " failed\n";
  }
  res.code = ok ? kOk : kInternal;
  res.body = {{"suites", suites}, {"ok", ok}};
  res.text = os.str();
  return res;
}

Result dispatch(const RunConfig& c) {
  if (c.command == "classify") return cmd_classify(c);
  if (c.command == "enumerate") return cmd_enumerate(c);
  if (c.command == "shift-matrix") return cmd_shift_matrix(c);
  if (c.command == "construct") return cmd_construct(c);
  if (c.command == "solve") return cmd_solve(c);
  if (c.command == "append") return cmd_append(c);
  if (c.command == "curve") return cmd_curve(c);
  if (c.command == "verify") return cmd_verify(c);
  throw UsageError("unknown command " + c.command);
}

std::string render(const Result& r, const RunConfig& c) {
  if (c.format == "text") return std::string(kVersion) + "\n" + r.text;
  if (r.lines) {
    std::string out;
    for (auto e : r.body) {
      e["version"] = kVersion;
      out += e.dump() + "\n";
    }
    return out;
  }
  json body = r.body;
  body["version"] = kVersion;
  return body.dump(2) + "\n";
}

int emit(const std::string& bytes, const RunConfig& c) {
  if (c.output.empty()) {
    std::cout << bytes;
    return kOk;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << c.output << "\n";
    return kUsage;
  }
  out << bytes;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Airy structures for W(gl_r) at self-dual level"};
  RunConfig c;
  app.set_config("--config", "", "flat key=value file; flags on the command line win");
  app.add_option("command", c.command, "construct | classify | enumerate | shift-matrix | solve | append | curve | verify")
      ->required();
  app.add_option("suite", c.suite, "verify: suite name or all");
  app.add_option("--rho", c.rho, "cycle length");
  app.add_option("--n", c.n, "number of cycles");
  app.add_option("--s", c.s, "dilaton shift index");
  app.add_option("--shifts", c.shifts, "roots, or a JSON list of n scalars");
  app.add_option("--degree", c.degree, "free energy cutoff D_F");
  app.add_option("--window", c.window, "mode window override");
  app.add_option("--r-max", c.r_max, "enumerate: largest r");
  app.add_flag("--all", c.all, "enumerate: include rejected specs");
  app.add_option("--form", c.form, "construct: raw | shifted | airy");
  app.add_option("--m-min", c.m_min, "construct: smallest m");
  app.add_option("--m-max", c.m_max, "construct: largest m");
  app.add_option("--structure", c.structure, "solve: structure JSON file");
  app.add_option("--normalization", c.normalization, "append: composite | theorem");
  app.add_flag("--solve", c.solve, "append: also solve and check the appended structure");
  app.add_option("--output", c.output, "write to this path instead of stdout");
  app.add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Result res;
  try {
    res = dispatch(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InconsistentStructure& e) {
    res = {kInternal, {{"error", "InconsistentStructure"}, {"detail", e.what()}},
           std::string("inconsistent structure: ") + e.what() + "\n"};
  } catch (const WindowTooSmall& e) {
    res = {kInternal, {{"error", "WindowTooSmall"}, {"detail", e.what()}},
           std::string("window too small: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    res = {kInternal, {{"error", "internal"}, {"detail", e.what()}}, std::string("internal error: ") + e.what() + "\n"};
  }
  const int io = emit(render(res, c), c);
  return io != kOk ? io : res.code;
}
