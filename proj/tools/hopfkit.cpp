#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hopfkit/hopfkit.hpp"

using namespace hopfkit;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string algebra;
  std::string field = "q";
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t samples = 50;
};

/// Everything a command produces; printed once at the end.
struct Run {
  std::vector<std::string> argv;
  FieldSpec field;
  std::vector<VerificationReport> reports;
  Json data = Json::object();
  std::vector<std::string> notes;  // extra lines for the text format
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void add_common(CLI::App* app, Common& c, bool with_algebra = true) {
  if (with_algebra) app->add_option("--algebra", c.algebra, "en:<n> | group:<g> | double:group:<g> | file:<path>");
  app->add_option("--field", c.field, "q or gf:<p>")->capture_default_str();
  app->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();
  app->add_option("--samples", c.samples, "number of samples")->capture_default_str();
}

// ---------------------------------------------------------------------------
// Algebra specs

struct Loaded {
  FiniteDimHopf H;
  TensorElement R;  // canonical R-matrix where one exists, else 1⊗1
  std::string kind;
  std::optional<int> en_n;
};

std::string strip_prefix(const std::string& s, const std::string& p) {
  return s.rfind(p, 0) == 0 ? s.substr(p.size()) : std::string();
}

Loaded load_algebra(const std::string& spec, FieldSpec F) {
  if (spec.empty()) throw UsageError("--algebra is required");
  if (auto rest = strip_prefix(spec, "en:"); !rest.empty()) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("bad E(n) spec '" + spec + "'");
    }
    FiniteDimHopf E = build_en(n, F);
    TensorElement R = en_r0(E);
    return {std::move(E), std::move(R), "en", n};
  }
  if (auto rest = strip_prefix(spec, "double:group:"); !rest.empty()) {
    auto D = drinfeld_double_group(named_group(rest), F);
    return {std::move(D.H), std::move(D.R), "double", std::nullopt};
  }
  if (auto rest = strip_prefix(spec, "group:"); !rest.empty()) {
    FiniteDimHopf H = group_algebra(named_group(rest), F);
    TensorElement R = TensorElement::unit(H.algebra(), 2);
    return {std::move(H), std::move(R), "group", std::nullopt};
  }
  if (auto rest = strip_prefix(spec, "file:"); !rest.empty()) {
    FiniteDimHopf H = parse_hopf_file(rest);
    TensorElement R = TensorElement::unit(H.algebra(), 2);
    return {std::move(H), std::move(R), "file", std::nullopt};
  }
  throw UsageError("unknown algebra spec '" + spec + "'");
}

FieldSpec field_from(const Common& c) { return FieldSpec::parse(c.field); }

/// Splits on commas that are not inside parentheses.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  Common c;
  std::vector<std::string> suites;
  std::string matrix;
};

void cmd_verify(const VerifyArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;

  // A file that fails the Hopf gate is reported, not rejected, by this suite.
  if (a.suites.size() == 1 && a.suites[0] == "hopf-axioms") {
    if (auto path = strip_prefix(a.c.algebra, "file:"); !path.empty()) {
      HopfData d = parse_hopf_data(detail::read_file(path));
      run.field = d.field;
      run.reports.push_back(verify_hopf_axioms(d));
      return;
    }
  }

  Loaded L = load_algebra(a.c.algebra, F);
  TensorElement R = L.R;
  if (!a.matrix.empty()) {
    if (!L.en_n) throw UsageError("--matrix needs an en:<n> algebra");
    R = en_rA(L.H, DenseMatrix::parse(F, a.matrix));
  }
  for (const auto& s : a.suites) {
    if (s == "hopf-axioms") run.reports.push_back(verify_hopf_axioms(L.H));
    else if (s == "commutative") run.reports.push_back(check_commutative(L.H));
    else if (s == "cocommutative") run.reports.push_back(check_cocommutative(L.H));
    else if (s == "quasitriangular") run.reports.push_back(is_quasitriangular(L.H, R));
    else if (s == "triangular") run.reports.push_back(is_triangular(L.H, R));
    else if (s == "pseudotriangular") run.reports.push_back(is_pseudotriangular(L.H, R));
    else if (s == "almost-triangular") run.reports.push_back(is_almost_triangular(L.H, R));
    else throw UsageError("unknown suite '" + s + "'");
  }
  run.data["dim"] = L.H.dim();
  run.data["r_matrix"] = R.to_string();
}

// ---------------------------------------------------------------------------
// search-qt

void cmd_search_qt(const Common& c, Run& run) {
  const FieldSpec F = field_from(c);
  run.field = F;
  Loaded L = load_algebra(c.algebra, F);
  const auto found = search_qt(L.H);
  Json list = Json::array();
  std::vector<VerificationReport> checks;
  for (std::size_t k = 0; k < found.size(); ++k) {
    const auto& R = found[k];
    const bool tri = is_triangular(L.H, R).passed, pseudo = is_pseudotriangular(L.H, R).passed;
    list.push_back({{"r", R.to_string()}, {"triangular", tri}, {"pseudotriangular", pseudo}});
    run.notes.push_back("R" + std::to_string(k + 1) + " = " + R.to_string() + "  triangular: " + (tri ? "yes" : "no") +
                        "  pseudotriangular: " + (pseudo ? "yes" : "no"));
    auto r = is_quasitriangular(L.H, R);
    r.check_name = "R" + std::to_string(k + 1) + " quasitriangular";
    checks.push_back(std::move(r));
  }
  run.reports.push_back(VerificationReport::combine("search-qt", std::move(checks)));
  run.data["structures"] = std::move(list);
  run.data["count"] = found.size();
  run.notes.insert(run.notes.begin(), std::to_string(found.size()) + " quasitriangular structures");
}

// ---------------------------------------------------------------------------
// yd

struct YdArgs {
  Common c;
  std::string triple;
  std::string family = "yd-braiding";
  std::string axioms = "braid1,braid2";
  std::string atoms = "H1,H2,trivial";
  std::string which = "cocommutativity";
};

VerificationReport replay_report(const std::string& name, const ProofReplay& p) {
  return VerificationReport::combine(name, {p.elements, p.contracted, p.conclusion});
}

void cmd_yd_pseudosym(const YdArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  Loaded L = load_algebra(a.c.algebra, F);
  const auto names = split_top(a.triple);
  if (names.size() != 3) throw UsageError("--triple needs three module specs");
  const auto x = parse_module_spec(L.H, names[0]), y = parse_module_spec(L.H, names[1]),
             z = parse_module_spec(L.H, names[2]);
  auto r = check_pseudosymmetry_triple(x, y, z);
  run.data["triple"] = {x.name, y.name, z.name};
  run.data["proof_witness"] = nullptr;
  const bool failed = !r.passed;
  run.reports.push_back(std::move(r));
  if (!failed || x.name != "H1" || y.name != "H2") return;
  // The two element choices of the standard argument, when they apply.
  std::optional<ProofReplay> p;
  if (z.name == "H1") p = replay_cocommutativity(L.H);
  if (z.name == "H2") p = replay_commutativity(L.H);
  if (!p) return;
  const std::string name = z.name == "H1" ? "replay-cocommutativity" : "replay-commutativity";
  if (p->elements.witness) {
    std::string at = p->elements.witness->location;
    if (at.rfind("at ", 0) == 0) at = at.substr(3);
    run.data["proof_witness"] = at;
    run.notes.push_back("proof witness: " + at);
  }
  run.reports.push_back(replay_report(name, *p));
}

std::vector<Axiom> parse_axioms(const std::string& list) {
  std::vector<Axiom> out;
  for (const auto& s : split_top(list)) {
    if (s == "braiding") for (auto x : braiding_axioms()) out.push_back(x);
    else if (s == "twine") for (auto x : twine_axioms()) out.push_back(x);
    else if (s == "strong-twine") for (auto x : strong_twine_axioms()) out.push_back(x);
    else if (s == "laycle") for (auto x : laycle_axioms()) out.push_back(x);
    else if (auto ax = axiom_from_string(s)) out.push_back(*ax);
    else throw UsageError("unknown axiom '" + s + "'");
  }
  return out;
}

void cmd_yd_suite(const YdArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  Loaded L = load_algebra(a.c.algebra, F);
  std::vector<NamedObject<YDModule>> atoms;
  for (const auto& s : split_top(a.atoms)) atoms.push_back(parse_module_spec(L.H, s));
  OperatorFamily<YDModule> fam;
  if (a.family == "yd-braiding") fam = yd_braiding_family();
  else if (a.family == "double-braiding") fam = double_braiding_family();
  else throw UsageError("unknown family '" + a.family + "'");
  run.reports.push_back(pointwise_axiom_suite(atoms, {"trivial", trivial_yd(L.H)}, fam, parse_axioms(a.axioms)));
}

void cmd_yd_replay(const YdArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  Loaded L = load_algebra(a.c.algebra, F);
  if (a.which == "cocommutativity") run.reports.push_back(replay_report("replay-cocommutativity", replay_cocommutativity(L.H)));
  else if (a.which == "commutativity") run.reports.push_back(replay_report("replay-commutativity", replay_commutativity(L.H)));
  else throw UsageError("--which must be cocommutativity or commutativity");
}

// ---------------------------------------------------------------------------
// twist

struct TwistArgs {
  Common c;
  bool pure = false;
  std::string matrix;
  std::string param;
  std::string module = "adjoint";
  std::string r_op = "graded-flip", p_op = "plain-flip";
  std::string algebra_file, operator_file, companion1, companion2;
  bool nonunital = false;
};

VerificationReport associativity_report(const TwistCandidate& tc) {
  AlgebraPtr B = twist_algebra(tc);
  auto r = check_associativity(*B);
  r.check_name = "twisted-associativity";
  return r;
}

void cmd_twist_fedosov(const TwistArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  const FedosovReference ref = fedosov_reference(F);
  auto p = verify_pseudotwistor(ref.twist);
  const bool ok = p.passed;
  run.reports.push_back(std::move(p));
  if (!ok) return;
  run.reports.push_back(associativity_report(ref.twist));
  const Algebra& A = *ref.dg.A;
  const std::size_t e1 = 0b000001, e2 = 0b000010;
  const SparseVec prod = fedosov_product(ref.dg, e1, e2);
  const SparseVec correction = prod - A.product(e1, e2);
  run.data["e1∘e2"] = A.render(prod);
  run.data["correction"] = A.render(correction);
  run.notes.push_back("e1∘e2 = " + A.render(prod));
  run.reports.push_back(correction.is_zero()
                            ? VerificationReport::fail("nonzero correction", {"(e1,e2)", {e1, e2}, "0", "nonzero"})
                            : VerificationReport::pass("nonzero correction"));
  const auto rc = pseudotwistor_to_rmatrix(ref.twist);
  run.reports.push_back(verify_rmatrix_categorical(rc));
  const auto back = rmatrix_to_pseudotwistor(rc);
  run.reports.push_back(back.T == ref.twist.T && back.companions->first == ref.twist.companions->first &&
                                back.companions->second == ref.twist.companions->second
                            ? VerificationReport::pass("round-trip")
                            : VerificationReport::fail("round-trip", {"companions", {}, "converted", "original"}));
  if (a.pure) run.reports.push_back(verify_pure(ref.twist));
}

LinearOperator named_operator(const std::string& name, const Algebra& A) {
  if (name == "graded-flip") return graded_flip(A);
  if (name == "plain-flip") return plain_flip(A);
  if (name == "identity") return identity_op(A, 2);
  throw UsageError("unknown operator '" + name + "' (graded-flip, plain-flip, identity)");
}

void cmd_twist_twm(const TwistArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  const AlgebraPtr A = dual_numbers(F, true);
  const LinearOperator R = named_operator(a.r_op, *A), P = named_operator(a.p_op, *A);
  auto hyp = twm_hypotheses(A, R, P);
  const bool ok = hyp.passed;
  run.reports.push_back(std::move(hyp));
  if (!ok) return;
  const TwistCandidate tc = twm_pseudotwistor(A, R, P);
  run.reports.push_back(verify_pseudotwistor(tc));
  run.reports.push_back(verify_pure(tc));
  auto strong_hyp = twm_strong_hypotheses(A, R, P);
  if (strong_hyp.passed) run.reports.push_back(verify_strong(tc));
  run.data["strong_hypotheses"] = strong_hyp.passed;
  run.reports.push_back(associativity_report(tc));
}

void cmd_twist_laycle(const TwistArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  Loaded L = load_algebra(a.c.algebra, F);
  const ModuleAlgebra MA = a.module == "parity" ? parity_module_algebra(L.H)
                           : a.module == "adjoint" ? adjoint_module_algebra(L.H)
                                                   : throw UsageError("--module must be adjoint or parity");
  TensorElement Fx = TensorElement::unit(L.H.algebra(), 2);
  if (!a.matrix.empty()) {
    if (!L.en_n) throw UsageError("--matrix needs an en:<n> algebra");
    Fx = en_tA(L.H, DenseMatrix::parse(F, a.matrix));
  } else if (!a.param.empty()) {
    if (L.H.dim() != 2) throw UsageError("--param needs k[C2]");
    Fx = c2_ta(L.H, Scalar::parse(F, a.param));
  }
  auto lazy = is_lazy_twist(L.H, Fx);
  const bool ok = lazy.passed;
  run.reports.push_back(std::move(lazy));
  if (!ok) return;
  const TwistCandidate tc = laycle_induced_pseudotwistor(L.H, Fx, MA);
  run.reports.push_back(verify_pseudotwistor(tc));
  run.reports.push_back(verify_strong(tc));
  const auto pure = verify_pure(tc), neat = is_neat(L.H, Fx);
  run.data["pure"] = pure.passed;
  run.data["neat"] = neat.passed;
  run.notes.push_back(std::string("pure: ") + (pure.passed ? "yes" : "no") + "  neat: " + (neat.passed ? "yes" : "no"));
  run.reports.push_back(pure.passed == neat.passed
                            ? VerificationReport::pass("pure iff neat")
                            : VerificationReport::fail("pure iff neat", {"F", {}, pure.passed ? "pure" : "not pure",
                                                                        neat.passed ? "neat" : "not neat"}));
  run.reports.push_back(associativity_report(tc));
}

void cmd_twist_file(const TwistArgs& a, Run& run) {
  if (a.algebra_file.empty() || a.operator_file.empty())
    throw UsageError("twist file needs --algebra-file and --operator");
  const AlgebraPtr A = parse_algebra_file(a.algebra_file);
  run.field = A->field();
  TwistCandidate tc{A, parse_operator_file(a.operator_file), std::nullopt, !a.nonunital};
  if (a.companion1.empty() != a.companion2.empty()) throw UsageError("give both companions or neither");
  if (!a.companion1.empty()) {
    tc.companions = std::make_pair(parse_operator_file(a.companion1), parse_operator_file(a.companion2));
  } else {
    // Without companions, T is treated as an R-matrix and converted.
    auto b = verify_rmatrix_borcherds(A, tc.T);
    const bool ok = b.passed;
    run.reports.push_back(std::move(b));
    if (!ok) return;
    tc = rmatrix_to_pseudotwistor({A, tc.T, leg13(*A, tc.T), leg13(*A, tc.T), tc.unital});
  }
  auto p = verify_pseudotwistor(tc);
  const bool ok = p.passed;
  run.reports.push_back(std::move(p));
  if (ok) run.reports.push_back(associativity_report(tc));
}

// ---------------------------------------------------------------------------
// cohomology, en

Json scalars_json(const std::vector<Scalar>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

std::string scalars_text(const std::vector<Scalar>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x.to_string();
  return "{" + s + "}";
}

VerificationReport bool_report(const std::string& name, bool ok) {
  return ok ? VerificationReport::pass(name) : VerificationReport::fail(name, {name, {}, "false", "true"});
}

void cmd_cohomology_c2(const Common& c, Run& run) {
  const FieldSpec F = field_from(c);
  run.field = F;
  const C2Cohomology h = lazy_cohomology_c2(F);
  run.reports.push_back(bool_report("lazy twists = {T_a : a ≠ 0}", h.twists_match_formula));
  run.reports.push_back(bool_report("coboundaries = {T_a : a square}", h.coboundaries_are_squares));
  run.reports.push_back(bool_report("Δ(θ)(θ⁻¹⊗θ⁻¹) formula", h.theta_formula_holds));
  run.reports.push_back(bool_report("T_aT_b = T_ab", h.twist_law_holds));
  run.reports.push_back(bool_report("T_0 twist-like, not invertible", h.t0_twist_like));
  run.data["lazy_twists"] = scalars_json(h.lazy_twist_params);
  run.data["coboundaries"] = scalars_json(h.coboundary_params);
  run.data["quasi_coboundaries"] = scalars_json(h.quasi_coboundary_params);
  run.data["quasitriangular"] = scalars_json(h.quasitriangular_params);
  run.data["group_order"] = h.group_order;
  run.data["quotient_order"] = h.quotient_order;
  run.data["quotient_type"] = h.quotient_type;
  run.notes.push_back("lazy twists T_a, a in " + scalars_text(h.lazy_twist_params));
  run.notes.push_back("coboundaries T_a, a in " + scalars_text(h.coboundary_params));
  run.notes.push_back("quotient order " + std::to_string(h.quotient_order) + ", type " + h.quotient_type);
}

struct EnArgs {
  Common c;
  int n = 1;
  std::string matrix, b, cmat;
  std::vector<std::string> checks{"all"};
};

void cmd_en_rmatrix(const EnArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  const FiniteDimHopf E = build_en(a.n, F);
  const DenseMatrix M = a.matrix.empty() ? DenseMatrix(F, a.n, a.n) : DenseMatrix::parse(F, a.matrix);
  const TensorElement R = en_rA(E, M);
  std::vector<std::string> checks = a.checks;
  if (checks.size() == 1 && checks[0] == "all") checks = {"qt", "pseudo", "triangular", "almost"};
  for (const auto& ch : checks) {
    if (ch == "qt") run.reports.push_back(is_quasitriangular(E, R));
    else if (ch == "pseudo") run.reports.push_back(is_pseudotriangular(E, R));
    else if (ch == "triangular") run.reports.push_back(is_triangular(E, R));
    else if (ch == "almost") run.reports.push_back(is_almost_triangular(E, R));
    else throw UsageError("unknown check '" + ch + "' (qt, pseudo, triangular, almost, all)");
  }
  run.data["symmetric"] = is_symmetric(M);
  run.data["r_matrix"] = R.to_string();
}

void cmd_en_gn(const EnArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  const FiniteDimHopf E = build_en(a.n, F);
  run.reports.push_back(verify_gn_semidirect(E, a.c.samples, a.c.seed));
}

void cmd_en_modifgen(const EnArgs& a, Run& run) {
  const FieldSpec F = field_from(a.c);
  run.field = F;
  const FiniteDimHopf E = build_en(a.n, F);
  if (a.matrix.empty() || a.b.empty() || a.cmat.empty()) throw UsageError("modifgen needs --matrix, --b and --c");
  run.reports.push_back(
      check_modifgen(E, DenseMatrix::parse(F, a.matrix), DenseMatrix::parse(F, a.b), DenseMatrix::parse(F, a.cmat)));
}

// ---------------------------------------------------------------------------
// Output

bool all_passed(const Run& run) {
  for (const auto& r : run.reports)
    if (!r.passed) return false;
  return true;
}

void emit(const Run& run, const std::string& format) {
  const bool ok = all_passed(run);
  if (format == "json") {
    Json out;
    out["schema"] = 1;
    out["tool"] = "hopfkit";
    out["version"] = kVersion;
    out["command"] = run.argv;
    out["field"] = run.field.to_string();
    Json reps = Json::array();
    for (const auto& r : run.reports) reps.push_back(report_to_json(r));
    out["reports"] = std::move(reps);
    out["data"] = run.data;
    out["passed"] = ok;
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::string cmd;
  for (const auto& s : run.argv) cmd += (cmd.empty() ? "" : " ") + s;
  std::cout << "hopfkit " << cmd << "\nfield: " << run.field.to_string() << "\n";
  for (const auto& r : run.reports) render_report(std::cout, r);
  for (const auto& n : run.notes) std::cout << n << "\n";
  std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of finite-dimensional Hopf algebra identities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Run run;
  for (int i = 1; i < argc; ++i) run.argv.emplace_back(argv[i]);
  std::function<void()> action;
  std::string format = "text";
  auto bind = [&](CLI::App* sub, Common& c, std::function<void()> f) {
    sub->callback([&, f = std::move(f)] {
      format = c.format;
      action = f;
    });
  };

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite on a Hopf algebra");
  add_common(verify, va.c);
  verify->add_option("--suite", va.suites, "hopf-axioms, commutative, cocommutative, quasitriangular, triangular, "
                                           "pseudotriangular, almost-triangular")
      ->required()
      ->delimiter(',');
  verify->add_option("--matrix", va.matrix, "use R_A for this matrix (E(n) only)");
  bind(verify, va.c, [&] { cmd_verify(va, run); });

  Common sc;
  auto* search = app.add_subcommand("search-qt", "enumerate all quasitriangular structures");
  add_common(search, sc);
  bind(search, sc, [&] { cmd_search_qt(sc, run); });

  YdArgs ya;
  auto* yd = app.add_subcommand("yd", "Yetter-Drinfeld module checks");
  yd->require_subcommand(1);
  auto* pseudosym = yd->add_subcommand("pseudosym", "pseudosymmetry of the canonical braiding on one triple");
  add_common(pseudosym, ya.c);
  pseudosym->add_option("--triple", ya.triple, "three module specs, e.g. H1,H2,tensor(H1,trivial)")->required();
  bind(pseudosym, ya.c, [&] { cmd_yd_pseudosym(ya, run); });
  auto* ysuite = yd->add_subcommand("suite", "pointwise axiom suite over all tuples of atoms");
  add_common(ysuite, ya.c);
  ysuite->add_option("--family", ya.family, "yd-braiding or double-braiding")->capture_default_str();
  ysuite->add_option("--axioms", ya.axioms, "comma-separated axioms or groups")->capture_default_str();
  ysuite->add_option("--atoms", ya.atoms, "comma-separated module specs")->capture_default_str();
  bind(ysuite, ya.c, [&] { cmd_yd_suite(ya, run); });
  auto* replay = yd->add_subcommand("replay", "replay the element computations behind pseudosymmetry");
  add_common(replay, ya.c);
  replay->add_option("--which", ya.which, "cocommutativity or commutativity")->capture_default_str();
  bind(replay, ya.c, [&] { cmd_yd_replay(ya, run); });

  TwistArgs ta;
  auto* twist = app.add_subcommand("twist", "twisted algebra products");
  twist->require_subcommand(1);
  auto* fed = twist->add_subcommand("fedosov", "the Fedosov product on the reference DG algebra");
  add_common(fed, ta.c, false);
  fed->add_flag("--pure", ta.pure, "also check purity (exhaustive over A⊗A⊗A⊗A)");
  bind(fed, ta.c, [&] { cmd_twist_fedosov(ta, run); });
  auto* twm = twist->add_subcommand("twm", "pseudotwistor from two twisting maps on k[x]/(x²), x odd");
  add_common(twm, ta.c, false);
  twm->add_option("--r", ta.r_op, "graded-flip, plain-flip or identity")->capture_default_str();
  twm->add_option("--p", ta.p_op, "graded-flip, plain-flip or identity")->capture_default_str();
  bind(twm, ta.c, [&] { cmd_twist_twm(ta, run); });
  auto* lay = twist->add_subcommand("laycle", "pseudotwistor induced by a lazy twist on a module algebra");
  add_common(lay, ta.c);
  lay->add_option("--matrix", ta.matrix, "F = T_A on E(n)");
  lay->add_option("--param", ta.param, "F = T_a on k[C2]");
  lay->add_option("--module", ta.module, "adjoint or parity (k[C2] on k[x]/(x²))")->capture_default_str();
  bind(lay, ta.c, [&] { cmd_twist_laycle(ta, run); });
  auto* tfile = twist->add_subcommand("file", "pseudotwistor or R-matrix read from files");
  add_common(tfile, ta.c, false);
  tfile->add_option("--algebra-file", ta.algebra_file, "algebra-file (JSON)");
  tfile->add_option("--operator", ta.operator_file, "operator-file for T (JSON)");
  tfile->add_option("--companion1", ta.companion1, "operator-file for the first companion");
  tfile->add_option("--companion2", ta.companion2, "operator-file for the second companion");
  tfile->add_flag("--nonunital", ta.nonunital, "skip the unit conditions");
  bind(tfile, ta.c, [&] { cmd_twist_file(ta, run); });

  Common cc;
  auto* coh = app.add_subcommand("cohomology", "lazy cohomology");
  coh->require_subcommand(1);
  auto* c2 = coh->add_subcommand("c2", "lazy 2-cohomology of k[C2] over GF(p)");
  add_common(c2, cc, false);
  bind(c2, cc, [&] { cmd_cohomology_c2(cc, run); });

  EnArgs ea;
  auto* en = app.add_subcommand("en", "the E(n) family");
  en->require_subcommand(1);
  auto* rm = en->add_subcommand("rmatrix", "properties of R_A");
  add_common(rm, ea.c, false);
  rm->add_option("--n", ea.n, "number of skew-primitive generators")->capture_default_str();
  rm->add_option("--matrix", ea.matrix, "n×n matrix, rows separated by ';'");
  rm->add_option("--check", ea.checks, "qt, pseudo, triangular, almost or all")->delimiter(',')->capture_default_str();
  bind(rm, ea.c, [&] { cmd_en_rmatrix(ea, run); });
  auto* gn = en->add_subcommand("gn", "the group law of G_n on sampled pairs");
  add_common(gn, ea.c, false);
  gn->add_option("--n", ea.n)->capture_default_str();
  bind(gn, ea.c, [&] { cmd_en_gn(ea, run); });
  auto* mg = en->add_subcommand("modifgen", "(R_A)12(R_B)13(R_C)23 = (R_C)23(R_B)13(R_A)12");
  add_common(mg, ea.c, false);
  mg->add_option("--n", ea.n)->capture_default_str();
  mg->add_option("--matrix", ea.matrix, "A")->required();
  mg->add_option("--b", ea.b, "B")->required();
  mg->add_option("--c", ea.cmat, "C")->required();
  bind(mg, ea.c, [&] { cmd_en_modifgen(ea, run); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    action();
  } catch (const HopfAxiomError& e) {
    std::cerr << "error: " << e.what();
    if (const auto& w = e.report().witness) std::cerr << " (" << w->lhs << " != " << w->rhs << ")";
    std::cerr << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  emit(run, format);
  return all_passed(run) ? 0 : 1;
}
