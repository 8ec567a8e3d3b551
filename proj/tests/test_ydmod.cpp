#include <catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "hopfkit/constructions.hpp"
#include "hopfkit/en_family.hpp"
#include "hopfkit/qt.hpp"
#include "hopfkit/ydmod.hpp"

using namespace hopfkit;
using Catch::Matchers::ContainsSubstring;

namespace {

const FieldSpec Q = FieldSpec::rationals();
using Obj = NamedObject<YDModule>;

FiniteDimHopf c2() { return group_algebra(cyclic_group(2), Q); }
FiniteDimHopf c2xc2() { return group_algebra(named_group("product:cyclic:2,cyclic:2"), Q); }

std::vector<Obj> atoms(const FiniteDimHopf& H, bool with_tensors) {
  std::vector<Obj> out;
  for (const char* s : {"H1", "H2", "trivial"}) out.push_back(parse_module_spec(H, s));
  if (with_tensors)
    for (const char* s : {"tensor(H1,H2)", "tensor(H2,H1)", "tensor(H1,H1)", "tensor(H2,H2)"})
      out.push_back(parse_module_spec(H, s));
  return out;
}

Obj unit_of(const FiniteDimHopf& H) { return {"trivial", trivial_yd(H)}; }

bool all_pseudosym(const FiniteDimHopf& H, const std::vector<Obj>& xs) {
  return pointwise_axiom_suite(xs, unit_of(H), yd_braiding_family(), {Axiom::pseudosym}).passed;
}

}  // namespace

TEST_CASE("Yetter-Drinfeld modules") {
  for (const auto& H : {c2(), c2xc2(), build_en(1, Q), group_algebra(symmetric_group(3), Q)}) {
    CHECK(verify_yd(trivial_yd(H)).passed);
    CHECK(verify_yd(regular_yd_h1(H)).passed);
    CHECK(verify_yd(regular_yd_h2(H)).passed);
    const auto T = yd_tensor(regular_yd_h1(H), regular_yd_h2(H));
    CHECK(T.dim() == H.dim() * H.dim());
    CHECK(verify_yd(T).passed);
    const auto M = yd_tensor(regular_yd_h2(H), trivial_yd(H));
    CHECK(M.module.action == regular_yd_h2(H).module.action);
    CHECK(M.comodule.coaction == regular_yd_h2(H).comodule.coaction);
  }

  // On k[C2] the coaction of H1 collapses to g ↦ g⊗1.
  const auto H = c2();
  const auto h1 = regular_yd_h1(H);
  CHECK(h1.comodule.coaction[1] == kron(H.basis_vector(1), H.unit()));

  // A broken compatibility condition is refused.
  auto bad = regular_yd_h1(H);
  bad.comodule.coaction[1] = kron(H.basis_vector(1), H.basis_vector(1));
  CHECK_FALSE(verify_yd(bad).passed);
  CHECK_THROWS_AS(validated(bad), YDValidationError);
}

TEST_CASE("module spec grammar") {
  const auto H = c2();
  CHECK(parse_module_spec(H, "tensor(H1, tensor(H2,trivial))").object.dim() == 4);
  CHECK(parse_module_spec(H, " H2 ").name == "H2");
  CHECK_THROWS_AS(parse_module_spec(H, "H3"), ModuleSpecError);
  CHECK_THROWS_WITH(parse_module_spec(H, "tensor(H1 H2)"), ContainsSubstring("column"));
  CHECK_THROWS_AS(parse_module_spec(H, "H1)"), ModuleSpecError);
}

TEST_CASE("braiding and its inverse") {
  for (const auto& H : {c2(), c2xc2(), build_en(1, Q)}) {
    const auto xs = atoms(H, H.dim() == 2);
    for (const auto& x : xs)
      for (const auto& y : xs) {
        const auto c = yd_braiding(x.object, y.object), ci = yd_braiding_inv(x.object, y.object);
        REQUIRE(c * ci == LinearOperator::identity(Q, {y.object.dim(), x.object.dim()}));
        REQUIRE(ci * c == LinearOperator::identity(Q, {x.object.dim(), y.object.dim()}));
      }
    CHECK(pointwise_axiom_suite(xs, unit_of(H), yd_braiding_family(),
                                {Axiom::braid1, Axiom::braid2, Axiom::braideq, Axiom::quasico})
              .passed);
  }
  const auto H = c2();
  CHECK(yd_braiding(trivial_yd(H), trivial_yd(H)) == LinearOperator::identity(Q, {1, 1}));
}

TEST_CASE("pseudosymmetry holds for k[C2] and k[C2xC2]") {
  CHECK(all_pseudosym(c2(), atoms(c2(), true)));
  const auto V = c2xc2();
  CHECK(all_pseudosym(V, atoms(V, false)));
  const auto h12 = parse_module_spec(V, "tensor(H1,H2)"), h21 = parse_module_spec(V, "tensor(H2,H1)");
  const auto h1 = parse_module_spec(V, "H1"), h2 = parse_module_spec(V, "H2");
  CHECK(check_pseudosymmetry_triple(h12, h1, h21).passed);
  CHECK(check_pseudosymmetry_triple(h2, h21, h1).passed);
  CHECK(check_pseudosymmetry_triple(h1, h2, h12).passed);
}

TEST_CASE("pseudosymmetry fails for E(1)") {
  const auto E = build_en(1, Q);
  const auto h1 = parse_module_spec(E, "H1"), h2 = parse_module_spec(E, "H2"), k = parse_module_spec(E, "trivial");
  const auto r = check_pseudosymmetry_triple(h1, h2, h1);
  REQUIRE_FALSE(r.passed);
  CHECK_THAT(r.witness->location, ContainsSubstring("1⊗c⊗x1"));
  CHECK_FALSE(check_pseudosymmetry_triple(h1, h2, h2).passed);
  CHECK(check_pseudosymmetry_triple(h1, k, h2).passed);
  CHECK(check_pseudosymmetry_triple(k, h2, h1).passed);

  const auto co = replay_cocommutativity(E);
  REQUIRE_FALSE(co.elements.passed);
  CHECK(co.elements.witness->location == "at 1⊗x1⊗1");
  CHECK_FALSE(co.contracted.passed);
  CHECK_FALSE(co.conclusion.passed);

  const auto cm = replay_commutativity(E);
  REQUIRE_FALSE(cm.elements.passed);
  CHECK_THAT(cm.elements.witness->location, Catch::Matchers::StartsWith("at 1⊗"));
  CHECK(cm.elements.witness->index.size() == 2);
  CHECK_FALSE(cm.conclusion.passed);

  for (const auto& H : {c2(), c2xc2()}) {
    CHECK(replay_cocommutativity(H).elements.passed);
    CHECK(replay_commutativity(H).elements.passed);
  }
}

TEST_CASE("pseudosymmetry fails for k[S3]") {
  const auto H = group_algebra(symmetric_group(3), Q);
  const auto h1 = parse_module_spec(H, "H1"), h2 = parse_module_spec(H, "H2");
  CHECK(check_pseudosymmetry_triple(h1, h2, h1).passed);  // cocommutative
  const auto r = check_pseudosymmetry_triple(h1, h2, h2);
  REQUIRE_FALSE(r.passed);
  CHECK(r.witness.has_value());
  CHECK(replay_cocommutativity(H).elements.passed);
  CHECK_FALSE(replay_commutativity(H).elements.passed);
}

TEST_CASE("double braiding") {
  const auto H = c2();
  const auto xs = atoms(H, false);
  for (const auto& x : xs)
    for (const auto& y : xs) {
      CHECK(double_braiding(x.object, y.object) == double_braiding_formula(x.object, y.object));
      CHECK(double_braiding(x.object, y.object).inverse().has_value());
    }
  const auto k = trivial_yd(H);
  CHECK(double_braiding(k, k) == LinearOperator::identity(Q, {1, 1}));

  const auto family = double_braiding_family();
  std::vector<Axiom> all = laycle_axioms();
  for (auto a : twine_axioms()) all.push_back(a);
  for (auto a : strong_twine_axioms()) all.push_back(a);
  const std::vector<Obj> pair{xs[0], xs[1]};
  CHECK(pointwise_axiom_suite(pair, unit_of(H), family, all).passed);

  const auto E = build_en(1, Q);
  const std::vector<Obj> epair{parse_module_spec(E, "H1"), parse_module_spec(E, "H2")};
  CHECK(pointwise_axiom_suite(epair, unit_of(E), family, twine_axioms()).passed);
  const auto s3 = pointwise_axiom_suite(epair, unit_of(E), family, {Axiom::str3});
  REQUIRE_FALSE(s3.passed);
  CHECK(s3.witness.has_value());
}

TEST_CASE("str3 for the double braiding iff pseudosymmetry") {
  struct Family {
    FiniteDimHopf H;
    std::vector<Obj> xs;
  };
  std::vector<Family> families;
  for (const auto& H : {c2(), c2xc2(), build_en(1, Q), group_algebra(symmetric_group(3), Q)})
    families.push_back({H, atoms(H, false)});
  families.push_back({c2(), atoms(c2(), true)});
  const auto E = build_en(1, Q);
  families.push_back({E, {parse_module_spec(E, "H1"), parse_module_spec(E, "trivial")}});

  std::size_t positives = 0;
  for (const auto& [H, xs] : families) {
    const bool str3 = pointwise_axiom_suite(xs, unit_of(H), double_braiding_family(), {Axiom::str3}).passed;
    CHECK(str3 == all_pseudosym(H, xs));
    positives += str3;
    const bool strong =
        pointwise_axiom_suite(xs, unit_of(H), double_braiding_family(), strong_twine_axioms()).passed;
    if (strong) CHECK(pointwise_axiom_suite(xs, unit_of(H), double_braiding_family(), {Axiom::twine3}).passed);
  }
  CHECK(positives >= 3);
  CHECK(positives < families.size());
}

TEST_CASE("companions T^b and T^f") {
  const auto H = c2();
  const auto h1 = parse_module_spec(H, "H1"), h2 = parse_module_spec(H, "H2");
  const auto idc = companions_tb_tf(identity_family<YDModule>(), h1, h2, h1, unit_of(H));
  CHECK(idc.formulas.passed);
  CHECK(idc.equal.passed);
  CHECK(idc.tb == LinearOperator::identity(Q, {2, 2, 2}));

  const auto dc = companions_tb_tf(double_braiding_family(), h1, h2, h1, unit_of(H));
  CHECK(dc.formulas.passed);
  CHECK(dc.equal.passed);

  const auto E = build_en(1, Q);
  const auto e1 = parse_module_spec(E, "H1"), e2 = parse_module_spec(E, "H2");
  const auto de = companions_tb_tf(double_braiding_family(), e1, e2, e1, unit_of(E));
  CHECK(de.formulas.passed);
  CHECK_FALSE(de.equal.passed);

  std::vector<Axiom> every;
  for (int a = 0; a <= static_cast<int>(Axiom::t1t); ++a) every.push_back(static_cast<Axiom>(a));
  CHECK(pointwise_axiom_suite(atoms(H, false), unit_of(H), identity_family<YDModule>(), every).passed);
}

TEST_CASE("braidings from R-matrices") {
  const auto H = c2();
  const auto M = regular_yd_h1(H).module;
  CHECK(module_braiding_from_qt(TensorElement::unit(H.algebra(), 2), M, M) == LinearOperator::flip(Q, 2, 2));

  const auto E = build_en(1, Q);
  const NamedObject<HModule> reg{"reg", regular_yd_h1(E).module}, two{"H2", regular_yd_h2(E).module};
  const NamedObject<HModule> k{"k", trivial_yd(E).module};
  for (int a : {0, 1, -2}) {
    const auto R = en_rA(E, DenseMatrix::from_ints(Q, {{a}}));
    const auto c = qt_braiding_family(R);
    CHECK(pointwise_axiom_suite<HModule>({reg, two}, k, c, {Axiom::braid1, Axiom::braid2, Axiom::braideq}).passed);
    CHECK(is_pseudotriangular(E, R).passed);
    CHECK(pointwise_axiom_suite<HModule>({reg, two}, k, c, {Axiom::pseudosym}).passed);

    // conjugating by a lazy twist keeps the hexagons
    const auto F = en_tA(E, DenseMatrix::from_ints(Q, {{3}}));
    const auto [cT, rep] = conjugate_braiding_pointwise<HModule>({reg, two}, k, c, twist_family(F));
    CHECK(rep.passed);
    const auto [cI, repI] = conjugate_braiding_pointwise<HModule>({reg, two}, k, c, identity_family<HModule>());
    CHECK(repI.passed);
    CHECK(cI.op(reg.object, two.object) == c.op(reg.object, two.object));
  }

  // a central z gives a coboundary family that conjugates c to itself
  const auto V = c2xc2();
  const NamedObject<HModule> vr{"reg", regular_yd_h1(V).module}, vk{"k", trivial_yd(V).module};
  const auto z = V.unit() + V.basis_vector(1) - V.basis_vector(2);
  const auto c = qt_braiding_family(TensorElement::unit(V.algebra(), 2));
  const auto [cz, repz] = conjugate_braiding_pointwise<HModule>({vr}, vk, c, d1_family(V, z));
  CHECK(repz.passed);
  CHECK(cz.op(vr.object, vr.object) == c.op(vr.object, vr.object));
}
