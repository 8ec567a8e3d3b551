#include <catch_amalgamated.hpp>

#include <string>

#include "hopfkit/constructions.hpp"
#include "hopfkit/io.hpp"
#include "hopfkit/qt.hpp"

using namespace hopfkit;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec GF7 = FieldSpec::prime(7);
const std::string samples = HOPFKIT_SAMPLES_DIR;

bool is_abelian(const FiniteGroup& G) {
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

}  // namespace

TEST_CASE("named groups") {
  CHECK(named_group("cyclic:2").order() == 2);
  CHECK(named_group("sym:3").order() == 6);
  const auto V = named_group("product:cyclic:2,cyclic:2");
  CHECK(V.order() == 4);
  for (std::size_t a = 0; a < 4; ++a) CHECK(V.mul(a, a) == V.identity());
  CHECK(named_group("product:product:cyclic:2,cyclic:2,cyclic:3").order() == 12);
  CHECK_THROWS(named_group("sym:5"));
  CHECK_THROWS(named_group("dihedral:4"));
  CHECK_THROWS(named_group("cyclic:x"));
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}, {"a", "b"}), GroupTableError);
}

TEST_CASE("group algebras") {
  const auto C2 = group_algebra(cyclic_group(2), Q);
  CHECK(C2.dim() == 2);
  CHECK(verify_hopf_axioms(C2).passed);
  const auto C3 = group_algebra(cyclic_group(3), GF7);
  CHECK(C3.dim() == 3);
  CHECK(verify_hopf_axioms(C3).passed);

  const auto S3 = group_algebra(symmetric_group(3), Q);
  CHECK(S3.dim() == 6);
  const auto r = check_commutative(S3);
  REQUIRE_FALSE(r.passed);
  // Lexicographically the first noncommuting pair is two transpositions; a
  // transposition and a 3-cycle do not commute either.
  CHECK(r.witness->index == std::vector<std::size_t>{1, 2});
  CHECK(r.witness->location == "basis ((23), (12))");
  const auto t = S3.basis_vector(1), s = S3.basis_vector(3);
  CHECK(S3.label(3) == "(123)");
  CHECK(S3.algebra()->multiply(t, s) != S3.algebra()->multiply(s, t));
}

TEST_CASE("group algebras are cocommutative; commutative iff abelian") {
  for (const char* spec : {"cyclic:1", "cyclic:2", "cyclic:5", "sym:3", "product:cyclic:2,cyclic:2", "sym:4",
                           "product:cyclic:2,sym:3"}) {
    const auto G = named_group(spec);
    const auto H = group_algebra(G, Q);
    CHECK(check_cocommutative(H).passed);
    CHECK(check_commutative(H).passed == is_abelian(G));
  }
}

TEST_CASE("E(n) dimensions and relations") {
  for (int n = 0; n <= 4; ++n) {
    const auto E = build_en(n, Q);
    CHECK(E.dim() == (std::size_t{2} << n));
  }
  CHECK_THROWS(build_en(7, Q));
  CHECK_THROWS(build_en(-1, Q));
  CHECK(build_en(0, Q).data().mul == group_algebra(cyclic_group(2), Q).data().mul);

  const auto E1 = build_en(1, Q);
  CHECK(E1.dim() == 4);
  CHECK(E1.label(en_index(1, {1})) == "cx1");

  const auto E2 = build_en(2, Q);
  const auto x1 = E2.basis_vector(en_index(0, {1})), x2 = E2.basis_vector(en_index(0, {2})),
             c = E2.basis_vector(en_index(1, {}));
  CHECK(E2.multiply(x1, x2) == -E2.multiply(x2, x1));
  CHECK(E2.multiply(x1, c) == -E2.multiply(c, x1));
  CHECK(E2.multiply(x1, x1).is_zero());
  CHECK(E2.multiply(c, c) == E2.unit());
}

TEST_CASE("Drinfeld doubles") {
  const auto D2 = drinfeld_double_group(cyclic_group(2), Q);
  CHECK(D2.H.dim() == 4);
  CHECK(is_quasitriangular(D2.H, D2.R).passed);
  CHECK(check_commutative(D2.H).passed);
  CHECK(check_cocommutative(D2.H).passed);

  const auto D3 = drinfeld_double_group(cyclic_group(3), Q);
  CHECK(D3.H.dim() == 9);
  CHECK(is_quasitriangular(D3.H, D3.R).passed);

  const auto D6 = drinfeld_double_group(symmetric_group(3), Q);
  CHECK(D6.H.dim() == 36);
  CHECK(verify_hopf_axioms(D6.H).passed);
  CHECK(is_quasitriangular(D6.H, D6.R).passed);
  CHECK_FALSE(check_commutative(D6.H).passed);

  // The shipped convention for each group, frozen.
  CHECK(D2.convention == DoubleConvention::conjugation);
  CHECK(D3.convention == DoubleConvention::conjugation);
  CHECK(D6.convention == DoubleConvention::mirror);
  REQUIRE(D6.attempts.size() == 2);
  CHECK_FALSE(D6.attempts[0].second.passed);

  CHECK_THROWS_AS(drinfeld_double_group(symmetric_group(4), Q), SizeCapError);
}

TEST_CASE("Hopf-file round trip") {
  for (const auto& H : {build_en(1, Q), group_algebra(symmetric_group(3), GF7), build_en(2, GF7)}) {
    const auto back = parse_hopf_text(hopf_to_json(H).dump());
    CHECK(back.data().mul == H.data().mul);
    CHECK(back.data().comul == H.data().comul);
    CHECK(back.data().counit == H.data().counit);
    CHECK(back.antipode() == H.antipode());
    CHECK(back.algebra()->labels() == H.algebra()->labels());
  }
}

TEST_CASE("Hopf-file samples") {
  const auto C3 = parse_hopf_file(samples + "/k_c3_gf7.json");
  CHECK(C3.field() == GF7);
  CHECK(verify_hopf_axioms(C3).passed);
  CHECK(C3.apply_antipode(C3.basis_vector(1)) == C3.basis_vector(2));

  const auto E1 = parse_hopf_file(samples + "/sweedler.json");
  CHECK(E1.data().mul == build_en(1, Q).data().mul);

  const HopfData broken = parse_hopf_data(detail::read_file(samples + "/broken_coassociativity.json"));
  const auto r = verify_hopf_axioms(broken);
  REQUIRE_FALSE(r.passed);
  const auto* co = r.find("coassociativity");
  REQUIRE(co != nullptr);
  CHECK_FALSE(co->passed);
  CHECK(co->witness->index == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(parse_hopf_file(samples + "/broken_coassociativity.json"), HopfAxiomError);
}

TEST_CASE("Hopf-file errors carry positions") {
  try {
    parse_hopf_text("{\"field\": \"q\",\n \"dim\": 2,, }");
    FAIL("no error");
  } catch (const FileFormatError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  auto doc = hopf_to_json(build_en(1, Q));
  doc["mul"][1][2] = Json::array({Json::array({9, "1"})});
  CHECK_THROWS_WITH(parse_hopf_text(doc.dump()), Catch::Matchers::ContainsSubstring("/mul/1/2/0/0"));
  doc = hopf_to_json(build_en(1, Q));
  doc["counit"][0] = "1/0";
  CHECK_THROWS_WITH(parse_hopf_text(doc.dump()), Catch::Matchers::ContainsSubstring("/counit/0"));
  doc.erase("comul");
  CHECK_THROWS_WITH(parse_hopf_text(doc.dump()), Catch::Matchers::ContainsSubstring("comul"));
  doc = hopf_to_json(build_en(1, Q));
  doc["field"] = "gf:4";
  CHECK_THROWS_AS(parse_hopf_text(doc.dump()), FileFormatError);
  CHECK_THROWS_AS(parse_hopf_file(samples + "/does_not_exist.json"), FileFormatError);
}

TEST_CASE("algebra-files and operator-files") {
  const auto A = parse_algebra_file(samples + "/dual_numbers.json");
  CHECK(A->dim() == 2);
  CHECK(A->multiply(A->basis_vector(1), A->basis_vector(1)).is_zero());
  const auto back = parse_algebra_text(algebra_to_json(*A).dump());
  CHECK(back->same_structure(*A));

  const auto P = parse_operator_file(samples + "/flip.json");
  CHECK(P == LinearOperator::flip(Q, 2, 2));
  CHECK(parse_operator_text(operator_to_json(P).dump()) == P);

  auto bad = algebra_to_json(*A);
  bad["mul"][1][1] = Json::array({Json::array({0, "1"})});  // x² = 1 keeps associativity
  CHECK_NOTHROW(parse_algebra_text(bad.dump()));
  bad["mul"][0][1] = Json::array({Json::array({0, "1"})});  // 1·x = 1 breaks the unit
  CHECK_THROWS_AS(parse_algebra_text(bad.dump()), AlgebraAxiomError);
  auto op = operator_to_json(P);
  op["columns"].erase(0);
  CHECK_THROWS_WITH(parse_operator_text(op.dump()), Catch::Matchers::ContainsSubstring("/columns"));
}
