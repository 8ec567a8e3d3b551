#include <catch_amalgamated.hpp>

#include <random>

#include "hopfkit/constructions.hpp"
#include "hopfkit/en_family.hpp"
#include "hopfkit/hopf.hpp"
#include "hopfkit/tensor.hpp"

using namespace hopfkit;

namespace {

const FieldSpec Q = FieldSpec::rationals();

TensorElement random_element(const FiniteDimHopf& H, std::size_t legs, std::mt19937_64& rng, int terms = 4) {
  const AlgebraPtr& A = H.algebra();
  TensorElement x(A, legs);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::size_t> pick(0, H.dim() - 1);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> idx(legs);
    for (auto& i : idx) i = pick(rng);
    x = x + Scalar(H.field(), coef(rng)) * TensorElement::basis(A, idx);
  }
  return x;
}

std::size_t en(int a, std::initializer_list<int> P) { return en_index(a, P); }

}  // namespace

TEST_CASE("multiply_tensor is unital and associative on samples") {
  std::mt19937_64 rng(11);
  for (const auto& H : {build_en(2, Q), group_algebra(symmetric_group(3), Q)}) {
    const TensorElement one = TensorElement::unit(H.algebra(), 2);
    for (int s = 0; s < 100; ++s) {
      const auto x = random_element(H, 2, rng), y = random_element(H, 2, rng), z = random_element(H, 2, rng);
      REQUIRE(x * one == x);
      REQUIRE(one * x == x);
      REQUIRE((x * y) * z == x * (y * z));
    }
  }
}

TEST_CASE("T_{1,1}(a) T_{1,1}(b) = T_{1,1}(a+b) in E(1)") {
  const auto E = build_en(1, Q);
  for (int a : {-2, 0, 3})
    for (int b : {1, 5})
      CHECK(en_tij(E, 1, 1, Scalar(Q, a)) * en_tij(E, 1, 1, Scalar(Q, b)) == en_tij(E, 1, 1, Scalar(Q, a + b)));
}

TEST_CASE("leg_embed") {
  const auto E = build_en(1, Q);
  const AlgebraPtr& A = E.algebra();
  const auto one = TensorElement::unit(A, 2);
  const auto x = TensorElement::basis(A, {en(1, {}), en(0, {1})});
  CHECK(leg_embed(TensorElement::basis(A, {2}), {1}, 1) == TensorElement::basis(A, {2}));
  CHECK(leg_embed(one, {1, 2}, 3) == TensorElement::unit(A, 3));
  CHECK(flip21(x) == TensorElement::basis(A, {en(0, {1}), en(1, {})}));
  CHECK(flip21(flip21(x)) == x);
  CHECK(leg_embed(x, {3, 1}, 3) == TensorElement::basis(A, {en(0, {1}), 0, en(1, {})}));
  CHECK_THROWS(leg_embed(x, {1, 1}, 3));
  CHECK_THROWS(leg_embed(x, {1, 4}, 3));

  // Embeddings into disjoint legs commute.
  std::mt19937_64 rng(3);
  for (int s = 0; s < 20; ++s) {
    const auto a = random_element(E, 1, rng), b = random_element(E, 1, rng);
    const auto a1 = leg_embed(a, {1}, 2), b2 = leg_embed(b, {2}, 2);
    REQUIRE(a1 * b2 == b2 * a1);
  }
}

TEST_CASE("apply_coproduct_leg on E(1)") {
  const auto E = build_en(1, Q);
  const AlgebraPtr& A = E.algebra();
  const std::size_t c = en(1, {}), x1 = en(0, {1});
  CHECK(apply_coproduct_leg(E, TensorElement::unit(A, 2), 1) == TensorElement::unit(A, 3));
  CHECK(apply_coproduct_leg(E, TensorElement::basis(A, {c, 0}), 1) == TensorElement::basis(A, {c, c, 0}));
  CHECK(apply_coproduct_leg(E, TensorElement::basis(A, {x1, 0}), 1) ==
        TensorElement::basis(A, {0, x1, 0}) + TensorElement::basis(A, {x1, c, 0}));
  CHECK_THROWS(apply_coproduct_leg(E, TensorElement::basis(A, {x1, 0}), 3));

  std::mt19937_64 rng(5);
  for (int s = 0; s < 20; ++s) {
    const auto h = random_element(E, 1, rng);
    REQUIRE(apply_coproduct_leg(E, apply_coproduct_leg(E, h, 1), 1) ==
            apply_coproduct_leg(E, apply_coproduct_leg(E, h, 1), 2));
  }
}

TEST_CASE("counit and antipode on legs") {
  const auto E2 = build_en(2, Q);
  const AlgebraPtr& A = E2.algebra();
  CHECK(apply_counit_leg(E2, TensorElement::unit(A, 2), 1) == TensorElement::unit(A, 1));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const auto T = en_tij(E2, i, j, Scalar(Q, 7));
      CHECK(apply_counit_leg(E2, T, 1) == TensorElement::unit(A, 1));
      CHECK(apply_counit_leg(E2, T, 2) == TensorElement::unit(A, 1));
    }
  std::mt19937_64 rng(9);
  for (int s = 0; s < 20; ++s) {
    const auto x = random_element(E2, 2, rng);
    REQUIRE(apply_antipode_leg(E2, apply_antipode_leg(E2, x, 2), 2, true) == x);
  }
}

TEST_CASE("invert_tensor_element") {
  const auto E1 = build_en(1, Q), E2 = build_en(2, Q);
  CHECK(*invert_tensor_element(TensorElement::unit(E2.algebra(), 2)) == TensorElement::unit(E2.algebra(), 2));
  const auto A = DenseMatrix::from_ints(Q, {{1, 2}, {-3, 4}});
  CHECK(*invert_tensor_element(en_tA(E2, A)) == en_tA(E2, -A));
  for (int a : {-1, 2, 5}) {
    const auto M = DenseMatrix::from_ints(Q, {{a}});
    CHECK(*invert_tensor_element(en_rA(E1, M)) == flip21(en_rA(E1, M.transpose())));
  }
  const auto x1 = TensorElement::basis(E1.algebra(), {en(0, {1}), 0});
  CHECK_FALSE(invert_tensor_element(x1).has_value());
  CHECK_THROWS_AS(invert_tensor_element(TensorElement::unit(E2.algebra(), 3), 100), SizeCapError);

  std::mt19937_64 rng(1);
  for (int s = 0; s < 20; ++s) {
    const auto x = TensorElement::unit(E1.algebra(), 2) + random_element(E1, 2, rng, 2);
    if (auto y = invert_tensor_element(x)) {
      REQUIRE(x * *y == TensorElement::unit(E1.algebra(), 2));
      REQUIRE(*y * x == TensorElement::unit(E1.algebra(), 2));
    }
  }
}

TEST_CASE("is_central") {
  const auto E1 = build_en(1, Q);
  CHECK(is_central(TensorElement::unit(E1.algebra(), 2)).passed);
  const auto T = en_tA(E1, DenseMatrix::from_ints(Q, {{2}}));
  const auto r = is_central(T);
  REQUIRE_FALSE(r.passed);
  CHECK(r.witness->location.find("1⊗c") != std::string::npos);
  const auto C2 = group_algebra(cyclic_group(2), Q);
  std::mt19937_64 rng(2);
  for (int s = 0; s < 10; ++s) CHECK(is_central(random_element(C2, 2, rng)).passed);
}

TEST_CASE("verify_hopf_axioms and its mutation test") {
  CHECK(verify_hopf_axioms(group_algebra(cyclic_group(2), Q)).passed);
  for (int n = 0; n <= 3; ++n) CHECK(verify_hopf_axioms(build_en(n, Q)).passed);

  HopfData d = build_en(1, Q).data();
  d.mul[en(0, {1}) * 4 + en(1, {})] = SparseVec::basis(Q, 4, en(1, {1}));  // x1·c = +cx1
  const auto r = verify_hopf_axioms(d);
  REQUIRE_FALSE(r.passed);
  const auto* assoc = r.find("associativity");
  REQUIRE(assoc != nullptr);
  CHECK_FALSE(assoc->passed);
  CHECK(assoc->witness->index.size() == 3);
  CHECK_THROWS_AS(FiniteDimHopf::create(d), HopfAxiomError);
}

TEST_CASE("compute_antipode") {
  const auto C2 = group_algebra(cyclic_group(2), Q);
  CHECK(C2.apply_antipode(C2.basis_vector(1)) == C2.basis_vector(1));
  const auto G = symmetric_group(3);
  const auto S3 = group_algebra(G, Q);
  for (std::size_t g = 0; g < G.order(); ++g) CHECK(S3.apply_antipode(S3.basis_vector(g)) == S3.basis_vector(G.inverse(g)));

  HopfData d = build_en(1, Q).data();
  d.antipode.reset();
  const auto S = compute_antipode(d);
  REQUIRE(S.has_value());
  CHECK(*S == build_en(1, Q).antipode());
  CHECK(verify_hopf_axioms(FiniteDimHopf::create(d)).passed);
}

TEST_CASE("build_dual") {
  const auto C2 = group_algebra(cyclic_group(2), Q);
  const auto D = build_dual(C2);
  CHECK(D.dim() == 2);
  CHECK(verify_hopf_axioms(D).passed);
  const auto DD = build_dual(D);
  CHECK(DD.data().mul == C2.data().mul);
  CHECK(DD.data().comul == C2.data().comul);
  CHECK(verify_hopf_axioms(build_dual(build_en(1, Q))).passed);
}
