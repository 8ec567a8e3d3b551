#include <catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "hopfkit/constructions.hpp"
#include "hopfkit/en_family.hpp"
#include "hopfkit/fedosov.hpp"
#include "hopfkit/twisted.hpp"
#include "hopfkit/twists.hpp"

using namespace hopfkit;
using Catch::Matchers::ContainsSubstring;

namespace {

const FieldSpec Q = FieldSpec::rationals();

bool same_companions(const TwistCandidate& a, const TwistCandidate& b) {
  return a.T == b.T && a.companions->first == b.companions->first && a.companions->second == b.companions->second;
}

// Every accepted candidate must give an associative algebra.
void check_twisted_algebra(const TwistCandidate& tc) {
  REQUIRE(verify_pseudotwistor(tc).passed);
  const AlgebraPtr B = twist_algebra(tc);
  CHECK(check_associativity(*B).passed);
}

// 1 + a·(sum of the elements of one conjugacy class) in k[S3], normalised.
SparseVec class_element(const FiniteDimHopf& H, bool transpositions, int a) {
  std::vector<Scalar> v(H.dim(), Scalar::zero(Q));
  v[0] = Scalar::one(Q);
  for (std::size_t i = 1; i < H.dim(); ++i)
    if ((H.label(i).size() == 4) == transpositions) v[i] = Scalar(Q, a);
  SparseVec z = SparseVec::from_dense(Q, v);
  return H.counit_of(z).inverse() * z;
}

}  // namespace

TEST_CASE("the Fedosov reference twist") {
  const auto ref = fedosov_reference(Q);
  CHECK(verify_dg(ref.dg).passed);
  REQUIRE(verify_pseudotwistor(ref.twist).passed);
  const AlgebraPtr B = twist_algebra(ref.twist);
  CHECK(check_associativity(*B).passed);

  const std::size_t e1 = 0b000001, e2 = 0b000010;
  const SparseVec prod = fedosov_product(ref.dg, e1, e2);
  CHECK(B->product(e1, e2) == prod);
  CHECK(ref.dg.A->render(prod) == "e1e2 + e3e4e5e6");
  CHECK_FALSE((prod - ref.dg.A->product(e1, e2)).is_zero());
  for (std::size_t w = 0; w < 64; w += 5)
    for (std::size_t z = 0; z < 64; z += 7) REQUIRE(B->product(w, z) == fedosov_product(ref.dg, w, z));

  const auto rc = pseudotwistor_to_rmatrix(ref.twist);
  CHECK(verify_rmatrix_categorical(rc).passed);
  CHECK(same_companions(rmatrix_to_pseudotwistor(rc), ref.twist));
  CHECK(rmatrix_algebra(rc)->same_structure(*B));
}

TEST_CASE("the Fedosov twist is pure", "[slow]") {
  const auto ref = fedosov_reference(Q);
  CHECK(verify_pure(ref.twist).passed);
}

TEST_CASE("DG algebra validation") {
  const AlgebraPtr A = exterior_algebra(Q, 2);
  const std::size_t n = A->dim();
  auto d_of = [&](std::vector<std::pair<std::size_t, std::size_t>> images) {
    return LinearOperator::from_function(Q, {n}, {n}, [&](std::size_t j) {
      for (auto [from, to] : images)
        if (from == j) return SparseVec::basis(Q, n, to);
      return SparseVec(Q, n);
    });
  };
  CHECK_NOTHROW(make_dg(A, d_of({})));
  CHECK_NOTHROW(make_dg(A, d_of({{0b01, 0b11}})));  // d(e1) = e1e2
  try {
    make_dg(A, d_of({{0b01, 0b01}}));
    FAIL("degree-preserving d accepted");
  } catch (const DGValidationError& e) {
    CHECK_FALSE(e.report().find("degree")->passed);
  }
  CHECK_THROWS_AS(make_dg(A, d_of({{0b00, 0b01}})), DGValidationError);  // d(1) ≠ 0 breaks Leibniz
  CHECK_THROWS_AS(make_dg(dual_numbers(Q), identity_op(*dual_numbers(Q))), DimensionError);
}

TEST_CASE("identity twist and twisting maps on the dual numbers") {
  const AlgebraPtr A = dual_numbers(Q, true);
  const auto id = identity_twist(A);
  CHECK(verify_pseudotwistor(id).passed);
  CHECK(verify_strong(id).passed);
  CHECK(verify_pure(id).passed);
  CHECK(twist_algebra(id)->same_structure(*A));

  const auto R = graded_flip(*A), P = plain_flip(*A);
  REQUIRE(twm_hypotheses(A, R, P).passed);
  const auto tc = twm_pseudotwistor(A, R, P);
  check_twisted_algebra(tc);
  CHECK(verify_pure(tc).passed);
  if (twm_strong_hypotheses(A, R, P).passed) CHECK(verify_strong(tc).passed);

  CHECK(verify_braid_system(A, {R, P}).passed);
  check_twisted_algebra(durdevich_pseudotwistor(A, {R, P}, 0, 1));
  check_twisted_algebra(durdevich_pseudotwistor(A, {R, P}, 1, 1));

  const auto bad = LinearOperator::identity(Q, {2, 2});
  CHECK_FALSE(twisting_map_suite(A, bad).passed);
  CHECK_THROWS_AS(twm_pseudotwistor(A, bad, P), HypothesisError);
}

TEST_CASE("Borcherds R-matrices") {
  const AlgebraPtr A = dual_numbers(Q);
  CHECK(verify_rmatrix_borcherds(A, identity_op(*A, 2)).passed);
  const auto r = verify_rmatrix_borcherds(A, plain_flip(*A));
  REQUIRE_FALSE(r.passed);
  CHECK_THAT(r.witness->location, ContainsSubstring("at 1⊗x"));
  CHECK_FALSE(r.find("rmat1")->passed);
  CHECK_THROWS_AS(verify_rmatrix_borcherds(dual_numbers(Q, true), identity_op(*A, 2)), TwistError);

  // a laycle acting on an ungraded module algebra
  const auto H = group_algebra(cyclic_group(2), Q);
  const auto MA = adjoint_module_algebra(H);
  const auto T = laycle_induced_pseudotwistor(H, c2_ta(H, Scalar(Q, 3)), MA);
  const auto rc = pseudotwistor_to_rmatrix(T);
  CHECK(verify_rmatrix_categorical(rc).passed);
}

TEST_CASE("the laycle family on k[C2] acting by parity") {
  const auto H = group_algebra(cyclic_group(2), Q);
  const auto MA = parity_module_algebra(H);
  CHECK(verify_module_algebra(MA).passed);
  for (int a : {1, 2, -1, 3}) {
    const auto F = c2_ta(H, Scalar(Q, a));
    const auto tc = laycle_induced_pseudotwistor(H, F, MA);
    check_twisted_algebra(tc);
    CHECK(verify_strong(tc).passed);
    CHECK(verify_pure(tc).passed);
    CHECK(is_neat(H, F).passed);
    CHECK(twist_algebra(tc)->product(1, 1).is_zero());

    // the R-matrix companions are T^f and T^b, and the conversion round-trips
    const auto rc = pseudotwistor_to_rmatrix(tc);
    CHECK(verify_rmatrix_categorical(rc).passed);
    CHECK(rc.bar1 == tc.companions->second);
    CHECK(rc.bar2 == tc.companions->first);
    CHECK(same_companions(rmatrix_to_pseudotwistor(rc), tc));

    check_twisted_algebra(invert_pseudotwistor(tc));
    const auto TT = compose_pseudotwistors(tc, tc);
    CHECK(verify_strong(TT).passed);
    CHECK(TT.T == laycle_induced_pseudotwistor(H, c2_ta(H, Scalar(Q, a * a)), MA).T);

    for (int alpha : {2, 3}) {
      const auto theta = c2_theta(H, Scalar(Q, alpha));
      CHECK(coboundary_iso_check(tc, central_action(H, MA, theta)).passed);
      const auto D1 = d1_pseudotwistor(H, MA, theta);
      check_twisted_algebra(D1);
      check_twisted_algebra(compose_pseudotwistors(tc, D1));
    }
  }
  CHECK_THROWS_AS(laycle_induced_pseudotwistor(H, c2_ta(H, Scalar::zero(Q)), MA), TwistError);
  CHECK_THROWS_AS(parity_module_algebra(build_en(1, Q)), DimensionError);
}

TEST_CASE("the E(n) laycles acting by the adjoint action") {
  const auto E2 = build_en(2, Q);
  const auto MA = adjoint_module_algebra(E2);
  const auto M = DenseMatrix::from_ints(Q, {{1, 2}, {3, 5}});
  for (const auto& X : {M, M - M.transpose()}) {
    const auto F = en_tA(E2, X);
    const auto tc = laycle_induced_pseudotwistor(E2, F, MA);
    check_twisted_algebra(tc);
    CHECK(verify_strong(tc).passed);
    CHECK(verify_pure(tc).passed == is_neat(E2, F).passed);
  }

  const auto E1 = build_en(1, Q);
  const auto MA1 = adjoint_module_algebra(E1);
  const auto t = laycle_induced_pseudotwistor(E1, en_tij(E1, 1, 1, Scalar(Q, 3)), MA1);
  const auto tn = laycle_induced_pseudotwistor(E1, en_tij(E1, 1, 1, Scalar(Q, -3)), MA1);
  CHECK(same_companions(invert_pseudotwistor(t), tn));
}

TEST_CASE("pure iff neat on k[S3] acting on itself") {
  const auto H = group_algebra(symmetric_group(3), Q);
  const auto MA = adjoint_module_algebra(H);
  struct Case {
    bool transpositions;
    int a;
    bool expect;
  };
  for (const auto& [tr, a, expect] : std::vector<Case>{{true, 1, false}, {true, 2, false}, {false, 2, true}}) {
    const auto z = class_element(H, tr, a);
    const auto F = coboundary_twist(H, z);
    REQUIRE(is_lazy_twist(H, F).passed);
    const auto tc = laycle_induced_pseudotwistor(H, F, MA);
    CHECK(verify_pseudotwistor(tc).passed);
    CHECK(verify_strong(tc).passed);
    const auto pure = verify_pure(tc), neat = is_neat(H, F);
    CHECK(pure.passed == expect);
    CHECK(neat.passed == expect);
    if (!expect) {
      CHECK_THAT(pure.witness->location, ContainsSubstring("(23)⊗(23)⊗(23)⊗(23)"));
      CHECK_THAT(neat.witness->location, ContainsSubstring("(23)⊗(123)⊗(12)"));
    }
  }
}

TEST_CASE("nonunital examples") {
  const AlgebraPtr A = dual_numbers(Q);
  const SparseVec r = SparseVec::basis(Q, 4, 0) + SparseVec::basis(Q, 4, 3, Scalar(Q, 2));
  check_twisted_algebra(example_twists(ExampleKind::i, A, {r, std::nullopt, std::nullopt, Side::left}));

  const auto fx = LinearOperator::from_function(Q, {2}, {2}, [&](std::size_t v) { return A->product(1, v); });
  const auto ex2 = example_twist_f(A, fx, Side::left);
  check_twisted_algebra(ex2);
  CHECK(twist_algebra(ex2)->product(0, 0) == A->basis_vector(1));

  const auto delta = LinearOperator::from_function(Q, {2}, {2, 2}, [&](std::size_t v) { return SparseVec::basis(Q, 4, v); });
  const auto ex3 = example_twist_delta(A, delta, Side::right);
  CHECK(ex3.T.is_identity());
  check_twisted_algebra(ex3);
  try {
    example_twist_delta(A, delta, Side::left);
    FAIL("left-sided law accepted");
  } catch (const HypothesisError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("at x⊗1"));
  }
  CHECK_THROWS_AS(example_twists(ExampleKind::ii, A, {}), TwistError);
}
