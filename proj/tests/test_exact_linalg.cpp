#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "hopfkit/dense.hpp"
#include "hopfkit/multi_index.hpp"
#include "hopfkit/scalar.hpp"
#include "hopfkit/sparse.hpp"
#include "hopfkit/sparse_solve.hpp"

using namespace hopfkit;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec GF7 = FieldSpec::prime(7);

Scalar random_scalar(FieldSpec f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  if (f.is_prime_field()) return Scalar(f, num(rng));
  return Scalar::fraction(f, num(rng), den(rng));
}

DenseMatrix random_matrix(FieldSpec f, std::size_t n, std::mt19937_64& rng) {
  DenseMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_scalar(f, rng);
  return m;
}

DenseMatrix random_invertible(FieldSpec f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    DenseMatrix m = random_matrix(f, n, rng);
    if (!determinant(m).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("field spec parsing and characteristic guard") {
  CHECK(FieldSpec::parse("q") == Q);
  CHECK(FieldSpec::parse("gf:7") == GF7);
  CHECK_THROWS_AS(FieldSpec::parse("gf:2"), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("gf:9"), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("r"), FieldError);
  CHECK_THROWS_AS(FieldSpec::prime(2147483659ULL), FieldError);
  CHECK(FieldSpec::prime(2147483647ULL).modulus() == 2147483647ULL);
}

TEST_CASE("scalar text forms") {
  CHECK(Scalar::parse(Q, "6/4").to_string() == "3/2");
  CHECK(Scalar::parse(Q, "-2/-4").to_string() == "1/2");
  CHECK(Scalar::parse(Q, "3/-6").to_string() == "-1/2");
  CHECK(Scalar::parse(GF7, "-1").to_string() == "6");
  CHECK(Scalar::parse(GF7, "1/2").to_string() == "4");
  CHECK_THROWS(Scalar::parse(Q, "1/0"));
  CHECK_THROWS(Scalar::parse(Q, "abc"));
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(GF7, 1), FieldError);
  CHECK(Scalar(GF7, 3).pow(6).is_one());
  CHECK(Scalar(Q, 2).pow(-2) == Scalar::fraction(Q, 1, 4));
}

TEST_CASE("field axioms on sampled triples") {
  std::mt19937_64 rng(11);
  for (FieldSpec f : {Q, GF7, FieldSpec::prime(101)}) {
    for (int t = 0; t < 300; ++t) {
      const Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("sparse vectors never store zeros") {
  auto v = SparseVec::from_entries(Q, 5, {{3, Scalar(Q, 2)}, {1, Scalar(Q, 1)}, {3, Scalar(Q, -2)}, {0, Scalar(Q, 0)}});
  CHECK(v.nnz() == 1);
  CHECK(v.get(1).is_one());
  CHECK((v - v).is_zero());
  CHECK_THROWS_AS(SparseVec::basis(Q, 3, 3), std::out_of_range);
  CHECK(v.to_string() == "e1");
}

TEST_CASE("solve_linear on forced examples") {
  const auto I = DenseMatrix::identity(Q, 3);
  const auto b = SparseVec::from_entries(Q, 3, {{0, Scalar(Q, 5)}, {2, Scalar::fraction(Q, 1, 3)}});
  CHECK(*solve_linear(I, b) == b);

  const auto M = DenseMatrix::from_ints(Q, {{1, 1}, {0, 1}});
  const auto rhs = SparseVec::from_dense(Q, std::vector<Scalar>{Scalar(Q, 3), Scalar(Q, 2)});
  const auto x = solve_linear(M, rhs);
  REQUIRE(x);
  CHECK(x->get(0) == Scalar(Q, 1));
  CHECK(x->get(1) == Scalar(Q, 2));

  const auto sing = DenseMatrix::from_ints(Q, {{1, 1}, {1, 1}});
  CHECK_FALSE(solve_linear(sing, rhs));
  CHECK_THROWS_AS(solve_linear(M, SparseVec::basis(Q, 3, 0)), DimensionError);
  CHECK_THROWS_AS(solve_linear(M, SparseVec::basis(GF7, 2, 0)), FieldError);
}

TEST_CASE("solve_linear picks free variables zero") {
  // x0 + x1 + x2 = 1 has the pivot on x0.
  const auto M = DenseMatrix::from_ints(Q, {{1, 1, 1}});
  const auto x = solve_linear(M, SparseVec::basis(Q, 1, 0));
  REQUIRE(x);
  CHECK(*x == SparseVec::basis(Q, 3, 0));
  // Column 0 zero: pivot moves to x1.
  const auto N = DenseMatrix::from_ints(Q, {{0, 2, 4}, {0, 0, 1}});
  const auto y = solve_linear(N, SparseVec::from_dense(Q, std::vector<Scalar>{Scalar(Q, 2), Scalar(Q, 1)}));
  REQUIRE(y);
  CHECK(y->get(0).is_zero());
  CHECK(y->get(1) == Scalar(Q, -1));
  CHECK(y->get(2) == Scalar(Q, 1));
}

TEST_CASE("random invertible 10x10 over GF(7) round-trips") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix M = random_invertible(GF7, 10, rng);
    std::vector<Scalar> bv;
    for (int i = 0; i < 10; ++i) bv.push_back(random_scalar(GF7, rng));
    const SparseVec b = SparseVec::from_dense(GF7, bv);
    const auto x = solve_linear(M, b);
    REQUIRE(x);
    CHECK(M.apply(*x) == b);
  }
}

TEST_CASE("invert_matrix") {
  CHECK(*invert_matrix(DenseMatrix::identity(Q, 4)) == DenseMatrix::identity(Q, 4));
  const auto P = DenseMatrix::from_ints(Q, {{0, 1}, {1, 0}});
  CHECK(*invert_matrix(P) == P);
  CHECK_FALSE(invert_matrix(DenseMatrix::from_ints(Q, {{1, 2}, {2, 4}})));
  CHECK_THROWS_AS(invert_matrix(DenseMatrix(Q, 2, 3)), DimensionError);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix M = random_invertible(Q, 6, rng);
    const auto Mi = invert_matrix(M);
    REQUIRE(Mi);
    CHECK(M * *Mi == DenseMatrix::identity(Q, 6));
    CHECK(*Mi * M == DenseMatrix::identity(Q, 6));
  }
}

TEST_CASE("sparse echelon agrees with dense elimination") {
  std::mt19937_64 rng(5);
  for (FieldSpec f : {Q, GF7}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t r = 2 + rng() % 6, c = 2 + rng() % 6;
      DenseMatrix M(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (rng() % 3 == 0) M.at(i, j) = random_scalar(f, rng);
      std::vector<Scalar> bv;
      for (std::size_t i = 0; i < r; ++i) bv.push_back(rng() % 2 ? random_scalar(f, rng) : Scalar::zero(f));
      const SparseVec b = SparseVec::from_dense(f, bv);
      std::vector<SparseVec> cols;
      for (std::size_t j = 0; j < c; ++j) cols.push_back(M.column(j));
      const auto dense = solve_linear(M, b);
      const auto sparse = solve_sparse_columns(f, r, cols, {b});
      REQUIRE(dense.has_value() == sparse.has_value());
      if (dense) {
        CHECK(*dense == (*sparse)[0]);
        CHECK(M.apply(*dense) == b);
      }
    }
  }
}

TEST_CASE("rank and determinant") {
  CHECK(rank(DenseMatrix::from_ints(Q, {{1, 2}, {2, 4}})) == 1);
  CHECK(determinant(DenseMatrix::from_ints(Q, {{1, 2}, {3, 4}})) == Scalar(Q, -2));
  CHECK(determinant(DenseMatrix::from_ints(GF7, {{1, 2}, {3, 4}})) == Scalar(GF7, 5));
}

TEST_CASE("multi-index encoding") {
  CHECK(encode_multi_index(MultiIndex{}) == 0);
  CHECK(encode_multi_index(MultiIndex{{{1, 2}, {0, 3}}}) == 3);
  CHECK_THROWS_AS(encode_multi_index(MultiIndex{{{2, 2}}}), std::out_of_range);
  const std::vector<std::size_t> shape{2, 3, 4};
  std::set<std::size_t> seen;
  for (std::size_t f = 0; f < 24; ++f) {
    const MultiIndex m = decode_flat(f, shape);
    CHECK(encode_multi_index(m) == f);
    seen.insert(m.legs[0].first * 100 + m.legs[1].first * 10 + m.legs[2].first);
  }
  CHECK(seen.size() == 24);
  CHECK_THROWS_AS(decode_flat(24, shape), std::out_of_range);
  const std::vector<std::size_t> empty;
  CHECK(decode_flat(0, empty).legs.empty());
}

TEST_CASE("encode/decode bijection for random shapes up to 10^6") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::size_t> shape;
    std::size_t total = 1;
    while (shape.size() < 6) {
      const std::size_t d = 1 + rng() % 12;
      if (total * d > 1000000) break;
      shape.push_back(d);
      total *= d;
    }
    for (int s = 0; s < 200; ++s) {
      const std::size_t f = rng() % total;
      CHECK(encode_multi_index(decode_flat(f, shape)) == f);
    }
  }
}
