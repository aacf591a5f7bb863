#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqha/linalg.hpp"
#include "eqha/random_gen.hpp"

using namespace eqha;

namespace {

template <class F>
Matrix<F> from_ints(F f, std::vector<std::vector<long>> rows) {
  Matrix<F> m(f, int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
  for (int i = 0; i < m.nr; ++i)
    for (int j = 0; j < m.nc; ++j) m.at(i, j) = f.from_int(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("rational field arithmetic") {
  FieldQ f;
  auto a = f.parse("2/3"), b = f.parse("-1/6");
  CHECK(f.str(f.add(a, b)) == "1/2");
  CHECK(f.str(f.mul(a, b)) == "-1/9");
  CHECK(f.str(f.inv(b)) == "-6");
  CHECK(f.str(f.parse("4/8")) == "1/2");
  CHECK(f.is_zero(f.sub(a, a)));
  auto acc = f.from_int(1);
  f.madd(acc, a, b);  // 1 + (2/3)(-1/6) = 8/9
  CHECK(f.str(acc) == "8/9");
  f.msub(acc, a, a);  // 8/9 - 4/9
  CHECK(f.str(acc) == "4/9");
  CHECK_THROWS(f.inv(f.zero()));
}

TEST_CASE("prime field arithmetic") {
  for (long p : {2L, 3L, 5L, 97L}) {
    FieldFp f(p);
    for (long a = 1; a < p; ++a) {
      CHECK(f.mul(a, f.inv(a)) == f.one());
    }
    CHECK(f.from_int(-1) == p - 1);
    CHECK(f.add(p - 1, 1) == 0);
  }
  CHECK_THROWS(FieldFp(6));
  CHECK_THROWS(FieldFp(1));
}

TEST_CASE("matmul kernels agree with serial reference") {
  FieldQ q;
  FieldFp f5(5);
  Rng rng(101);
  for (int it = 0; it < 30; ++it) {
    int a = int(rng.uniform(0, 12)), b = int(rng.uniform(0, 12)), c = int(rng.uniform(0, 12));
    Matrix<FieldQ> A = random_matrix(q, rng, a, b, a * b / 2 + 1);
    Matrix<FieldQ> B = random_matrix(q, rng, b, c, b * c / 2 + 1);
    CHECK(equal(mul(A, B), serial::mul(A, B)));
    Matrix<FieldFp> C = random_matrix(f5, rng, a, b, a * b / 2 + 1);
    Matrix<FieldFp> D = random_matrix(f5, rng, b, c, b * c / 2 + 1);
    CHECK(equal(mul(C, D), serial::mul(C, D)));
  }
}

TEST_CASE("rref kernels agree with serial reference (rref is unique)") {
  FieldQ q;
  FieldFp f3(3);
  Rng rng(202);
  for (int it = 0; it < 40; ++it) {
    int a = int(rng.uniform(0, 10)), b = int(rng.uniform(0, 10));
    Matrix<FieldQ> A = random_matrix(q, rng, a, b, a * b / 2 + 1);
    auto e1 = kernels::rref(A), e2 = serial::rref(A);
    CHECK(e1.rank == e2.rank);
    CHECK(e1.pivot_col == e2.pivot_col);
    CHECK(equal(e1.R, e2.R));
    Matrix<FieldFp> B = random_matrix(f3, rng, a, b, a * b / 2 + 1);
    auto e3 = kernels::rref(B), e4 = serial::rref(B);
    CHECK(e3.rank == e4.rank);
    CHECK(equal(e3.R, e4.R));
  }
}

TEST_CASE("frozen elimination example") {
  FieldQ q;
  // row3 = row1 + row2, so rank 2; kernel basis is canonical from rref
  auto A = from_ints(q, {{1, 0, 2, 1}, {0, 1, 1, -1}, {1, 1, 3, 0}});
  CHECK(rank(A) == 2);
  Matrix<FieldQ> N = nullspace(A);
  REQUIRE(N.nc == 2);
  auto expect = from_ints(q, {{-2, -1}, {-1, 1}, {1, 0}, {0, 1}});
  CHECK(equal(N, expect));
  CHECK(mul(A, N).is_zero());
}

TEST_CASE("nullspace columns span the kernel") {
  FieldFp f7(7);
  Rng rng(303);
  for (int it = 0; it < 25; ++it) {
    int a = int(rng.uniform(1, 8)), b = int(rng.uniform(1, 8));
    Matrix<FieldFp> A = random_matrix(f7, rng, a, b, a * b / 2 + 1);
    Matrix<FieldFp> N = nullspace(A);
    CHECK(mul(A, N).is_zero());
    CHECK(N.nc == b - rank(A));
    CHECK(rank(N) == N.nc);
  }
}

TEST_CASE("solve and certificates") {
  FieldQ q;
  auto A = from_ints(q, {{1, 2}, {3, 4}});
  auto B = from_ints(q, {{5}, {6}});
  auto X = solve(A, B);
  REQUIRE(X.has_value());
  CHECK(equal(mul(A, *X), B));

  // inconsistent: second row contradicts the first
  auto A2 = from_ints(q, {{1, 2}, {2, 4}});
  auto B2 = from_ints(q, {{1}, {3}});
  auto r = solve_full(A2, B2);
  CHECK(!r.X.has_value());
  CHECK(r.bad_row >= 0);
}

TEST_CASE("inverse and factorization helpers") {
  FieldFp f5(5);
  Rng rng(404);
  for (int it = 0; it < 20; ++it) {
    int n = int(rng.uniform(1, 6));
    Matrix<FieldFp> A = random_matrix(f5, rng, n, n, n * n);
    if (!invertible(A)) continue;
    CHECK(mul(A, inverse(A)).is_identity());
  }
  FieldQ q;
  // i injective (3x2), f = i*X0 must factor
  auto i = from_ints(q, {{1, 0}, {0, 1}, {1, 1}});
  auto X0 = from_ints(q, {{2, -1}, {0, 3}});
  auto f = mul(i, X0);
  auto got = factor_through_injection(i, f);
  REQUIRE(got.has_value());
  CHECK(equal(*got, X0));
  // p surjective (2x3), f = X1*p must factor
  auto p = from_ints(q, {{1, 0, 1}, {0, 1, -1}});
  auto X1 = from_ints(q, {{1, 2}, {3, 4}, {0, 1}});
  auto g = mul(X1, p);
  auto got2 = factor_through_surjection(p, g);
  REQUIRE(got2.has_value());
  CHECK(equal(mul(*got2, p), g));
}

TEST_CASE("quotient data") {
  FieldQ q;
  Rng rng(505);
  for (int it = 0; it < 20; ++it) {
    int n = int(rng.uniform(1, 7)), k = int(rng.uniform(0, 4));
    Matrix<FieldQ> W = random_matrix(q, rng, n, k, n * k / 2 + 1);
    auto qd = quotient_by(W);
    CHECK(qd.proj.nr == n - rank(W));
    CHECK(mul(qd.proj, W).is_zero());
    CHECK(mul(qd.proj, qd.sect).is_identity());
  }
}
