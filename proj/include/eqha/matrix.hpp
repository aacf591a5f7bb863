#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eqha/field.hpp"

namespace eqha {

// Dense matrix over a field context F. Entries are stored row-major; the
// field object travels with the matrix so F_p arithmetic knows its modulus.
template <class F>
struct Matrix {
  using E = typename F::Elem;

  F f{};
  int nr = 0, nc = 0;
  std::vector<E> a;

  Matrix() = default;
  Matrix(F fld, int r, int c) : f(fld), nr(r), nc(c), a(size_t(r) * size_t(c), fld.zero()) {}

  E& at(int i, int j) {
    assert(i >= 0 && i < nr && j >= 0 && j < nc);
    return a[size_t(i) * nc + j];
  }
  const E& at(int i, int j) const {
    assert(i >= 0 && i < nr && j >= 0 && j < nc);
    return a[size_t(i) * nc + j];
  }

  static Matrix identity(F fld, int n) {
    Matrix m(fld, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = fld.one();
    return m;
  }

  bool is_zero() const {
    for (const E& x : a)
      if (!f.is_zero(x)) return false;
    return true;
  }
  bool is_identity() const {
    if (nr != nc) return false;
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) {
        const E& x = at(i, j);
        if (i == j ? !f.is_one(x) : !f.is_zero(x)) return false;
      }
    return true;
  }
  int nnz() const {
    int k = 0;
    for (const E& x : a)
      if (!f.is_zero(x)) ++k;
    return k;
  }
};

template <class F>
bool equal(const Matrix<F>& A, const Matrix<F>& B) {
  if (A.nr != B.nr || A.nc != B.nc) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!A.f.eq(A.a[i], B.a[i])) return false;
  return true;
}

template <class F>
Matrix<F> add(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nr == B.nr && A.nc == B.nc);
  Matrix<F> C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.f.add(A.a[i], B.a[i]);
  return C;
}

template <class F>
Matrix<F> sub(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nr == B.nr && A.nc == B.nc);
  Matrix<F> C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.f.sub(A.a[i], B.a[i]);
  return C;
}

template <class F>
Matrix<F> neg(const Matrix<F>& A) {
  Matrix<F> C = A;
  for (auto& x : C.a) x = A.f.neg(x);
  return C;
}

template <class F>
Matrix<F> scale(const typename F::Elem& c, const Matrix<F>& A) {
  Matrix<F> C = A;
  for (auto& x : C.a) x = A.f.mul(c, x);
  return C;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& A) {
  Matrix<F> T(A.f, A.nc, A.nr);
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < A.nc; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nr == B.nr);
  Matrix<F> C(A.f, A.nr, A.nc + B.nc);
  for (int i = 0; i < A.nr; ++i) {
    for (int j = 0; j < A.nc; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.nc; ++j) C.at(i, A.nc + j) = B.at(i, j);
  }
  return C;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nc == B.nc);
  Matrix<F> C(A.f, A.nr + B.nr, A.nc);
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < A.nc; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.nr; ++i)
    for (int j = 0; j < B.nc; ++j) C.at(A.nr + i, j) = B.at(i, j);
  return C;
}

// Parallel kernels. Row-blocked OpenMP with zero-skipping inner loops; exact
// arithmetic makes zero tests cheap relative to multiplies, so skipping pays
// off on the sparse block matrices this library produces.
namespace kernels {

template <class F>
void mul_into(Matrix<F>& C, const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nc == B.nr && C.nr == A.nr && C.nc == B.nc);
  const F& f = A.f;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (A.nr * B.nc > 4096)
#endif
  for (int i = 0; i < A.nr; ++i) {
    for (int k = 0; k < A.nc; ++k) {
      const auto& aik = A.at(i, k);
      if (f.is_zero(aik)) continue;
      for (int j = 0; j < B.nc; ++j) {
        const auto& bkj = B.at(k, j);
        if (f.is_zero(bkj)) continue;
        f.madd(C.at(i, j), aik, bkj);
      }
    }
  }
}

}  // namespace kernels

// Reference kernels: straightforward textbook loops, no skipping, no
// parallelism. Kept as the comparison baseline for tests and the benchmark.
namespace serial {

template <class F>
Matrix<F> mul(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nc == B.nr);
  Matrix<F> C(A.f, A.nr, B.nc);
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < B.nc; ++j) {
      auto acc = A.f.zero();
      for (int k = 0; k < A.nc; ++k) acc = A.f.add(acc, A.f.mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = acc;
    }
  return C;
}

}  // namespace serial

template <class F>
Matrix<F> mul(const Matrix<F>& A, const Matrix<F>& B) {
  Matrix<F> C(A.f, A.nr, B.nc);
  kernels::mul_into(C, A, B);
  return C;
}

}  // namespace eqha
