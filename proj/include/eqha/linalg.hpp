#pragma once

#include <optional>
#include <vector>

#include "eqha/matrix.hpp"

namespace eqha {

template <class F>
struct Echelon {
  Matrix<F> R;                 // reduced row echelon form
  std::vector<int> pivot_col;  // pivot column of row k, k < rank
  int rank = 0;
};

// Gauss-Jordan elimination. Pivot rows are chosen by sparsity (fewest
// nonzeros, unit pivots preferred) to limit fill-in; the reduced form is
// unique, so the choice only affects speed. Row updates run under OpenMP.
namespace kernels {

template <class F>
Echelon<F> rref(Matrix<F> A) {
  const F& f = A.f;
  Echelon<F> e{A, {}, 0};
  Matrix<F>& R = e.R;
  std::vector<int> nnz(R.nr, 0);
  for (int i = 0; i < R.nr; ++i)
    for (int j = 0; j < R.nc; ++j)
      if (!f.is_zero(R.at(i, j))) ++nnz[i];

  int r = 0;
  for (int col = 0; col < R.nc && r < R.nr; ++col) {
    int best = -1;
    long best_score = 0;
    for (int i = r; i < R.nr; ++i) {
      if (f.is_zero(R.at(i, col))) continue;
      long score = 2L * nnz[i] + (f.is_one(R.at(i, col)) ? 0 : 1);
      if (best < 0 || score < best_score) {
        best = i;
        best_score = score;
      }
    }
    if (best < 0) continue;
    if (best != r) {
      for (int j = 0; j < R.nc; ++j) std::swap(R.at(r, j), R.at(best, j));
      std::swap(nnz[r], nnz[best]);
    }
    if (!f.is_one(R.at(r, col))) {
      auto piv_inv = f.inv(R.at(r, col));
      for (int j = col; j < R.nc; ++j)
        if (!f.is_zero(R.at(r, j))) R.at(r, j) = f.mul(piv_inv, R.at(r, j));
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (R.nr > 64)
#endif
    for (int i = 0; i < R.nr; ++i) {
      if (i == r) continue;
      const auto c = R.at(i, col);
      if (f.is_zero(c)) continue;
      int cnt = 0;
      for (int j = col; j < R.nc; ++j) {
        const auto& rv = R.at(r, j);
        if (f.is_zero(rv)) continue;
        auto& x = R.at(i, j);
        bool was = !f.is_zero(x);
        f.msub(x, c, rv);
        bool now = !f.is_zero(x);
        cnt += int(now) - int(was);
      }
      nnz[i] += cnt;
    }
    e.pivot_col.push_back(col);
    ++r;
  }
  e.rank = r;
  return e;
}

}  // namespace kernels

namespace serial {

// Textbook Gauss-Jordan: first nonzero pivot, dense row updates. The reduced
// echelon form is unique, so this must agree entry-for-entry with the
// sparse-pivoting kernel; tests rely on that.
template <class F>
Echelon<F> rref(Matrix<F> A) {
  const F& f = A.f;
  Echelon<F> e{A, {}, 0};
  Matrix<F>& R = e.R;
  int r = 0;
  for (int col = 0; col < R.nc && r < R.nr; ++col) {
    int piv = -1;
    for (int i = r; i < R.nr; ++i)
      if (!f.is_zero(R.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < R.nc; ++j) std::swap(R.at(r, j), R.at(piv, j));
    auto piv_inv = f.inv(R.at(r, col));
    for (int j = 0; j < R.nc; ++j) R.at(r, j) = f.mul(piv_inv, R.at(r, j));
    for (int i = 0; i < R.nr; ++i) {
      if (i == r) continue;
      auto c = R.at(i, col);
      if (f.is_zero(c)) continue;
      for (int j = 0; j < R.nc; ++j) R.at(i, j) = f.sub(R.at(i, j), f.mul(c, R.at(r, j)));
    }
    e.pivot_col.push_back(col);
    ++r;
  }
  e.rank = r;
  return e;
}

}  // namespace serial

template <class F>
Echelon<F> rref(const Matrix<F>& A) {
  return kernels::rref(A);
}

template <class F>
int rank(const Matrix<F>& A) {
  return rref(A).rank;
}

// Columns form a canonical basis of ker(A).
template <class F>
Matrix<F> nullspace(const Matrix<F>& A) {
  Echelon<F> e = rref(A);
  std::vector<bool> is_pivot(A.nc, false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  Matrix<F> K(A.f, A.nc, A.nc - e.rank);
  int kcol = 0;
  for (int j = 0; j < A.nc; ++j) {
    if (is_pivot[j]) continue;
    K.at(j, kcol) = A.f.one();
    for (int k = 0; k < e.rank; ++k) K.at(e.pivot_col[k], kcol) = A.f.neg(e.R.at(k, j));
    ++kcol;
  }
  return K;
}

template <class F>
struct SolveResult {
  std::optional<Matrix<F>> X;
  int bad_row = -1;  // echelon row witnessing inconsistency (0 = nonzero)
};

// Solve A X = B for X (one particular solution), all columns at once.
template <class F>
SolveResult<F> solve_full(const Matrix<F>& A, const Matrix<F>& B) {
  assert(A.nr == B.nr);
  Echelon<F> e = rref(hstack(A, B));
  for (int k = 0; k < e.rank; ++k)
    if (e.pivot_col[k] >= A.nc) return {std::nullopt, k};
  Matrix<F> X(A.f, A.nc, B.nc);
  for (int k = 0; k < e.rank; ++k)
    for (int b = 0; b < B.nc; ++b) X.at(e.pivot_col[k], b) = e.R.at(k, A.nc + b);
  return {X, -1};
}

template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& A, const Matrix<F>& B) {
  return solve_full(A, B).X;
}

template <class F>
bool invertible(const Matrix<F>& A) {
  return A.nr == A.nc && rank(A) == A.nr;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& A) {
  assert(A.nr == A.nc);
  auto r = solve(A, Matrix<F>::identity(A.f, A.nr));
  assert(r && "matrix not invertible");
  return *r;
}

// X with i X = f, where i is injective (f must land in the image).
template <class F>
std::optional<Matrix<F>> factor_through_injection(const Matrix<F>& i, const Matrix<F>& f) {
  return solve(i, f);
}

// X with X p = f, where p is surjective (f must kill ker p).
template <class F>
std::optional<Matrix<F>> factor_through_surjection(const Matrix<F>& p, const Matrix<F>& f) {
  auto Xt = solve(transpose(p), transpose(f));
  if (!Xt) return std::nullopt;
  return transpose(*Xt);
}

// Quotient of F^n by the column span of W: proj (q x n) and a section
// sect (n x q) with proj*sect = id and ker(proj) = span(W).
template <class F>
struct QuotientData {
  Matrix<F> proj;
  Matrix<F> sect;
};

template <class F>
QuotientData<F> quotient_by(const Matrix<F>& W) {
  const F& f = W.f;
  int n = W.nr;
  Echelon<F> e = rref(transpose(W));
  std::vector<bool> is_pivot(n, false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  std::vector<int> free_idx;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_idx.push_back(j);
  int q = int(free_idx.size());
  Matrix<F> proj(f, q, n), sect(f, n, q);
  for (int j = 0; j < q; ++j) {
    proj.at(j, free_idx[j]) = f.one();
    sect.at(free_idx[j], j) = f.one();
  }
  for (int k = 0; k < e.rank; ++k)
    for (int j = 0; j < q; ++j) proj.at(j, e.pivot_col[k]) = f.neg(e.R.at(k, free_idx[j]));
  return {proj, sect};
}

}  // namespace eqha
