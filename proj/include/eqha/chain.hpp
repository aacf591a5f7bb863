#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqha/linalg.hpp"

namespace eqha {

// Bounded chain complex of finite dimensional vector spaces over F, with a
// chosen basis in every degree. Support is the closed interval [lo, hi]
// (empty when hi < lo); dims and differentials are indexed relative to lo.
template <class F>
struct ChainComplex {
  F f{};
  int lo = 0, hi = -1;
  std::vector<int> dims;          // dims[n - lo]
  std::vector<Matrix<F>> dif;     // dif[n - lo] : C_n -> C_{n-1}

  int dim(int n) const { return (n < lo || n > hi) ? 0 : dims[n - lo]; }

  Matrix<F> d(int n) const {
    if (n < lo || n > hi) return Matrix<F>(f, dim(n - 1), dim(n));
    return dif[n - lo];
  }

  int total_dim() const {
    int t = 0;
    for (int v : dims) t += v;
    return t;
  }

  static ChainComplex zero(F f) { return ChainComplex{f, 0, -1, {}, {}}; }

  static ChainComplex concentrated(F f, int n, int dim) {
    ChainComplex C{f, n, n, {dim}, {}};
    C.dif.push_back(Matrix<F>(f, 0, dim));
    return C;
  }

  void validate() const {
    if (hi < lo) return;
    if (int(dims.size()) != hi - lo + 1 || dif.size() != dims.size())
      throw std::logic_error("chain complex: ragged storage");
    for (int n = lo; n <= hi; ++n) {
      const Matrix<F>& m = dif[n - lo];
      if (m.nr != dim(n - 1) || m.nc != dim(n))
        throw std::logic_error("chain complex: differential shape at degree " + std::to_string(n));
    }
    for (int n = lo + 1; n <= hi; ++n)
      if (!mul(d(n - 1), d(n)).is_zero())
        throw std::logic_error("chain complex: d^2 != 0 at degree " + std::to_string(n));
  }
};

template <class F>
ChainComplex<F> make_complex(F f, int lo, std::vector<int> dims, std::vector<Matrix<F>> dif) {
  ChainComplex<F> C{f, lo, lo + int(dims.size()) - 1, std::move(dims), std::move(dif)};
  C.validate();
  return C;
}

// Drop zero degrees from the ends of the support.
template <class F>
ChainComplex<F> trim(const ChainComplex<F>& C) {
  int lo = C.lo, hi = C.hi;
  while (lo <= hi && C.dim(lo) == 0) ++lo;
  while (hi >= lo && C.dim(hi) == 0) --hi;
  if (hi < lo) return ChainComplex<F>::zero(C.f);
  ChainComplex<F> T{C.f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) {
    T.dims.push_back(C.dim(n));
    T.dif.push_back(C.d(n));
  }
  if (!T.dif.empty()) T.dif[0] = Matrix<F>(C.f, 0, T.dims[0]);
  return T;
}

template <class F>
bool equal_complex(const ChainComplex<F>& A, const ChainComplex<F>& B) {
  if (!A.f.same(B.f)) return false;
  int lo = std::min(A.lo, B.lo), hi = std::max(A.hi, B.hi);
  for (int n = lo; n <= hi; ++n) {
    if (A.dim(n) != B.dim(n)) return false;
    if (!equal(A.d(n), B.d(n))) return false;
  }
  return true;
}

// Graded linear map of fixed degree: src_n -> dst_{n+deg}. Chain maps are
// the validated degree-0 case below.
template <class F>
struct GradedMap {
  ChainComplex<F> src, dst;
  int deg = 0;
  std::map<int, Matrix<F>> comp;

  Matrix<F> at(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    return Matrix<F>(src.f, dst.dim(n + deg), src.dim(n));
  }
  void set(int n, Matrix<F> m) {
    if (m.nr != dst.dim(n + deg) || m.nc != src.dim(n))
      throw std::logic_error("graded map: component shape at degree " + std::to_string(n));
    if (m.nr == 0 || m.nc == 0) return;
    comp[n] = std::move(m);
  }
  bool is_zero() const {
    for (auto& [n, m] : comp)
      if (!m.is_zero()) return false;
    return true;
  }
};

template <class F>
struct ChainMap {
  ChainComplex<F> src, dst;
  std::map<int, Matrix<F>> comp;

  Matrix<F> at(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    return Matrix<F>(src.f, dst.dim(n), src.dim(n));
  }
  void set(int n, Matrix<F> m) {
    if (m.nr != dst.dim(n) || m.nc != src.dim(n))
      throw std::logic_error("chain map: component shape at degree " + std::to_string(n));
    if (m.nr == 0 || m.nc == 0) return;
    comp[n] = std::move(m);
  }

  void validate() const {
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    for (auto& [n, m] : comp)
      if (m.nr != dst.dim(n) || m.nc != src.dim(n))
        throw std::logic_error("chain map: component shape at degree " + std::to_string(n));
    for (int n = lo; n <= hi + 1; ++n)
      if (!equal(mul(dst.d(n), at(n)), mul(at(n - 1), src.d(n))))
        throw std::logic_error("chain map: does not commute with d at degree " + std::to_string(n));
  }

  bool is_chain_map() const {
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    for (int n = lo; n <= hi + 1; ++n)
      if (!equal(mul(dst.d(n), at(n)), mul(at(n - 1), src.d(n)))) return false;
    return true;
  }
};

template <class F, class Fn>
ChainMap<F> chain_map_from(const ChainComplex<F>& src, const ChainComplex<F>& dst, Fn&& fn) {
  ChainMap<F> m{src, dst, {}};
  int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
  for (int n = lo; n <= hi; ++n)
    if (src.dim(n) > 0 && dst.dim(n) > 0) m.set(n, fn(n));
  return m;
}

template <class F>
ChainMap<F> identity_map(const ChainComplex<F>& C) {
  return chain_map_from(C, C, [&](int n) { return Matrix<F>::identity(C.f, C.dim(n)); });
}

template <class F>
GradedMap<F> graded_identity(const ChainComplex<F>& C) {
  GradedMap<F> g{C, C, 0, {}};
  for (int n = C.lo; n <= C.hi; ++n)
    if (C.dim(n) > 0) g.set(n, Matrix<F>::identity(C.f, C.dim(n)));
  return g;
}

// g∘f for graded g after degree-0 f.
template <class F>
GradedMap<F> compose_gc(const GradedMap<F>& g, const ChainMap<F>& fm) {
  GradedMap<F> out{fm.src, g.dst, g.deg, {}};
  for (int n = fm.src.lo; n <= fm.src.hi; ++n) {
    Matrix<F> m = mul(g.at(n), fm.at(n));
    if (m.nr > 0 && m.nc > 0) out.set(n, m);
  }
  return out;
}

// f∘g for degree-0 f after graded g.
template <class F>
GradedMap<F> compose_cg(const ChainMap<F>& fm, const GradedMap<F>& g) {
  GradedMap<F> out{g.src, fm.dst, g.deg, {}};
  for (int n = g.src.lo; n <= g.src.hi; ++n) {
    Matrix<F> m = mul(fm.at(n + g.deg), g.at(n));
    if (m.nr > 0 && m.nc > 0) out.set(n, m);
  }
  return out;
}

// g2∘g1 for graded maps; degrees add.
template <class F>
GradedMap<F> compose_graded(const GradedMap<F>& g2, const GradedMap<F>& g1) {
  GradedMap<F> out{g1.src, g2.dst, g1.deg + g2.deg, {}};
  for (int n = g1.src.lo; n <= g1.src.hi; ++n) {
    Matrix<F> m = mul(g2.at(n + g1.deg), g1.at(n));
    if (m.nr > 0 && m.nc > 0) out.set(n, m);
  }
  return out;
}

template <class F>
GradedMap<F> scale_graded(const typename F::Elem& c, const GradedMap<F>& g) {
  GradedMap<F> out{g.src, g.dst, g.deg, {}};
  for (auto& [n, m] : g.comp) out.set(n, scale(c, m));
  return out;
}

template <class F>
bool equal_graded(const GradedMap<F>& a, const GradedMap<F>& b) {
  if (a.deg != b.deg) return false;
  int lo = std::min(a.src.lo, b.src.lo), hi = std::max(a.src.hi, b.src.hi);
  for (int n = lo; n <= hi; ++n)
    if (!equal(a.at(n), b.at(n))) return false;
  return true;
}

template <class F>
bool degreewise_surjective(const ChainMap<F>& fm) {
  int lo = std::min(fm.src.lo, fm.dst.lo), hi = std::max(fm.src.hi, fm.dst.hi);
  for (int n = lo; n <= hi; ++n)
    if (rank(fm.at(n)) != fm.dst.dim(n)) return false;
  return true;
}

template <class F>
bool degreewise_iso(const ChainMap<F>& fm) {
  int lo = std::min(fm.src.lo, fm.dst.lo), hi = std::max(fm.src.hi, fm.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    if (fm.src.dim(n) != fm.dst.dim(n)) return false;
    if (fm.src.dim(n) > 0 && !invertible(fm.at(n))) return false;
  }
  return true;
}

template <class F>
ChainMap<F> zero_map(const ChainComplex<F>& src, const ChainComplex<F>& dst) {
  return ChainMap<F>{src, dst, {}};
}

template <class F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
  return chain_map_from(f.src, g.dst, [&](int n) { return mul(g.at(n), f.at(n)); });
}

template <class F>
ChainMap<F> add_maps(const ChainMap<F>& a, const ChainMap<F>& b) {
  return chain_map_from(a.src, a.dst, [&](int n) { return add(a.at(n), b.at(n)); });
}

template <class F>
ChainMap<F> sub_maps(const ChainMap<F>& a, const ChainMap<F>& b) {
  return chain_map_from(a.src, a.dst, [&](int n) { return sub(a.at(n), b.at(n)); });
}

template <class F>
ChainMap<F> scale_map(const typename F::Elem& c, const ChainMap<F>& a) {
  return chain_map_from(a.src, a.dst, [&](int n) { return scale(c, a.at(n)); });
}

template <class F>
bool equal_maps(const ChainMap<F>& a, const ChainMap<F>& b) {
  int lo = std::min(a.src.lo, b.src.lo), hi = std::max(a.src.hi, b.src.hi);
  lo = std::min(lo, std::min(a.dst.lo, b.dst.lo));
  hi = std::max(hi, std::max(a.dst.hi, b.dst.hi));
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> ma = a.at(n), mb = b.at(n);
    if (ma.nr != mb.nr || ma.nc != mb.nc) return false;
    if (!equal(ma, mb)) return false;
  }
  return true;
}

template <class F>
bool is_identity_map(const ChainMap<F>& a) {
  if (!equal_complex(a.src, a.dst)) return false;
  int lo = std::min(a.src.lo, a.dst.lo), hi = std::max(a.src.hi, a.dst.hi);
  for (int n = lo; n <= hi; ++n)
    if (!equal(a.at(n), Matrix<F>::identity(a.src.f, a.src.dim(n)))) return false;
  return true;
}

template <class F>
bool is_degreewise_iso(const ChainMap<F>& a) {
  int lo = std::min(a.src.lo, a.dst.lo), hi = std::max(a.src.hi, a.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    if (a.src.dim(n) != a.dst.dim(n)) return false;
    if (!invertible(a.at(n))) return false;
  }
  return true;
}

template <class F>
bool is_degreewise_epi(const ChainMap<F>& a) {
  int lo = std::min(a.src.lo, a.dst.lo), hi = std::max(a.src.hi, a.dst.hi);
  for (int n = lo; n <= hi; ++n)
    if (rank(a.at(n)) != a.dst.dim(n)) return false;
  return true;
}

template <class F>
bool is_degreewise_mono(const ChainMap<F>& a) {
  int lo = std::min(a.src.lo, a.dst.lo), hi = std::max(a.src.hi, a.dst.hi);
  for (int n = lo; n <= hi; ++n)
    if (rank(a.at(n)) != a.src.dim(n)) return false;
  return true;
}

template <class F>
ChainMap<F> inverse_map(const ChainMap<F>& a) {
  return chain_map_from(a.dst, a.src, [&](int n) { return inverse(a.at(n)); });
}

// Carrier for a verified isomorphism: both composites must be identities.
template <class F>
struct IsoWitness {
  ChainMap<F> fwd, bwd;

  bool verify() const {
    return fwd.is_chain_map() && bwd.is_chain_map() &&
           is_identity_map(compose(bwd, fwd)) && is_identity_map(compose(fwd, bwd));
  }
};

// --- spheres and disks -----------------------------------------------------

// S^n: one copy of the ground field in degree n.
template <class F>
ChainComplex<F> sphere(F f, int n) {
  return ChainComplex<F>::concentrated(f, n, 1);
}

// D^n: identity differential from degree n to n-1.
template <class F>
ChainComplex<F> disk(F f, int n) {
  ChainComplex<F> C{f, n - 1, n, {1, 1}, {}};
  C.dif.push_back(Matrix<F>(f, 0, 1));
  C.dif.push_back(Matrix<F>::identity(f, 1));
  return C;
}

// S^{n-1} -> D^n, the boundary inclusion.
template <class F>
ChainMap<F> sphere_to_disk(F f, int n) {
  ChainMap<F> m{sphere(f, n - 1), disk(f, n), {}};
  m.set(n - 1, Matrix<F>::identity(f, 1));
  return m;
}

// --- direct sums ------------------------------------------------------------

template <class F>
struct SumData {
  ChainComplex<F> total;
  ChainMap<F> incl_a, incl_b, proj_a, proj_b;
};

template <class F>
SumData<F> direct_sum(const ChainComplex<F>& A, const ChainComplex<F>& B) {
  const F& f = A.f;
  int lo = std::min(A.lo, B.lo), hi = std::max(A.hi, B.hi);
  if (A.hi < A.lo) lo = B.lo, hi = B.hi;
  if (B.hi < B.lo) lo = A.lo, hi = A.hi;
  if (A.hi < A.lo && B.hi < B.lo) {
    ChainComplex<F> Z = ChainComplex<F>::zero(f);
    return {Z, zero_map(A, Z), zero_map(B, Z), zero_map(Z, A), zero_map(Z, B)};
  }
  ChainComplex<F> T{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) {
    int da = A.dim(n), db = B.dim(n);
    T.dims.push_back(da + db);
  }
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> D(f, T.dim(n - 1), T.dim(n));
    Matrix<F> dA = A.d(n), dB = B.d(n);
    for (int i = 0; i < dA.nr; ++i)
      for (int j = 0; j < dA.nc; ++j) D.at(i, j) = dA.at(i, j);
    for (int i = 0; i < dB.nr; ++i)
      for (int j = 0; j < dB.nc; ++j) D.at(A.dim(n - 1) + i, A.dim(n) + j) = dB.at(i, j);
    T.dif.push_back(std::move(D));
  }
  SumData<F> out{T, {A, T, {}}, {B, T, {}}, {T, A, {}}, {T, B, {}}};
  for (int n = lo; n <= hi; ++n) {
    int da = A.dim(n), db = B.dim(n);
    if (da > 0) {
      Matrix<F> ia(f, da + db, da), pa(f, da, da + db);
      for (int i = 0; i < da; ++i) ia.at(i, i) = f.one(), pa.at(i, i) = f.one();
      out.incl_a.set(n, ia);
      out.proj_a.set(n, pa);
    }
    if (db > 0) {
      Matrix<F> ib(f, da + db, db), pb(f, db, da + db);
      for (int i = 0; i < db; ++i) ib.at(da + i, i) = f.one(), pb.at(i, da + i) = f.one();
      out.incl_b.set(n, ib);
      out.proj_b.set(n, pb);
    }
  }
  return out;
}

// --- tensor and hom ---------------------------------------------------------

struct TensorIdx {
  int deg_a;  // degree in the first factor; second factor degree = n - deg_a
  int a, b;   // basis indices in the two factors
};

template <class F>
std::vector<TensorIdx> tensor_basis(const ChainComplex<F>& A, const ChainComplex<F>& B, int n) {
  std::vector<TensorIdx> out;
  for (int i = A.lo; i <= A.hi; ++i) {
    int j = n - i;
    if (A.dim(i) == 0 || B.dim(j) == 0) continue;
    for (int a = 0; a < A.dim(i); ++a)
      for (int b = 0; b < B.dim(j); ++b) out.push_back({i, a, b});
  }
  return out;
}

template <class F>
int tensor_pos(const ChainComplex<F>& A, const ChainComplex<F>& B, int n, int deg_a, int a, int b) {
  int pos = 0;
  for (int i = A.lo; i < deg_a; ++i) {
    int j = n - i;
    pos += A.dim(i) * B.dim(j);
  }
  return pos + a * B.dim(n - deg_a) + b;
}

// d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy
template <class F>
ChainComplex<F> tensor_complex(const ChainComplex<F>& A, const ChainComplex<F>& B) {
  const F& f = A.f;
  if (A.hi < A.lo || B.hi < B.lo) return ChainComplex<F>::zero(f);
  int lo = A.lo + B.lo, hi = A.hi + B.hi;
  ChainComplex<F> T{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) T.dims.push_back(int(tensor_basis(A, B, n).size()));
  for (int n = lo; n <= hi; ++n) {
    auto cols = tensor_basis(A, B, n);
    Matrix<F> D(f, T.dim(n - 1), int(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [i, a, b] = cols[c];
      int j = n - i;
      Matrix<F> dA = A.d(i);
      for (int r = 0; r < dA.nr; ++r) {
        if (f.is_zero(dA.at(r, a))) continue;
        D.at(tensor_pos(A, B, n - 1, i - 1, r, b), int(c)) = dA.at(r, a);
      }
      Matrix<F> dB = B.d(j);
      for (int r = 0; r < dB.nr; ++r) {
        if (f.is_zero(dB.at(r, b))) continue;
        auto v = dB.at(r, b);
        if (i % 2 != 0) v = f.neg(v);
        D.at(tensor_pos(A, B, n - 1, i, a, r), int(c)) = v;
      }
    }
    T.dif.push_back(std::move(D));
  }
  return T;
}

// (f⊗g) on tensor complexes for degree-0 maps (no Koszul sign needed).
template <class F>
ChainMap<F> tensor_map(const ChainMap<F>& fm, const ChainMap<F>& gm) {
  ChainComplex<F> S = tensor_complex(fm.src, gm.src);
  ChainComplex<F> D = tensor_complex(fm.dst, gm.dst);
  const F& f = S.f;
  ChainMap<F> out{S, D, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || D.dim(n) == 0) continue;
    auto cols = tensor_basis(fm.src, gm.src, n);
    Matrix<F> M(f, D.dim(n), S.dim(n));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [i, a, b] = cols[c];
      Matrix<F> Fa = fm.at(i), Gb = gm.at(n - i);
      for (int r = 0; r < Fa.nr; ++r) {
        if (f.is_zero(Fa.at(r, a))) continue;
        for (int s = 0; s < Gb.nr; ++s) {
          if (f.is_zero(Gb.at(s, b))) continue;
          M.at(tensor_pos(fm.dst, gm.dst, n, i, r, s), int(c)) = f.mul(Fa.at(r, a), Gb.at(s, b));
        }
      }
    }
    out.set(n, std::move(M));
  }
  return out;
}

// (a⊗b) for graded maps, with the Koszul sign (-1)^{|b|·|x|} on x⊗y.
template <class F>
GradedMap<F> tensor_map_graded(const GradedMap<F>& am, const GradedMap<F>& bm) {
  ChainComplex<F> S = tensor_complex(am.src, bm.src);
  ChainComplex<F> D = tensor_complex(am.dst, bm.dst);
  const F& f = S.f;
  int deg = am.deg + bm.deg;
  GradedMap<F> out{S, D, deg, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || D.dim(n + deg) == 0) continue;
    auto cols = tensor_basis(am.src, bm.src, n);
    Matrix<F> M(f, D.dim(n + deg), S.dim(n));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [i, a, b] = cols[c];
      Matrix<F> Fa = am.at(i), Gb = bm.at(n - i);
      bool flip = (bm.deg % 2 != 0) && (i % 2 != 0);
      for (int r = 0; r < Fa.nr; ++r) {
        if (f.is_zero(Fa.at(r, a))) continue;
        for (int s = 0; s < Gb.nr; ++s) {
          if (f.is_zero(Gb.at(s, b))) continue;
          auto v = f.mul(Fa.at(r, a), Gb.at(s, b));
          if (flip) v = f.neg(v);
          M.at(tensor_pos(am.dst, bm.dst, n + deg, i + am.deg, r, s), int(c)) = v;
        }
      }
    }
    out.set(n, std::move(M));
  }
  return out;
}

struct HomIdx {
  int k;  // source degree; the elementary map sends A_k -> B_{k+n}
  int j;  // source basis index
  int i;  // target basis index
};

template <class F>
std::vector<HomIdx> hom_basis(const ChainComplex<F>& A, const ChainComplex<F>& B, int n) {
  std::vector<HomIdx> out;
  for (int k = A.lo; k <= A.hi; ++k) {
    if (A.dim(k) == 0 || B.dim(k + n) == 0) continue;
    for (int j = 0; j < A.dim(k); ++j)
      for (int i = 0; i < B.dim(k + n); ++i) out.push_back({k, j, i});
  }
  return out;
}

template <class F>
int hom_pos(const ChainComplex<F>& A, const ChainComplex<F>& B, int n, int k, int j, int i) {
  int pos = 0;
  for (int kk = A.lo; kk < k; ++kk) pos += A.dim(kk) * B.dim(kk + n);
  return pos + j * B.dim(k + n) + i;
}

// hom(A,B)_n = prod_k Hom(A_k, B_{k+n}); d(φ) = d_B φ - (-1)^n φ d_A.
template <class F>
ChainComplex<F> hom_complex(const ChainComplex<F>& A, const ChainComplex<F>& B) {
  const F& f = A.f;
  if (A.hi < A.lo || B.hi < B.lo) return ChainComplex<F>::zero(f);
  int lo = B.lo - A.hi, hi = B.hi - A.lo;
  ChainComplex<F> H{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) H.dims.push_back(int(hom_basis(A, B, n).size()));
  for (int n = lo; n <= hi; ++n) {
    auto cols = hom_basis(A, B, n);
    Matrix<F> D(f, H.dim(n - 1), int(cols.size()));
    bool flip = (n % 2 != 0);
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      // d_B ∘ E_{ij}
      Matrix<F> dB = B.d(k + n);
      for (int r = 0; r < dB.nr; ++r) {
        if (f.is_zero(dB.at(r, i))) continue;
        D.at(hom_pos(A, B, n - 1, k, j, r), int(c)) =
            f.add(D.at(hom_pos(A, B, n - 1, k, j, r), int(c)), dB.at(r, i));
      }
      // -(-1)^n E_{ij} ∘ d_A : contributes at source degree k+1
      Matrix<F> dA = A.d(k + 1);
      for (int s = 0; s < dA.nc; ++s) {
        if (f.is_zero(dA.at(j, s))) continue;
        auto v = dA.at(j, s);
        if (!flip) v = f.neg(v);
        int row = hom_pos(A, B, n - 1, k + 1, s, i);
        D.at(row, int(c)) = f.add(D.at(row, int(c)), v);
      }
    }
    H.dif.push_back(std::move(D));
  }
  return H;
}

// Flatten a graded map into its coordinate vector inside hom_complex(A,B).
template <class F>
Matrix<F> hom_vector(const ChainComplex<F>& A, const ChainComplex<F>& B, const GradedMap<F>& g) {
  const F& f = A.f;
  auto basis = hom_basis(A, B, g.deg);
  Matrix<F> v(f, int(basis.size()), 1);
  for (size_t r = 0; r < basis.size(); ++r) {
    auto [k, j, i] = basis[r];
    v.at(int(r), 0) = g.at(k).at(i, j);
  }
  return v;
}

template <class F>
GradedMap<F> hom_unvector(const ChainComplex<F>& A, const ChainComplex<F>& B, int n,
                          const Matrix<F>& col, int which = 0) {
  GradedMap<F> g{A, B, n, {}};
  auto basis = hom_basis(A, B, n);
  for (int k = A.lo; k <= A.hi; ++k) {
    if (A.dim(k) == 0 || B.dim(k + n) == 0) continue;
    Matrix<F> m(A.f, B.dim(k + n), A.dim(k));
    g.comp[k] = m;
  }
  for (size_t r = 0; r < basis.size(); ++r) {
    auto [k, j, i] = basis[r];
    g.comp[k].at(i, j) = col.at(int(r), which);
  }
  return g;
}

// hom(A, θ): post-composition on hom complexes, φ ↦ θ∘φ (θ degree 0, no signs).
template <class F>
ChainMap<F> hom_post(const ChainComplex<F>& A, const ChainMap<F>& theta) {
  const F& f = A.f;
  ChainComplex<F> S = hom_complex(A, theta.src);
  ChainComplex<F> D = hom_complex(A, theta.dst);
  ChainMap<F> out{S, D, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || D.dim(n) == 0) continue;
    auto cols = hom_basis(A, theta.src, n);
    Matrix<F> M(f, D.dim(n), S.dim(n));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      Matrix<F> t = theta.at(k + n);
      for (int r = 0; r < t.nr; ++r)
        if (!f.is_zero(t.at(r, i))) M.at(hom_pos(A, theta.dst, n, k, j, r), int(c)) = t.at(r, i);
    }
    out.set(n, std::move(M));
  }
  return out;
}

// hom(θ, B): pre-composition on hom complexes, φ ↦ φ∘θ (θ degree 0, no signs).
template <class F>
ChainMap<F> hom_pre(const ChainMap<F>& theta, const ChainComplex<F>& B) {
  const F& f = B.f;
  ChainComplex<F> S = hom_complex(theta.dst, B);
  ChainComplex<F> D = hom_complex(theta.src, B);
  ChainMap<F> out{S, D, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || D.dim(n) == 0) continue;
    auto cols = hom_basis(theta.dst, B, n);
    Matrix<F> M(f, D.dim(n), S.dim(n));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      Matrix<F> t = theta.at(k);
      for (int s = 0; s < t.nc; ++s)
        if (!f.is_zero(t.at(j, s))) M.at(hom_pos(theta.src, B, n, k, s, i), int(c)) = t.at(j, s);
    }
    out.set(n, std::move(M));
  }
  return out;
}

// Degreewise linear section of a degreewise-surjective chain map (not a
// chain map itself in general).
template <class F>
GradedMap<F> section_of(const ChainMap<F>& proj) {
  const ChainComplex<F>& Q = proj.dst;
  GradedMap<F> s{Q, proj.src, 0, {}};
  for (int n = Q.lo; n <= Q.hi; ++n) {
    if (Q.dim(n) == 0) continue;
    auto X = solve(proj.at(n), Matrix<F>::identity(Q.f, Q.dim(n)));
    if (!X) throw std::logic_error("section_of: map is not degreewise surjective");
    s.set(n, *X);
  }
  return s;
}

template <class F>
bool square_commutes(const ChainMap<F>& top, const ChainMap<F>& bottom, const ChainMap<F>& left,
                     const ChainMap<F>& right) {
  return equal_maps(compose(bottom, left), compose(right, top));
}

// Given t: A -> B and inclusions iA: A' ↪ A, iB: B' ↪ B with t(A') ⊆ B',
// the induced map A' -> B' (throws if the image is not contained in B').
template <class F>
ChainMap<F> restrict_map(const ChainMap<F>& t, const ChainMap<F>& iA, const ChainMap<F>& iB) {
  return chain_map_from(iA.src, iB.src, [&](int n) {
    auto X = solve(iB.at(n), mul(t.at(n), iA.at(n)));
    if (!X) throw std::logic_error("restrict_map: image not contained in subcomplex");
    return *X;
  });
}

// --- homology ---------------------------------------------------------------

template <class F>
std::map<int, int> homology_dims(const ChainComplex<F>& C) {
  std::map<int, int> h;
  for (int n = C.lo; n <= C.hi; ++n) {
    int cycles = C.dim(n) - rank(C.d(n));
    int boundaries = rank(C.d(n + 1));
    h[n] = cycles - boundaries;
  }
  return h;
}

template <class F>
bool acyclic(const ChainComplex<F>& C) {
  for (auto& [n, h] : homology_dims(C))
    if (h != 0) return false;
  return true;
}

// Cycles plus the projection to homology classes, per degree.
template <class F>
struct HomologyData {
  ChainComplex<F> C;
  std::map<int, Matrix<F>> cycles;  // columns: basis of Z_n
  std::map<int, Matrix<F>> proj;    // H_n-coords of each cycle-basis column
  std::map<int, int> dims;
};

template <class F>
HomologyData<F> homology_data(const ChainComplex<F>& C) {
  HomologyData<F> H;
  H.C = C;
  for (int n = C.lo; n <= C.hi; ++n) {
    Matrix<F> Z = nullspace(C.d(n));
    // boundaries in cycle coordinates
    Matrix<F> B = C.d(n + 1);
    auto Bc = solve(Z, B);
    if (!Bc) throw std::logic_error("homology: boundaries not inside cycles");
    QuotientData<F> q = quotient_by(*Bc);
    H.cycles[n] = Z;
    H.proj[n] = q.proj;
    H.dims[n] = q.proj.nr;
  }
  return H;
}

// Matrix of H_n(f) with respect to the homology_data bases.
template <class F>
Matrix<F> induced_on_homology(const ChainMap<F>& fm, const HomologyData<F>& HS,
                              const HomologyData<F>& HD, int n) {
  const F& f = fm.src.f;
  auto zs = HS.cycles.count(n) ? HS.cycles.at(n) : Matrix<F>(f, fm.src.dim(n), 0);
  auto zd = HD.cycles.count(n) ? HD.cycles.at(n) : Matrix<F>(f, fm.dst.dim(n), 0);
  auto ps = HS.proj.count(n) ? HS.proj.at(n) : Matrix<F>(f, 0, 0);
  auto pd = HD.proj.count(n) ? HD.proj.at(n) : Matrix<F>(f, 0, 0);
  Matrix<F> img = mul(fm.at(n), zs);
  auto coords = solve(zd, img);
  if (!coords) throw std::logic_error("induced_on_homology: image not in cycles");
  return mul(pd, *coords);  // (dim H_n(dst)) x (cycle count src); compose with ps section below
}

// Induced map on homology as H_n(src)-by-H_n(dst) matrix; needs a section of
// the source projection, built from pivot cycles.
template <class F>
Matrix<F> homology_map(const ChainMap<F>& fm, const HomologyData<F>& HS, const HomologyData<F>& HD,
                       int n) {
  const F& f = fm.src.f;
  Matrix<F> ps = HS.proj.count(n) ? HS.proj.at(n) : Matrix<F>(f, 0, 0);
  // section: solve ps * s = id
  if (ps.nr == 0) return Matrix<F>(f, HD.dims.count(n) ? HD.dims.at(n) : 0, 0);
  auto s = solve(ps, Matrix<F>::identity(f, ps.nr));
  if (!s) throw std::logic_error("homology_map: projection not surjective");
  Matrix<F> full = induced_on_homology(fm, HS, HD, n);
  return mul(full, *s);
}

// --- cone and quasi-isomorphism ----------------------------------------------

// Cone(f)_n = dst_n ⊕ src_{n-1}, d(y,x) = (dy + fx, -dx).
template <class F>
ChainComplex<F> cone(const ChainMap<F>& fm) {
  const F& f = fm.src.f;
  int lo = std::min(fm.dst.lo, fm.src.lo + 1), hi = std::max(fm.dst.hi, fm.src.hi + 1);
  if (fm.src.hi < fm.src.lo) {
    lo = fm.dst.lo;
    hi = fm.dst.hi;
  }
  if (fm.dst.hi < fm.dst.lo) {
    lo = fm.src.lo + 1;
    hi = fm.src.hi + 1;
  }
  if (fm.src.hi < fm.src.lo && fm.dst.hi < fm.dst.lo) return ChainComplex<F>::zero(f);
  ChainComplex<F> C{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) C.dims.push_back(fm.dst.dim(n) + fm.src.dim(n - 1));
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> D(f, C.dim(n - 1), C.dim(n));
    Matrix<F> dd = fm.dst.d(n), ds = fm.src.d(n - 1), fx = fm.at(n - 1);
    for (int i = 0; i < dd.nr; ++i)
      for (int j = 0; j < dd.nc; ++j) D.at(i, j) = dd.at(i, j);
    for (int i = 0; i < fx.nr; ++i)
      for (int j = 0; j < fx.nc; ++j) D.at(i, fm.dst.dim(n) + j) = fx.at(i, j);
    for (int i = 0; i < ds.nr; ++i)
      for (int j = 0; j < ds.nc; ++j) D.at(fm.dst.dim(n - 1) + i, fm.dst.dim(n) + j) = f.neg(ds.at(i, j));
    C.dif.push_back(std::move(D));
  }
  return C;
}

template <class F>
bool quasi_iso(const ChainMap<F>& fm) {
  return acyclic(cone(fm));
}

// Independent route: compute H_*(f) directly and test it is bijective.
template <class F>
bool quasi_iso_homology_oracle(const ChainMap<F>& fm) {
  HomologyData<F> HS = homology_data(fm.src), HD = homology_data(fm.dst);
  int lo = std::min(fm.src.lo, fm.dst.lo), hi = std::max(fm.src.hi, fm.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    int hs = HS.dims.count(n) ? HS.dims.at(n) : 0;
    int hd = HD.dims.count(n) ? HD.dims.at(n) : 0;
    if (hs != hd) return false;
    if (hs == 0) continue;
    Matrix<F> m = homology_map(fm, HS, HD, n);
    if (!invertible(m)) return false;
  }
  return true;
}

// --- (co)kernels, (co)equalizers ---------------------------------------------

template <class F>
struct SubComplex {
  ChainComplex<F> cx;
  ChainMap<F> incl;
};

template <class F>
struct QuotComplex {
  ChainComplex<F> cx;
  ChainMap<F> proj;
};

// Degreewise kernel with the induced differential; incl is the canonical
// inclusion (a chain map; kernels of chain maps are subcomplexes).
template <class F>
SubComplex<F> kernel_complex(const ChainMap<F>& fm) {
  const F& f = fm.src.f;
  const ChainComplex<F>& S = fm.src;
  std::map<int, Matrix<F>> basis;
  for (int n = S.lo; n <= S.hi; ++n) basis[n] = nullspace(fm.at(n));
  ChainComplex<F> K{f, S.lo, S.hi, {}, {}};
  for (int n = S.lo; n <= S.hi; ++n) K.dims.push_back(basis[n].nc);
  for (int n = S.lo; n <= S.hi; ++n) {
    Matrix<F> img = mul(S.d(n), basis[n]);
    Matrix<F> prev = n - 1 >= S.lo ? basis[n - 1] : Matrix<F>(f, S.dim(n - 1), 0);
    auto X = solve(prev, img);
    if (!X) throw std::logic_error("kernel_complex: not a subcomplex");
    K.dif.push_back(*X);
  }
  ChainMap<F> incl{K, S, {}};
  for (int n = S.lo; n <= S.hi; ++n) incl.set(n, basis[n]);
  return {K, incl};
}

// Degreewise cokernel with the induced differential and canonical projection.
template <class F>
QuotComplex<F> cokernel_complex(const ChainMap<F>& fm) {
  const F& f = fm.src.f;
  const ChainComplex<F>& D = fm.dst;
  std::map<int, QuotientData<F>> q;
  for (int n = D.lo; n <= D.hi; ++n) q[n] = quotient_by(fm.at(n));
  ChainComplex<F> Q{f, D.lo, D.hi, {}, {}};
  for (int n = D.lo; n <= D.hi; ++n) Q.dims.push_back(q[n].proj.nr);
  for (int n = D.lo; n <= D.hi; ++n) {
    Matrix<F> prev_proj = n - 1 >= D.lo ? q[n - 1].proj : Matrix<F>(f, 0, D.dim(n - 1));
    Q.dif.push_back(mul(prev_proj, mul(D.d(n), q[n].sect)));
  }
  ChainMap<F> proj{D, Q, {}};
  for (int n = D.lo; n <= D.hi; ++n) proj.set(n, q[n].proj);
  return {Q, proj};
}

template <class F>
SubComplex<F> equalizer_complex(const ChainMap<F>& a, const ChainMap<F>& b) {
  return kernel_complex(sub_maps(a, b));
}

template <class F>
QuotComplex<F> coequalizer_complex(const ChainMap<F>& a, const ChainMap<F>& b) {
  return cokernel_complex(sub_maps(a, b));
}

// --- lifting problems ---------------------------------------------------------

template <class F>
struct LiftResult {
  std::optional<ChainMap<F>> lift;
  std::string certificate;  // on failure: which equation block is inconsistent
};

// Commutative square f: A->X, h: B->Y over i: A->B, p: X->Y. Solve for
// λ: B->X with λi = f, pλ = h, as one linear system (unknown entries of λ
// plus chain-map constraints).
template <class F>
LiftResult<F> solve_lift(const ChainMap<F>& i, const ChainMap<F>& p, const ChainMap<F>& fm,
                         const ChainMap<F>& h) {
  if (!equal_maps(compose(p, fm), compose(h, i)))
    throw std::invalid_argument("solve_lift: square does not commute");
  const F& f = i.src.f;
  const ChainComplex<F>& B = i.dst;
  const ChainComplex<F>& X = p.src;
  int lo = std::min(B.lo, X.lo), hi = std::max(B.hi, X.hi);
  // variable layout: for each degree n, a block of X.dim(n)*B.dim(n) unknowns
  std::map<int, int> offset;
  int nvar = 0;
  for (int n = lo; n <= hi; ++n) {
    offset[n] = nvar;
    nvar += X.dim(n) * B.dim(n);
  }
  auto var = [&](int n, int r, int c) { return offset.at(n) + r * B.dim(n) + c; };

  std::vector<std::vector<typename F::Elem>> rows;
  std::vector<typename F::Elem> rhs;
  std::vector<std::string> tag;
  auto new_row = [&](const std::string& t) -> std::vector<typename F::Elem>& {
    rows.emplace_back(nvar, f.zero());
    rhs.push_back(f.zero());
    tag.push_back(t);
    return rows.back();
  };

  for (int n = lo; n <= hi; ++n) {
    // λ i = f   (X.dim(n) x A.dim(n) equations)
    Matrix<F> in = i.at(n), fn = fm.at(n);
    for (int r = 0; r < X.dim(n); ++r)
      for (int c = 0; c < in.nc; ++c) {
        auto& row = new_row("restriction@" + std::to_string(n));
        for (int k = 0; k < B.dim(n); ++k)
          if (!f.is_zero(in.at(k, c))) row[var(n, r, k)] = in.at(k, c);
        rhs.back() = fn.at(r, c);
      }
    // p λ = h   (Y.dim(n) x B.dim(n) equations)
    Matrix<F> pn = p.at(n), hn = h.at(n);
    for (int r = 0; r < pn.nr; ++r)
      for (int c = 0; c < B.dim(n); ++c) {
        auto& row = new_row("projection@" + std::to_string(n));
        for (int k = 0; k < X.dim(n); ++k)
          if (!f.is_zero(pn.at(r, k))) row[var(n, k, c)] = pn.at(r, k);
        rhs.back() = hn.at(r, c);
      }
    // d λ = λ d  (X.dim(n-1) x B.dim(n) equations)
    Matrix<F> dX = X.d(n), dB = B.d(n);
    for (int r = 0; r < X.dim(n - 1); ++r)
      for (int c = 0; c < B.dim(n); ++c) {
        auto& row = new_row("chain@" + std::to_string(n));
        for (int k = 0; k < X.dim(n); ++k)
          if (!f.is_zero(dX.at(r, k))) row[var(n, k, c)] = dX.at(r, k);
        for (int k = 0; k < B.dim(n - 1); ++k)
          if (!f.is_zero(dB.at(k, c)))
            row[var(n - 1, r, k)] = f.sub(row[var(n - 1, r, k)], dB.at(k, c));
        rhs.back() = f.zero();
      }
  }

  Matrix<F> Asys(f, int(rows.size()), nvar), Bsys(f, int(rows.size()), 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < nvar; ++c) Asys.at(int(r), c) = rows[r][c];
    Bsys.at(int(r), 0) = rhs[r];
  }
  auto sol = solve_full(Asys, Bsys);
  if (!sol.X) {
    // locate an inconsistent combination: rref of [A|b] had pivot in b column
    return {std::nullopt, "no lift: linear system inconsistent (echelon row " +
                              std::to_string(sol.bad_row) + " of " + std::to_string(rows.size()) +
                              " equations)"};
  }
  ChainMap<F> lam{B, X, {}};
  for (int n = lo; n <= hi; ++n) {
    if (X.dim(n) == 0 || B.dim(n) == 0) continue;
    Matrix<F> m(f, X.dim(n), B.dim(n));
    for (int r = 0; r < X.dim(n); ++r)
      for (int c = 0; c < B.dim(n); ++c) m.at(r, c) = sol.X->at(var(n, r, c), 0);
    lam.set(n, std::move(m));
  }
  return {lam, ""};
}

}  // namespace eqha
