#pragma once

#include <memory>

#include "eqha/chain.hpp"

namespace eqha {

// Small category enriched in chain complexes: finitely many objects, a hom
// complex per ordered pair, composition as chain maps out of tensor
// complexes, and identity elements sitting in degree 0.
template <class F>
struct VCategory {
  F f{};
  int nobj = 0;
  std::vector<std::string> obj_labels;
  std::vector<std::vector<ChainComplex<F>>> hom;            // hom[i][j]: i -> j
  std::vector<std::vector<std::vector<ChainMap<F>>>> comp;  // [i][j][k]: hom(j,k)⊗hom(i,j) -> hom(i,k)
  std::vector<Matrix<F>> iden;                              // column in hom(i,i) degree 0
};

// Presheaves and functors hold their domain through a shared pointer so that
// many objects can reference one category without copying it.
template <class F>
using VCatPtr = std::shared_ptr<const VCategory<F>>;

template <class F>
VCatPtr<F> share(VCategory<F> cat) {
  return std::make_shared<const VCategory<F>>(std::move(cat));
}

template <class F>
Matrix<F> basis_column(F f, int dim, int idx) {
  Matrix<F> e(f, dim, 1);
  e.at(idx, 0) = f.one();
  return e;
}

// w2 ∘ w1 for homogeneous elements given as column vectors in degrees d2, d1.
template <class F>
Matrix<F> compose_elems(const VCategory<F>& C, int i, int j, int k, int d2, const Matrix<F>& w2,
                        int d1, const Matrix<F>& w1) {
  const ChainComplex<F>& H2 = C.hom[j][k];
  const ChainComplex<F>& H1 = C.hom[i][j];
  const ChainMap<F>& cm = C.comp[i][j][k];
  int n = d1 + d2;
  Matrix<F> v(C.f, cm.src.dim(n), 1);
  for (int a = 0; a < H2.dim(d2); ++a) {
    if (C.f.is_zero(w2.at(a, 0))) continue;
    for (int b = 0; b < H1.dim(d1); ++b) {
      if (C.f.is_zero(w1.at(b, 0))) continue;
      v.at(tensor_pos(H2, H1, n, d2, a, b), 0) = C.f.mul(w2.at(a, 0), w1.at(b, 0));
    }
  }
  return mul(cm.at(n), v);
}

// Unit and associativity laws on every basis element/triple, plus the chain
// condition on all composition maps.
template <class F>
bool category_laws(const VCategory<F>& C) {
  const F& f = C.f;
  for (int i = 0; i < C.nobj; ++i) {
    if (C.iden[i].nr != C.hom[i][i].dim(0) || C.iden[i].nc != 1) return false;
    if (!mul(C.hom[i][i].d(0), C.iden[i]).is_zero()) return false;  // identities are cycles
  }
  for (int i = 0; i < C.nobj; ++i)
    for (int j = 0; j < C.nobj; ++j)
      for (int k = 0; k < C.nobj; ++k)
        if (!C.comp[i][j][k].is_chain_map()) return false;
  for (int i = 0; i < C.nobj; ++i)
    for (int j = 0; j < C.nobj; ++j) {
      const ChainComplex<F>& H = C.hom[i][j];
      for (int d = H.lo; d <= H.hi; ++d)
        for (int b = 0; b < H.dim(d); ++b) {
          Matrix<F> e = basis_column(f, H.dim(d), b);
          if (!equal(compose_elems(C, i, i, j, d, e, 0, C.iden[i]), e)) return false;
          if (!equal(compose_elems(C, i, j, j, 0, C.iden[j], d, e), e)) return false;
        }
    }
  for (int i = 0; i < C.nobj; ++i)
    for (int j = 0; j < C.nobj; ++j)
      for (int k = 0; k < C.nobj; ++k)
        for (int l = 0; l < C.nobj; ++l) {
          const ChainComplex<F>&X = C.hom[k][l], &Y = C.hom[j][k], &Z = C.hom[i][j];
          for (int dx = X.lo; dx <= X.hi; ++dx)
            for (int dy = Y.lo; dy <= Y.hi; ++dy)
              for (int dz = Z.lo; dz <= Z.hi; ++dz)
                for (int x = 0; x < X.dim(dx); ++x)
                  for (int y = 0; y < Y.dim(dy); ++y)
                    for (int z = 0; z < Z.dim(dz); ++z) {
                      Matrix<F> ex = basis_column(f, X.dim(dx), x);
                      Matrix<F> ey = basis_column(f, Y.dim(dy), y);
                      Matrix<F> ez = basis_column(f, Z.dim(dz), z);
                      Matrix<F> xy = compose_elems(C, j, k, l, dx, ex, dy, ey);
                      Matrix<F> lhs = compose_elems(C, i, j, l, dx + dy, xy, dz, ez);
                      Matrix<F> yz = compose_elems(C, i, j, k, dy, ey, dz, ez);
                      Matrix<F> rhs = compose_elems(C, i, k, l, dx, ex, dy + dz, yz);
                      if (!equal(lhs, rhs)) return false;
                    }
        }
  return true;
}

// The symmetry A⊗B ≅ B⊗A, a⊗b ↦ (−1)^{|a||b|} b⊗a.
template <class F>
ChainMap<F> tensor_swap(const ChainComplex<F>& A, const ChainComplex<F>& B) {
  ChainComplex<F> S = tensor_complex(A, B), D = tensor_complex(B, A);
  ChainMap<F> m{S, D, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0) continue;
    Matrix<F> M(A.f, D.dim(n), S.dim(n));
    auto cols = tensor_basis(A, B, n);
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [i, a, b] = cols[c];
      auto v = A.f.one();
      if (i % 2 != 0 && (n - i) % 2 != 0) v = A.f.neg(v);
      M.at(tensor_pos(B, A, n, n - i, b, a), int(c)) = v;
    }
    m.set(n, M);
  }
  return m;
}

// Same objects, reversed homs; composition picks up the symmetry's signs.
template <class F>
VCategory<F> opposite_category(const VCategory<F>& C) {
  VCategory<F> O;
  O.f = C.f;
  O.nobj = C.nobj;
  O.obj_labels = C.obj_labels;
  O.iden = C.iden;
  O.hom.assign(C.nobj, std::vector<ChainComplex<F>>(C.nobj));
  for (int i = 0; i < C.nobj; ++i)
    for (int j = 0; j < C.nobj; ++j) O.hom[i][j] = C.hom[j][i];
  O.comp.assign(C.nobj, std::vector<std::vector<ChainMap<F>>>(
                            C.nobj, std::vector<ChainMap<F>>(C.nobj)));
  for (int i = 0; i < C.nobj; ++i)
    for (int j = 0; j < C.nobj; ++j)
      for (int k = 0; k < C.nobj; ++k)
        O.comp[i][j][k] = compose(C.comp[k][j][i], tensor_swap(C.hom[k][j], C.hom[j][i]));
  return O;
}

// Objects are pairs, homs are tensor products, and composition interchanges
// the middle factors with the Koszul sign.
template <class F>
VCategory<F> product_category(const VCategory<F>& D, const VCategory<F>& E) {
  const F& f = D.f;
  VCategory<F> P;
  P.f = f;
  P.nobj = D.nobj * E.nobj;
  auto pi = [&](int d, int e) { return d * E.nobj + e; };
  for (int d = 0; d < D.nobj; ++d)
    for (int e = 0; e < E.nobj; ++e) P.obj_labels.push_back(D.obj_labels[d] + "x" + E.obj_labels[e]);
  P.hom.assign(P.nobj, std::vector<ChainComplex<F>>(P.nobj));
  P.iden.resize(P.nobj);
  for (int d1 = 0; d1 < D.nobj; ++d1)
    for (int e1 = 0; e1 < E.nobj; ++e1)
      for (int d2 = 0; d2 < D.nobj; ++d2)
        for (int e2 = 0; e2 < E.nobj; ++e2)
          P.hom[pi(d1, e1)][pi(d2, e2)] = tensor_complex(D.hom[d1][d2], E.hom[e1][e2]);
  for (int d = 0; d < D.nobj; ++d)
    for (int e = 0; e < E.nobj; ++e) {
      const ChainComplex<F>&HD = D.hom[d][d], &HE = E.hom[e][e];
      Matrix<F> u(f, P.hom[pi(d, e)][pi(d, e)].dim(0), 1);
      for (int a = 0; a < HD.dim(0); ++a)
        for (int b = 0; b < HE.dim(0); ++b)
          u.at(tensor_pos(HD, HE, 0, 0, a, b), 0) = f.mul(D.iden[d].at(a, 0), E.iden[e].at(b, 0));
      P.iden[pi(d, e)] = std::move(u);
    }
  P.comp.assign(P.nobj, std::vector<std::vector<ChainMap<F>>>(
                            P.nobj, std::vector<ChainMap<F>>(P.nobj)));
  for (int d1 = 0; d1 < D.nobj; ++d1)
    for (int e1 = 0; e1 < E.nobj; ++e1)
      for (int d2 = 0; d2 < D.nobj; ++d2)
        for (int e2 = 0; e2 < E.nobj; ++e2)
          for (int d3 = 0; d3 < D.nobj; ++d3)
            for (int e3 = 0; e3 < E.nobj; ++e3) {
              int I = pi(d1, e1), J = pi(d2, e2), K = pi(d3, e3);
              const ChainComplex<F>&D2 = D.hom[d2][d3], &E2 = E.hom[e2][e3];
              const ChainComplex<F>&D1 = D.hom[d1][d2], &E1 = E.hom[e1][e2];
              const ChainComplex<F>&D3 = D.hom[d1][d3], &E3 = E.hom[e1][e3];
              ChainComplex<F> T = tensor_complex(P.hom[J][K], P.hom[I][J]);
              ChainMap<F> cm{T, P.hom[I][K], {}};
              for (int n = T.lo; n <= T.hi; ++n) {
                if (T.dim(n) == 0 || P.hom[I][K].dim(n) == 0) continue;
                Matrix<F> M(f, P.hom[I][K].dim(n), T.dim(n));
                auto cols = tensor_basis(P.hom[J][K], P.hom[I][J], n);
                for (size_t c = 0; c < cols.size(); ++c) {
                  auto [s, a2, b1] = cols[c];
                  auto [p2, ad, ae] = tensor_basis(D2, E2, s)[a2];
                  auto [p1, bd, be] = tensor_basis(D1, E1, n - s)[b1];
                  bool neg = (s - p2) % 2 != 0 && p1 % 2 != 0;
                  Matrix<F> u = compose_elems(D, d1, d2, d3, p2, basis_column(f, D2.dim(p2), ad),
                                              p1, basis_column(f, D1.dim(p1), bd));
                  Matrix<F> v = compose_elems(E, e1, e2, e3, s - p2,
                                              basis_column(f, E2.dim(s - p2), ae), n - s - p1,
                                              basis_column(f, E1.dim(n - s - p1), be));
                  for (int r = 0; r < u.nr; ++r) {
                    if (f.is_zero(u.at(r, 0))) continue;
                    for (int t = 0; t < v.nr; ++t) {
                      if (f.is_zero(v.at(t, 0))) continue;
                      auto val = f.mul(u.at(r, 0), v.at(t, 0));
                      if (neg) val = f.neg(val);
                      M.at(tensor_pos(D3, E3, n, p2 + p1, r, t), int(c)) = val;
                    }
                  }
                }
                cm.set(n, std::move(M));
              }
              P.comp[I][J][K] = std::move(cm);
            }
  return P;
}

// One object whose endomorphisms are a given complex with multiplication.
template <class F>
VCategory<F> one_object_category(const ChainComplex<F>& A, const ChainMap<F>& mult,
                                 const Matrix<F>& unit_elem, std::string label = "*") {
  VCategory<F> C;
  C.f = A.f;
  C.nobj = 1;
  C.obj_labels = {std::move(label)};
  C.hom = {{A}};
  C.comp = {{{mult}}};
  C.iden = {unit_elem};
  return C;
}

template <class F>
VCategory<F> unit_category(F f) {
  ChainComplex<F> S = sphere(f, 0);
  ChainMap<F> mult{tensor_complex(S, S), S, {}};
  mult.set(0, Matrix<F>::identity(f, 1));
  return one_object_category(S, mult, Matrix<F>::identity(f, 1), "pt");
}

// Enriched functor: object map plus one chain map per hom pair.
template <class F>
struct EnrichedFunctor {
  std::vector<int> obj;
  std::vector<std::vector<ChainMap<F>>> map;  // map[i][j]: S.hom(i,j) -> T.hom(obj[i], obj[j])
};

// Identity and composition preservation; matrix equality covers every basis
// pair at once.
template <class F>
bool functor_laws(const VCategory<F>& S, const VCategory<F>& T, const EnrichedFunctor<F>& Fn) {
  for (int i = 0; i < S.nobj; ++i)
    if (!equal(mul(Fn.map[i][i].at(0), S.iden[i]), T.iden[Fn.obj[i]])) return false;
  for (int i = 0; i < S.nobj; ++i)
    for (int j = 0; j < S.nobj; ++j)
      if (!Fn.map[i][j].is_chain_map()) return false;
  for (int i = 0; i < S.nobj; ++i)
    for (int j = 0; j < S.nobj; ++j)
      for (int k = 0; k < S.nobj; ++k) {
        ChainMap<F> lhs = compose(Fn.map[i][k], S.comp[i][j][k]);
        ChainMap<F> rhs = compose(T.comp[Fn.obj[i]][Fn.obj[j]][Fn.obj[k]],
                                  tensor_map(Fn.map[j][k], Fn.map[i][j]));
        if (!equal_maps(lhs, rhs)) return false;
      }
  return true;
}

}  // namespace eqha
