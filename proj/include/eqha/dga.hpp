#pragma once

#include "eqha/presheaf.hpp"
#include "eqha/random_gen.hpp"

namespace eqha {

// --- DG algebras on a chosen graded basis ------------------------------------

template <class F>
struct DGAlgebra {
  ChainComplex<F> cx;
  ChainMap<F> mult;  // tensor_complex(cx, cx) -> cx
  Matrix<F> unit;    // degree-0 column
};

// The one-object category whose endomorphism complex is A itself; its laws
// are exactly associativity, the two-sided unit, d(1) = 0, and the Leibniz
// rule (the multiplication is a chain map out of the tensor complex).
template <class F>
DGAlgebra<F> make_dga(const ChainComplex<F>& cx, const ChainMap<F>& mult,
                      const Matrix<F>& unit) {
  if (!category_laws(one_object_category(cx, mult, unit)))
    throw std::invalid_argument("make_dga: algebra axioms fail");
  return {cx, mult, unit};
}

// The ground field, concentrated in degree 0.
template <class F>
DGAlgebra<F> ground_dga(F f) {
  ChainComplex<F> R = sphere(f, 0);
  ChainMap<F> mult{tensor_complex(R, R), R, {}};
  mult.set(0, Matrix<F>::identity(f, 1));
  return make_dga(R, mult, Matrix<F>::identity(f, 1));
}

// Exterior algebra on one degree-1 generator x: basis {1, x}, x*x = 0, d = 0.
template <class F>
DGAlgebra<F> exterior_dga(F f) {
  ChainComplex<F> E =
      make_complex(f, 0, {1, 1}, {Matrix<F>(f, 0, 1), Matrix<F>(f, 1, 1)});
  ChainMap<F> mult{tensor_complex(E, E), E, {}};
  Matrix<F> m0(f, 1, 1);
  m0.at(0, 0) = f.one();
  Matrix<F> m1(f, 1, 2);
  m1.at(0, 0) = f.one();  // 1 (x) x -> x
  m1.at(0, 1) = f.one();  // x (x) 1 -> x
  mult.set(0, m0);
  mult.set(1, m1);
  Matrix<F> unit(f, 1, 1);
  unit.at(0, 0) = f.one();
  return make_dga(E, mult, unit);
}

// One-object category with hom complex A and opposite composition;
// presheaves over it are exactly left A-modules.
template <class F>
VCategory<F> algebra_category(const DGAlgebra<F>& A) {
  return opposite_category(one_object_category(A.cx, A.mult, A.unit, "A"));
}

// --- modules over a DG algebra -----------------------------------------------

template <class F>
struct AModule {
  DGAlgebra<F> A;
  ChainComplex<F> cx;
  ChainMap<F> act;  // tensor_complex(A.cx, cx) -> cx
};

// Left multiplication by the basis element (d, idx) of A, as a graded map.
template <class F>
GradedMap<F> algebra_action(const AModule<F>& M, int d, int idx) {
  return action_structure(M.act, M.A.cx, M.cx, M.cx, d,
                          basis_column(M.cx.f, M.A.cx.dim(d), idx));
}

// Unit acts as the identity, (ab)x = a(bx) on all basis pairs, and the
// action is a chain map (the module Leibniz rule).
template <class F>
bool amodule_laws(const AModule<F>& M) {
  const F& f = M.cx.f;
  const ChainComplex<F>& Acx = M.A.cx;
  ChainComplex<F> AA = tensor_complex(Acx, Acx);
  if (!equal_complex(M.act.src, tensor_complex(Acx, M.cx))) return false;
  if (!equal_complex(M.act.dst, M.cx)) return false;
  if (!M.act.is_chain_map()) return false;
  if (!equal_graded(action_structure(M.act, Acx, M.cx, M.cx, 0, M.A.unit),
                    graded_identity(M.cx)))
    return false;
  for (int da = Acx.lo; da <= Acx.hi; ++da)
    for (int a = 0; a < Acx.dim(da); ++a) {
      GradedMap<F> sa = algebra_action(M, da, a);
      for (int db = Acx.lo; db <= Acx.hi; ++db)
        for (int b = 0; b < Acx.dim(db); ++b) {
          Matrix<F> e(f, AA.dim(da + db), 1);
          e.at(tensor_pos(Acx, Acx, da + db, da, a, b), 0) = f.one();
          Matrix<F> ab = mul(M.A.mult.at(da + db), e);
          GradedMap<F> lhs = action_structure(M.act, Acx, M.cx, M.cx, da + db, ab);
          GradedMap<F> rhs = compose_graded(sa, algebra_action(M, db, b));
          if (!equal_graded(lhs, rhs)) return false;
        }
    }
  return true;
}

template <class F>
AModule<F> make_amodule(const DGAlgebra<F>& A, const ChainComplex<F>& cx,
                        const ChainMap<F>& act, bool validate = true) {
  AModule<F> M{A, cx, act};
  if (validate && !amodule_laws(M)) throw std::invalid_argument("make_amodule: module laws fail");
  return M;
}

template <class F>
bool equal_amodule(const AModule<F>& X, const AModule<F>& Y) {
  return equal_complex(X.A.cx, Y.A.cx) && equal_complex(X.cx, Y.cx) &&
         equal_complex(X.act.src, Y.act.src) && equal_maps(X.act, Y.act);
}

// Left A-modules are the presheaves on the one-object category of A^op,
// with the same action matrices.
template <class F>
Presheaf<F> amodule_as_presheaf(const AModule<F>& M) {
  Presheaf<F> X;
  X.dom = share(algebra_category(M.A));
  X.val = {M.cx};
  X.act = {{M.act}};
  return X;
}

template <class F>
AModule<F> amodule_from_presheaf(const DGAlgebra<F>& A, const Presheaf<F>& X) {
  if (X.dom->nobj != 1 || !equal_complex(X.dom->hom[0][0], A.cx))
    throw std::invalid_argument("amodule_from_presheaf: domain is not the given algebra");
  return {A, X.val[0], X.act[0][0]};
}

// --- scalar extension ---------------------------------------------------------

// A (x) X with A acting by left multiplication on the first factor.
template <class F>
AModule<F> extend_scalars(const DGAlgebra<F>& A, const ChainComplex<F>& X) {
  const F& f = X.f;
  const ChainComplex<F>& Acx = A.cx;
  ChainComplex<F> M = tensor_complex(Acx, X);
  ChainComplex<F> S = tensor_complex(Acx, M);
  ChainMap<F> act{S, M, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || M.dim(n) == 0) continue;
    Matrix<F> m(f, M.dim(n), S.dim(n));
    for (int da = Acx.lo; da <= Acx.hi; ++da) {
      int q = n - da;
      if (Acx.dim(da) == 0 || M.dim(q) == 0) continue;
      auto inner = tensor_basis(Acx, X, q);
      for (int a = 0; a < Acx.dim(da); ++a)
        for (size_t y = 0; y < inner.size(); ++y) {
          auto [db, b, x] = inner[y];
          if (Acx.dim(da + db) == 0) continue;
          Matrix<F> mm = A.mult.at(da + db);
          int pos = tensor_pos(Acx, Acx, da + db, da, a, b);
          int col = tensor_pos(Acx, M, n, da, a, int(y));
          for (int r = 0; r < mm.nr; ++r) {
            if (f.is_zero(mm.at(r, pos))) continue;
            m.at(tensor_pos(Acx, X, n, da + db, r, x), col) = mm.at(r, pos);
          }
        }
    }
    act.set(n, std::move(m));
  }
  return {A, M, act};
}

// A as a module over itself; the action matrices coincide with mult.
template <class F>
AModule<F> self_module(const DGAlgebra<F>& A) {
  return extend_scalars(A, sphere(A.cx.f, 0));
}

// --- commuting G- and A-actions ------------------------------------------------

template <class F>
struct GAModule {
  GModule<F> gm;
  AModule<F> am;  // same underlying complex
};

template <class F>
bool gamodule_laws(const GAModule<F>& M) {
  if (!equal_complex(M.gm.cx, M.am.cx)) return false;
  try {
    M.gm.validate();
  } catch (const std::exception&) {
    return false;
  }
  if (!amodule_laws(M.am)) return false;
  const ChainComplex<F>& Acx = M.am.A.cx;
  for (int g = 0; g < M.gm.G->n; ++g) {
    ChainMap<F> ga = M.gm.action_map(g);
    for (int da = Acx.lo; da <= Acx.hi; ++da)
      for (int a = 0; a < Acx.dim(da); ++a) {
        GradedMap<F> sa = algebra_action(M.am, da, a);
        if (!equal_graded(compose_cg(ga, sa), compose_gc(sa, ga))) return false;
      }
  }
  return true;
}

template <class F>
bool equal_gamodule(const GAModule<F>& X, const GAModule<F>& Y) {
  if (X.gm.G != Y.gm.G || !equal_complex(X.gm.cx, Y.gm.cx)) return false;
  for (int g = 0; g < X.gm.G->n; ++g)
    for (int n = X.gm.cx.lo; n <= X.gm.cx.hi; ++n)
      if (!equal(X.gm.action(g, n), Y.gm.action(g, n))) return false;
  return equal_amodule(X.am, Y.am);
}

// X (x) A with G acting on the left factor and A multiplying the right one
// through the Koszul sign: a(x (x) b) = (-1)^{|a||x|} x (x) ab.
template <class F>
GAModule<F> extend_gmodule(const GModule<F>& X, const DGAlgebra<F>& A) {
  const F& f = X.cx.f;
  const ChainComplex<F>& Acx = A.cx;
  GModule<F> gm = tensor_g(X, trivial_gmodule(X.G, Acx));
  ChainComplex<F> S = tensor_complex(Acx, gm.cx);
  ChainMap<F> act{S, gm.cx, {}};
  for (int n = S.lo; n <= S.hi; ++n) {
    if (S.dim(n) == 0 || gm.cx.dim(n) == 0) continue;
    Matrix<F> m(f, gm.cx.dim(n), S.dim(n));
    for (int da = Acx.lo; da <= Acx.hi; ++da) {
      int q = n - da;
      if (Acx.dim(da) == 0 || gm.cx.dim(q) == 0) continue;
      auto inner = tensor_basis(X.cx, Acx, q);
      for (int a = 0; a < Acx.dim(da); ++a)
        for (size_t y = 0; y < inner.size(); ++y) {
          auto [dx, x, b] = inner[y];
          int db = q - dx;
          if (Acx.dim(da + db) == 0) continue;
          Matrix<F> mm = A.mult.at(da + db);
          int pos = tensor_pos(Acx, Acx, da + db, da, a, b);
          int col = tensor_pos(Acx, gm.cx, n, da, a, int(y));
          bool neg = (da % 2 != 0) && (dx % 2 != 0);
          for (int r = 0; r < mm.nr; ++r) {
            if (f.is_zero(mm.at(r, pos))) continue;
            auto v = mm.at(r, pos);
            if (neg) v = f.neg(v);
            m.at(tensor_pos(X.cx, Acx, n, dx, x, r), col) = v;
          }
        }
    }
    act.set(n, std::move(m));
  }
  return {gm, AModule<F>{A, gm.cx, act}};
}

// --- restriction to subcomplexes -----------------------------------------------

// Restrict a graded endomorphism through a subcomplex inclusion; throws if
// the subcomplex is not invariant.
template <class F>
GradedMap<F> restrict_graded(const GradedMap<F>& g, const SubComplex<F>& S) {
  GradedMap<F> out{S.cx, S.cx, g.deg, {}};
  for (int q = S.cx.lo; q <= S.cx.hi; ++q) {
    if (S.cx.dim(q) == 0) continue;
    Matrix<F> B = mul(g.at(q), S.incl.at(q));
    if (S.cx.dim(q + g.deg) == 0) {
      if (!B.is_zero()) throw std::logic_error("restrict_graded: subcomplex not invariant");
      continue;
    }
    auto X = solve(S.incl.at(q + g.deg), B);
    if (!X) throw std::logic_error("restrict_graded: subcomplex not invariant");
    out.set(q, *X);
  }
  return out;
}

// The A-action restricted to an A-stable subcomplex.
template <class F>
AModule<F> restrict_amodule(const AModule<F>& M, const SubComplex<F>& S) {
  const F& f = M.cx.f;
  const ChainComplex<F>& Acx = M.A.cx;
  ChainComplex<F> T = tensor_complex(Acx, S.cx);
  std::vector<std::vector<GradedMap<F>>> rs;
  for (int da = Acx.lo; da <= Acx.hi; ++da) {
    std::vector<GradedMap<F>> row;
    for (int a = 0; a < Acx.dim(da); ++a)
      row.push_back(restrict_graded(algebra_action(M, da, a), S));
    rs.push_back(std::move(row));
  }
  ChainMap<F> act{T, S.cx, {}};
  for (int n = T.lo; n <= T.hi; ++n) {
    if (T.dim(n) == 0 || S.cx.dim(n) == 0) continue;
    Matrix<F> m(f, S.cx.dim(n), T.dim(n));
    for (int da = Acx.lo; da <= Acx.hi; ++da) {
      int q = n - da;
      if (Acx.dim(da) == 0 || S.cx.dim(q) == 0) continue;
      for (int a = 0; a < Acx.dim(da); ++a) {
        Matrix<F> ra = rs[da - Acx.lo][a].at(q);
        for (int x = 0; x < S.cx.dim(q); ++x) {
          int col = tensor_pos(Acx, S.cx, n, da, a, x);
          for (int rr = 0; rr < ra.nr; ++rr) m.at(rr, col) = ra.at(rr, x);
        }
      }
    }
    act.set(n, std::move(m));
  }
  return {M.A, S.cx, act};
}

// --- A-linear hom -----------------------------------------------------------

// hom_A(M, N): the subcomplex of graded maps f with f(ax) = (-1)^{|f||a|} a f(x),
// cut out degreewise by elimination inside the full hom complex.
template <class F>
struct HomOverData {
  ChainComplex<F> hom;  // ambient hom complex of the underlying complexes
  ChainComplex<F> cx;   // A-linear subcomplex
  ChainMap<F> incl;     // cx -> hom
};

template <class F>
HomOverData<F> hom_over(const AModule<F>& M, const AModule<F>& N) {
  const F& f = M.cx.f;
  const ChainComplex<F>& Acx = M.A.cx;
  ChainComplex<F> H = hom_complex(M.cx, N.cx);
  if (H.hi < H.lo) return {H, H, identity_map(H)};
  std::vector<std::vector<GradedMap<F>>> sM, sN;
  for (int da = Acx.lo; da <= Acx.hi; ++da) {
    std::vector<GradedMap<F>> rm, rn;
    for (int a = 0; a < Acx.dim(da); ++a) {
      rm.push_back(algebra_action(M, da, a));
      rn.push_back(algebra_action(N, da, a));
    }
    sM.push_back(std::move(rm));
    sN.push_back(std::move(rn));
  }
  std::vector<Matrix<F>> bas;
  for (int n = H.lo; n <= H.hi; ++n) {
    int dn = H.dim(n);
    if (dn == 0) {
      bas.push_back(Matrix<F>(f, 0, 0));
      continue;
    }
    Matrix<F> id = Matrix<F>::identity(f, dn);
    Matrix<F> stack(f, 0, dn);
    for (int da = Acx.lo; da <= Acx.hi; ++da)
      for (int a = 0; a < Acx.dim(da); ++a) {
        int rows = int(hom_basis(M.cx, N.cx, n + da).size());
        if (rows == 0) continue;
        Matrix<F> block(f, rows, dn);
        bool neg = (n % 2 != 0) && (da % 2 != 0);
        for (int c = 0; c < dn; ++c) {
          GradedMap<F> phi = hom_unvector(M.cx, N.cx, n, id, c);
          Matrix<F> lv = hom_vector(M.cx, N.cx, compose_graded(phi, sM[da - Acx.lo][a]));
          Matrix<F> rv = hom_vector(M.cx, N.cx, compose_graded(sN[da - Acx.lo][a], phi));
          for (int r = 0; r < rows; ++r)
            block.at(r, c) = neg ? f.add(lv.at(r, 0), rv.at(r, 0))
                                 : f.sub(lv.at(r, 0), rv.at(r, 0));
        }
        stack = vstack(stack, block);
      }
    bas.push_back(stack.nr == 0 ? Matrix<F>::identity(f, dn) : nullspace(stack));
  }
  ChainComplex<F> S{f, H.lo, H.hi, {}, {}};
  for (auto& b : bas) S.dims.push_back(b.nc);
  for (int n = S.lo; n <= S.hi; ++n) {
    Matrix<F> prev = n - 1 >= S.lo ? bas[n - 1 - S.lo] : Matrix<F>(f, H.dim(n - 1), 0);
    auto X = solve(prev, mul(H.d(n), bas[n - S.lo]));
    if (!X) throw std::logic_error("hom_over: subspace not closed under d");
    S.dif.push_back(std::move(*X));
  }
  ChainMap<F> incl{S, H, {}};
  for (int n = S.lo; n <= S.hi; ++n) incl.set(n, bas[n - S.lo]);
  return {std::move(H), std::move(S), std::move(incl)};
}

// The conjugation G-action restricted to the A-linear subcomplex.
template <class F>
GModule<F> hom_over_g(const GAModule<F>& M, const GAModule<F>& N, const HomOverData<F>& H) {
  GModule<F> C = hom_g(M.gm, N.gm);
  return make_gmodule(M.gm.G, H.cx, [&](int g, int n) {
    Matrix<F> B = mul(C.action(g, n), H.incl.at(n));
    auto X = solve(H.incl.at(n), B);
    if (!X) throw std::logic_error("hom_over_g: subcomplex not stable");
    return *X;
  });
}

// Evaluation at the unit: hom_A(A, N) is isomorphic to N.
template <class F>
IsoWitness<F> self_hom_iso(const AModule<F>& N) {
  const F& f = N.cx.f;
  const DGAlgebra<F>& A = N.A;
  AModule<F> S = self_module(A);
  HomOverData<F> H = hom_over(S, N);
  ChainMap<F> fwd{H.cx, N.cx, {}};
  ChainMap<F> bwd{N.cx, H.cx, {}};
  for (int n = H.cx.lo; n <= H.cx.hi; ++n) {
    if (H.cx.dim(n) != N.cx.dim(n))
      throw std::logic_error("self_hom_iso: dimension mismatch");
    if (H.cx.dim(n) == 0) continue;
    Matrix<F> m(f, N.cx.dim(n), H.cx.dim(n));
    for (int c = 0; c < H.cx.dim(n); ++c) {
      GradedMap<F> phi = hom_unvector(S.cx, N.cx, n, H.incl.at(n), c);
      Matrix<F> v = mul(phi.at(0), A.unit);
      for (int r = 0; r < v.nr; ++r) m.at(r, c) = v.at(r, 0);
    }
    auto inv = solve(m, Matrix<F>::identity(f, m.nr));
    if (!inv) throw std::logic_error("self_hom_iso: evaluation not invertible");
    fwd.set(n, std::move(m));
    bwd.set(n, std::move(*inv));
  }
  return {std::move(fwd), std::move(bwd)};
}

// Dimension of the space of G-equivariant A-linear chain maps M -> N,
// counted by one direct linear system on the raw matrix entries.
template <class F>
int equivariant_a_maps_dim(const GAModule<F>& M, const GAModule<F>& N) {
  const F& f = M.gm.cx.f;
  const ChainComplex<F>& Mc = M.gm.cx;
  const ChainComplex<F>& Nc = N.gm.cx;
  const ChainComplex<F>& Acx = M.am.A.cx;
  int lo = std::min(Mc.lo, Nc.lo), hi = std::max(Mc.hi, Nc.hi);
  std::vector<int> base(hi - lo + 1, 0);
  int nv = 0;
  for (int n = lo; n <= hi; ++n) {
    base[n - lo] = nv;
    nv += Mc.dim(n) * Nc.dim(n);
  }
  auto vidx = [&](int n, int r, int c) { return base[n - lo] + r * Mc.dim(n) + c; };
  Matrix<F> sys(f, 0, nv);
  // chain condition: d_N f_n = f_{n-1} d_M
  for (int n = lo; n <= hi + 1; ++n) {
    if (Nc.dim(n - 1) == 0 || Mc.dim(n) == 0) continue;
    Matrix<F> block(f, Nc.dim(n - 1) * Mc.dim(n), nv);
    Matrix<F> dN = Nc.d(n), dM = Mc.d(n);
    for (int i = 0; i < Nc.dim(n - 1); ++i)
      for (int j = 0; j < Mc.dim(n); ++j) {
        int row = i * Mc.dim(n) + j;
        if (Nc.dim(n) > 0)
          for (int k = 0; k < Nc.dim(n); ++k)
            block.at(row, vidx(n, k, j)) = f.add(block.at(row, vidx(n, k, j)), dN.at(i, k));
        if (Mc.dim(n - 1) > 0)
          for (int k = 0; k < Mc.dim(n - 1); ++k)
            block.at(row, vidx(n - 1, i, k)) =
                f.sub(block.at(row, vidx(n - 1, i, k)), dM.at(k, j));
      }
    sys = vstack(sys, block);
  }
  // equivariance: rho_N(g) f_n = f_n rho_M(g)
  for (int g = 1; g < M.gm.G->n; ++g)
    for (int n = lo; n <= hi; ++n) {
      if (Mc.dim(n) == 0 || Nc.dim(n) == 0) continue;
      Matrix<F> block(f, Nc.dim(n) * Mc.dim(n), nv);
      Matrix<F> rN = N.gm.action(g, n), rM = M.gm.action(g, n);
      for (int i = 0; i < Nc.dim(n); ++i)
        for (int j = 0; j < Mc.dim(n); ++j) {
          int row = i * Mc.dim(n) + j;
          for (int k = 0; k < Nc.dim(n); ++k)
            block.at(row, vidx(n, k, j)) = f.add(block.at(row, vidx(n, k, j)), rN.at(i, k));
          for (int k = 0; k < Mc.dim(n); ++k)
            block.at(row, vidx(n, i, k)) = f.sub(block.at(row, vidx(n, i, k)), rM.at(j, k));
        }
      sys = vstack(sys, block);
    }
  // linearity: s_N(a) f_n = f_{n+da} s_M(a) for every basis element a
  for (int da = Acx.lo; da <= Acx.hi; ++da)
    for (int a = 0; a < Acx.dim(da); ++a) {
      GradedMap<F> sMa = algebra_action(M.am, da, a), sNa = algebra_action(N.am, da, a);
      for (int n = lo; n <= hi; ++n) {
        if (Mc.dim(n) == 0 || Nc.dim(n + da) == 0) continue;
        Matrix<F> block(f, Nc.dim(n + da) * Mc.dim(n), nv);
        Matrix<F> aN = sNa.at(n), aM = sMa.at(n);
        for (int i = 0; i < Nc.dim(n + da); ++i)
          for (int j = 0; j < Mc.dim(n); ++j) {
            int row = i * Mc.dim(n) + j;
            if (Nc.dim(n) > 0)
              for (int k = 0; k < Nc.dim(n); ++k)
                block.at(row, vidx(n, k, j)) = f.add(block.at(row, vidx(n, k, j)), aN.at(i, k));
            if (Mc.dim(n + da) > 0)
              for (int k = 0; k < Mc.dim(n + da); ++k)
                block.at(row, vidx(n + da, i, k)) =
                    f.sub(block.at(row, vidx(n + da, i, k)), aM.at(k, j));
          }
        sys = vstack(sys, block);
      }
    }
  return nullspace(sys).nc;
}

// --- balanced tensor over a graded-commutative algebra -------------------------

// M (x)_A N: quotient of the plain tensor by (ax) (x) y - (-1)^{|a||x|} x (x) (ay),
// using the right action induced by the Koszul twist.
template <class F>
QuotComplex<F> tensor_over(const AModule<F>& M, const AModule<F>& N) {
  const F& f = M.cx.f;
  const ChainComplex<F>& Acx = M.A.cx;
  ChainComplex<F> T = tensor_complex(M.cx, N.cx);
  std::vector<GradedMap<F>> rel;
  for (int da = Acx.lo; da <= Acx.hi; ++da)
    for (int a = 0; a < Acx.dim(da); ++a) {
      GradedMap<F> t1 = tensor_map_graded(algebra_action(M, da, a), graded_identity(N.cx));
      GradedMap<F> t2 = tensor_map_graded(graded_identity(M.cx), algebra_action(N, da, a));
      GradedMap<F> r{T, T, da, {}};
      for (int q = T.lo; q <= T.hi; ++q) {
        Matrix<F> d = sub(t1.at(q), t2.at(q));
        if (d.nr > 0 && d.nc > 0) r.set(q, d);
      }
      rel.push_back(std::move(r));
    }
  std::vector<QuotientData<F>> q;
  for (int n = T.lo; n <= T.hi; ++n) {
    Matrix<F> W(f, T.dim(n), 0);
    for (auto& r : rel) W = hstack(W, r.at(n - r.deg));
    q.push_back(quotient_by(W));
  }
  std::vector<int> dims;
  std::vector<Matrix<F>> dif;
  for (int n = T.lo; n <= T.hi; ++n) dims.push_back(q[n - T.lo].proj.nr);
  for (int n = T.lo; n <= T.hi; ++n) {
    Matrix<F> prev = n - 1 >= T.lo ? q[n - 1 - T.lo].proj : Matrix<F>(f, 0, T.dim(n - 1));
    dif.push_back(mul(prev, mul(T.d(n), q[n - T.lo].sect)));
  }
  ChainComplex<F> Q = make_complex(f, T.lo, dims, dif);
  ChainMap<F> proj{T, Q, {}};
  for (int n = T.lo; n <= T.hi; ++n) proj.set(n, q[n - T.lo].proj);
  if (!proj.is_chain_map()) throw std::logic_error("tensor_over: relations not closed under d");
  return {std::move(Q), std::move(proj)};
}

// --- fixed-point presheaves with module values ---------------------------------

// U(N) for commuting G- and A-actions: each value carries the restricted
// A-action.
template <class F>
struct AlgebraFixedPresheaf {
  FixedPresheaf<F> u;
  std::vector<AModule<F>> vals;
};

template <class F>
AlgebraFixedPresheaf<F> fixed_presheaf_over(const OrbitCategory<F>& O, const GAModule<F>& N) {
  AlgebraFixedPresheaf<F> out{fixed_presheaf(O, N.gm), {}};
  for (auto& s : out.u.fixed) out.vals.push_back(restrict_amodule(N.am, s));
  return out;
}

// Every structure map commutes with the A-actions on its endpoints
// (Koszul sign for a hom element of odd degree).
template <class F>
bool structure_maps_linear(const AlgebraFixedPresheaf<F>& X) {
  const Presheaf<F>& pre = X.u.pre;
  const F& f = pre.dom->f;
  if (X.vals.empty()) return true;
  const ChainComplex<F>& Acx = X.vals[0].A.cx;
  for (int i = 0; i < pre.dom->nobj; ++i)
    for (int j = 0; j < pre.dom->nobj; ++j) {
      const ChainComplex<F>& H = pre.dom->hom[i][j];
      for (int dw = H.lo; dw <= H.hi; ++dw)
        for (int b = 0; b < H.dim(dw); ++b) {
          GradedMap<F> s = structure_map(pre, i, j, dw, basis_column(f, H.dim(dw), b));
          for (int da = Acx.lo; da <= Acx.hi; ++da)
            for (int a = 0; a < Acx.dim(da); ++a) {
              GradedMap<F> lhs = compose_graded(s, algebra_action(X.vals[j], da, a));
              GradedMap<F> rhs = compose_graded(algebra_action(X.vals[i], da, a), s);
              if (dw % 2 != 0 && da % 2 != 0) rhs = scale_graded(f.neg(f.one()), rhs);
              if (!equal_graded(lhs, rhs)) return false;
            }
        }
    }
  return true;
}

// T on an algebra-valued fixed presheaf: the value at the free orbit keeps
// both actions.
template <class F>
GAModule<F> underlying_gamodule(const OrbitCategory<F>& O, const AlgebraFixedPresheaf<F>& X) {
  GModule<F> gm = underlying_module(O, X.u.pre);
  return {std::move(gm), X.vals[free_orbit_index(O.family)]};
}

// --- verification suites --------------------------------------------------------

struct AlgebraAdjunctionReport {
  int modules = 0, cells = 0;
  bool values_lawful = true;       // U(N) values are honest A-modules
  bool structure_linear = true;    // structure maps commute with A
  bool counit_identity = true;     // reading the module back off U(N) returns N
  bool unit_identity_on_u = true;  // the unit is the identity on each U(N)
  bool unit_iso_on_cells = true;   // the unit is a levelwise iso on free cells
  bool unit_linear_on_cells = true;
  bool disk_cells_acyclic = true;
  bool ok() const {
    return values_lawful && structure_linear && counit_identity && unit_identity_on_u &&
           unit_iso_on_cells && unit_linear_on_cells && disk_cells_acyclic;
  }
};

template <class F>
AlgebraAdjunctionReport algebra_adjunction_suite(const OrbitCategory<F>& O, const DGAlgebra<F>& A,
                                                 uint64_t seed, int trials) {
  const F& f = O.cat.f;
  GroupPtr G = O.G;
  AlgebraAdjunctionReport rep;
  Rng rng(mix_seed(seed, "algebra-adjunction"));
  for (int t = 0; t < trials; ++t) {
    GAModule<F> N = extend_gmodule(random_gmodule(f, rng, G, -1, 2, 2), A);
    ++rep.modules;
    AlgebraFixedPresheaf<F> U = fixed_presheaf_over(O, N);
    rep.values_lawful = rep.values_lawful && presheaf_laws(U.u.pre);
    for (auto& v : U.vals) rep.values_lawful = rep.values_lawful && amodule_laws(v);
    rep.structure_linear = rep.structure_linear && structure_maps_linear(U);
    rep.counit_identity = rep.counit_identity && equal_gamodule(underlying_gamodule(O, U), N);
    UnitData<F> eta = unit_eta(O, U.u.pre);
    for (auto& c : eta.eta.at_obj)
      rep.unit_identity_on_u = rep.unit_identity_on_u && is_identity_map(c);
  }
  AModule<F> selfA = self_module(A);
  int e = free_orbit_index(O.family);
  for (auto& H : O.family.members)
    for (int n = 0; n <= 1; ++n)
      for (int use_disk = 0; use_disk <= 1; ++use_disk) {
        ChainComplex<F> C = use_disk ? disk(f, n + 1) : sphere(f, n);
        ChainComplex<F> M = tensor_complex(C, A.cx);
        Presheaf<F> X = free_presheaf(O, H, M);
        ++rep.cells;
        UnitData<F> eta = unit_eta(O, X);
        rep.unit_iso_on_cells = rep.unit_iso_on_cells && eta.level_iso &&
                                presheaf_map_valid(X, eta.back.pre, eta.eta);
        // the unit intertwines the A-action on the cell with the restricted
        // action on the fixed points of T(X)
        int h = 0;
        for (size_t k = 0; k < O.family.members.size(); ++k)
          if (O.family.members[k].key() == H.key()) h = int(k);
        for (int da = A.cx.lo; da <= A.cx.hi; ++da)
          for (int a = 0; a < A.cx.dim(da); ++a) {
            GradedMap<F> lam =
                tensor_map_graded(graded_identity(C), algebra_action(selfA, da, a));
            GradedMap<F> aT = tensor_map_graded(graded_identity(O.cat.hom[e][h]), lam);
            for (int i = 0; i < O.cat.nobj; ++i) {
              GradedMap<F> aX = tensor_map_graded(graded_identity(O.cat.hom[i][h]), lam);
              GradedMap<F> aU = restrict_graded(aT, eta.back.fixed[i]);
              bool okc = equal_graded(compose_cg(eta.eta.at_obj[i], aX),
                                      compose_gc(aU, eta.eta.at_obj[i]));
              rep.unit_linear_on_cells = rep.unit_linear_on_cells && okc;
            }
          }
        if (use_disk)
          for (auto& v : X.val)
            rep.disk_cells_acyclic = rep.disk_cells_acyclic && acyclic(v);
      }
  return rep;
}

// Splitting a presheaf over orbits-times-algebra into an algebra-module level
// for each orbit object plus orbit-direction structure maps, and merging back.
struct ReindexReport {
  int instances = 0;
  bool input_lawful = true;
  bool split_lawful = true;        // levels, unit/composition in the orbit direction,
                                   // and the interchange law
  bool levels_are_modules = true;  // each level is a lawful A-module
  bool round_trip = true;          // merge(split(X)) == X bit for bit
  bool ok() const { return input_lawful && split_lawful && levels_are_modules && round_trip; }
};

template <class F>
ReindexReport reindex_suite(const OrbitCategory<F>& O, const DGAlgebra<F>& A, uint64_t seed,
                            int trials) {
  const F& f = O.cat.f;
  ReindexReport rep;
  VCatPtr<F> Dp = share(O.cat);
  VCatPtr<F> Ep = share(algebra_category(A));
  VCatPtr<F> prod = share(product_category(*Dp, *Ep));
  Rng rng(mix_seed(seed, "reindex"));
  for (int t = 0; t < trials; ++t) {
    int h = t % prod->nobj;
    ChainComplex<F> M = random_complex(f, rng, 0, 2, 2);
    Presheaf<F> X = representable_presheaf(prod, h, M);
    ++rep.instances;
    rep.input_lawful = rep.input_lawful && presheaf_laws(X);
    CurriedPresheaf<F> C = curry(X, Dp, Ep);
    rep.split_lawful = rep.split_lawful && curried_laws(C);
    for (auto& L : C.level)
      rep.levels_are_modules =
          rep.levels_are_modules && amodule_laws(amodule_from_presheaf(A, L));
    rep.round_trip = rep.round_trip && equal_presheaf(uncurry(C), X);
  }
  return rep;
}

// --- base-change comparison ------------------------------------------------------

// For orbits G/H and G/K: the fixed points (R[G/K])^H tensored with A against
// the G-fixed complex of A-linear maps R[G/H] (x) A -> R[G/K] (x) A, with the
// canonical comparison map.  Verdicts are per instance; nothing is claimed in
// general.
template <class F>
struct TauInstance {
  int i = 0, j = 0;     // indices of H and K in the family
  ChainComplex<F> lhs;  // fixed points (x) A
  ChainComplex<F> rhs;  // G-fixed A-linear hom complex
  ChainMap<F> tau;
  bool chain = false;
  bool qiso = false;
  bool iso = false;
};

template <class F>
std::vector<TauInstance<F>> tau_comparison(F f, const Family& fam, const DGAlgebra<F>& A) {
  GroupPtr G = fam.parent;
  size_t m = fam.members.size();
  std::vector<GModule<F>> perms;
  std::vector<CosetSpace> spaces;
  std::vector<GAModule<F>> mods;
  for (auto& H : fam.members) {
    spaces.push_back(coset_space(H));
    perms.push_back(perm_module(f, coset_gset(H)));
    mods.push_back(extend_gmodule(perms.back(), A));
  }
  std::vector<TauInstance<F>> out;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      TauInstance<F> t;
      t.i = int(i);
      t.j = int(j);
      SubComplex<F> fx = fixed_points(perms[j], fam.members[i]);
      t.lhs = tensor_complex(fx.cx, A.cx);
      HomOverData<F> HO = hom_over(mods[i].am, mods[j].am);
      GModule<F> HG = hom_over_g(mods[i], mods[j], HO);
      SubComplex<F> gfx = fixed_points(HG, full_subgroup(G));
      t.rhs = gfx.cx;
      const ChainComplex<F>& MH = mods[i].gm.cx;
      const ChainComplex<F>& MK = mods[j].gm.cx;
      Matrix<F> FX = fx.incl.at(0);
      int nH = spaces[i].gs.size;
      ChainMap<F> tau{t.lhs, t.rhs, {}};
      for (int n = t.lhs.lo; n <= t.lhs.hi; ++n) {
        if (t.lhs.dim(n) == 0) continue;
        Matrix<F> vals(f, HO.hom.dim(n), t.lhs.dim(n));
        auto cols = tensor_basis(fx.cx, A.cx, n);
        for (size_t c = 0; c < cols.size(); ++c) {
          int w = cols[c].a, a = cols[c].b;
          // tau(w (x) a): cH (x) b -> (-1)^{|a||b|} (rep_c . w) (x) (b a)
          GradedMap<F> psi{MH, MK, n, {}};
          for (int q = MH.lo; q <= MH.hi; ++q) {
            if (MH.dim(q) == 0 || MK.dim(q + n) == 0) continue;
            Matrix<F> comp(f, MK.dim(q + n), MH.dim(q));
            Matrix<F> mm = A.mult.at(q + n);
            bool neg = (n % 2 != 0) && (q % 2 != 0);
            for (int cc = 0; cc < nH; ++cc) {
              Matrix<F> gw = mul(perms[j].action(spaces[i].reps[cc], 0), FX);
              for (int b = 0; b < A.cx.dim(q); ++b) {
                int col = tensor_pos(perms[i].cx, A.cx, q, 0, cc, b);
                int pos = tensor_pos(A.cx, A.cx, q + n, q, b, a);
                for (int r1 = 0; r1 < gw.nr; ++r1) {
                  if (f.is_zero(gw.at(r1, w))) continue;
                  for (int r2 = 0; r2 < mm.nr; ++r2) {
                    if (f.is_zero(mm.at(r2, pos))) continue;
                    auto v = f.mul(gw.at(r1, w), mm.at(r2, pos));
                    if (neg) v = f.neg(v);
                    int row = tensor_pos(perms[j].cx, A.cx, q + n, 0, r1, r2);
                    comp.at(row, col) = f.add(comp.at(row, col), v);
                  }
                }
              }
            }
            psi.set(q, std::move(comp));
          }
          Matrix<F> v = hom_vector(MH, MK, psi);
          for (int r = 0; r < v.nr; ++r) vals.at(r, int(c)) = v.at(r, 0);
        }
        Matrix<F> incl_total = mul(HO.incl.at(n), gfx.incl.at(n));
        auto X = solve(incl_total, vals);
        if (!X) throw std::logic_error("tau_comparison: image not fixed and linear");
        if (X->nr > 0) tau.set(n, *X);
      }
      t.chain = tau.is_chain_map();
      t.qiso = quasi_iso(tau);
      t.iso = degreewise_iso(tau);
      t.tau = std::move(tau);
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace eqha
