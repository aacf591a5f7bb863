#pragma once

#include "eqha/gmodule.hpp"

namespace eqha {

// Evaluation R[H]⊗X -> X, h⊗x ↦ h·x, for a left module X (R[H] sits in
// degree 0, so no signs appear anywhere below).
template <class F>
ChainMap<F> action_evaluation(const GModule<F>& X) {
  const F& f = X.cx.f;
  ChainComplex<F> RH = ChainComplex<F>::concentrated(f, 0, X.G->n);
  ChainComplex<F> RX = tensor_complex(RH, X.cx);
  ChainMap<F> ev{RX, X.cx, {}};
  for (int n = RX.lo; n <= RX.hi; ++n) {
    if (RX.dim(n) == 0 || X.cx.dim(n) == 0) continue;
    Matrix<F> m(f, X.cx.dim(n), RX.dim(n));
    for (int h = 0; h < X.G->n; ++h) {
      Matrix<F> al = X.action(h, n);
      for (int r = 0; r < al.nr; ++r)
        for (int c = 0; c < al.nc; ++c)
          if (!f.is_zero(al.at(r, c))) m.at(r, tensor_pos(RH, X.cx, n, 0, h, c)) = al.at(r, c);
    }
    ev.set(n, m);
  }
  return ev;
}

// x ↦ s⊗x into P⊗X for P concentrated in degree 0, s a fixed basis index.
template <class F>
ChainMap<F> tensor_insert(const ChainComplex<F>& P, const ChainComplex<F>& X, int s) {
  ChainComplex<F> T = tensor_complex(P, X);
  ChainMap<F> m{X, T, {}};
  for (int n = X.lo; n <= X.hi; ++n) {
    if (X.dim(n) == 0) continue;
    Matrix<F> J(X.f, T.dim(n), X.dim(n));
    for (int j = 0; j < X.dim(n); ++j) J.at(tensor_pos(P, X, n, 0, s, j), j) = X.f.one();
    m.set(n, J);
  }
  return m;
}

// φ ↦ φ(x_s) out of hom(P, X) for P concentrated in degree 0.
template <class F>
ChainMap<F> hom_eval_at(const ChainComplex<F>& P, const ChainComplex<F>& X, int s) {
  ChainComplex<F> H = hom_complex(P, X);
  ChainMap<F> m{H, X, {}};
  for (int n = H.lo; n <= H.hi; ++n) {
    if (H.dim(n) == 0 || X.dim(n) == 0) continue;
    Matrix<F> E(X.f, X.dim(n), H.dim(n));
    for (int i = 0; i < X.dim(n); ++i) E.at(i, hom_pos(P, X, n, 0, s, i)) = X.f.one();
    m.set(n, E);
  }
  return m;
}

// --- orbit tensor V ⊙_H M ----------------------------------------------------

template <class F>
struct OrbitTensor {
  ChainComplex<F> tensor;  // V ⊗ M
  ChainComplex<F> cx;      // the coequalizer
  ChainMap<F> proj;        // V⊗M -> cx
  GradedMap<F> sect;       // degreewise section of proj
};

// Coequalizer of V⊗R[H]⊗M ⇉ V⊗M: top map acts on V, bottom on M.
template <class F>
OrbitTensor<F> orbit_tensor(const SidedModule<F>& V, const SidedModule<F>& Ms) {
  if (V.side != Side::right || Ms.side != Side::left)
    throw std::invalid_argument("orbit_tensor: need a right module and a left module");
  if (V.group != Ms.group)
    throw std::invalid_argument("orbit_tensor: modules over different groups");
  const GModule<F>& M = Ms.mod;
  GroupPtr H = V.group;
  const F& f = M.cx.f;
  ChainComplex<F> T = tensor_complex(V.mod.cx, M.cx);
  ChainComplex<F> RH = ChainComplex<F>::concentrated(f, 0, H->n);
  ChainComplex<F> RM = tensor_complex(RH, M.cx);
  ChainComplex<F> VRM = tensor_complex(V.mod.cx, RM);
  ChainMap<F> a{VRM, T, {}}, b{VRM, T, {}};
  for (int n = VRM.lo; n <= VRM.hi; ++n) {
    if (VRM.dim(n) == 0 || T.dim(n) == 0) continue;
    Matrix<F> ma(f, T.dim(n), VRM.dim(n)), mb(f, T.dim(n), VRM.dim(n));
    auto cols = tensor_basis(V.mod.cx, RM, n);
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [i, va, hm] = cols[c];
      int md = M.cx.dim(n - i);
      int h = hm / md, mj = hm % md;
      Matrix<F> rho = V.mod.action(h, i);
      for (int r = 0; r < rho.nr; ++r)
        if (!f.is_zero(rho.at(r, va)))
          ma.at(tensor_pos(V.mod.cx, M.cx, n, i, r, mj), int(c)) = rho.at(r, va);
      Matrix<F> al = M.action(h, n - i);
      for (int r = 0; r < al.nr; ++r)
        if (!f.is_zero(al.at(r, mj)))
          mb.at(tensor_pos(V.mod.cx, M.cx, n, i, va, r), int(c)) = al.at(r, mj);
    }
    a.set(n, std::move(ma));
    b.set(n, std::move(mb));
  }
  QuotComplex<F> q = coequalizer_complex(a, b);
  return {T, q.cx, q.proj, section_of(q.proj)};
}

template <class F>
OrbitTensor<F> orbit_tensor(const SidedModule<F>& V, const GModule<F>& M) {
  return orbit_tensor(V, left_sided(M));
}

// The twisted diagonal action h·(v⊗m) = v·h^{-1} ⊗ h·m; its orbits give an
// independent route to the same coequalizer.
template <class F>
GModule<F> twisted_diagonal(const SidedModule<F>& V, const GModule<F>& M) {
  if (V.side != Side::right)
    throw std::invalid_argument("twisted_diagonal: first factor must be a right module");
  GroupPtr H = V.group;
  ChainComplex<F> T = tensor_complex(V.mod.cx, M.cx);
  GModule<F> out{H, T, {}};
  out.act.resize(H->n);
  for (int h = 0; h < H->n; ++h) {
    ChainMap<F> tm = tensor_map(V.mod.action_map(H->inv(h)), M.action_map(h));
    for (int n = T.lo; n <= T.hi; ++n) out.act[h].push_back(tm.at(n));
  }
  return out;
}

// --- fixed cotensor F_H(V, N) --------------------------------------------------

template <class F>
struct FixedCotensor {
  ChainComplex<F> hom;  // hom_complex(V, N)
  ChainComplex<F> cx;   // the equalizer
  ChainMap<F> incl;     // cx -> hom
};

// Equalizer of F(V,N) ⇉ F(R[H]⊗V, N): top map precomposes with the action
// on V, bottom postcomposes with the action on N.
template <class F>
FixedCotensor<F> fixed_cotensor(const GModule<F>& V, const GModule<F>& N) {
  if (V.G != N.G) throw std::invalid_argument("fixed_cotensor: modules over different groups");
  GroupPtr H = V.G;
  const F& f = V.cx.f;
  ChainComplex<F> HOM = hom_complex(V.cx, N.cx);
  ChainMap<F> a = hom_pre(action_evaluation(V), N.cx);
  ChainComplex<F> RH = ChainComplex<F>::concentrated(f, 0, H->n);
  ChainComplex<F> RV = tensor_complex(RH, V.cx);
  ChainComplex<F> HOM2 = hom_complex(RV, N.cx);
  ChainMap<F> b{HOM, HOM2, {}};
  for (int n = HOM.lo; n <= HOM.hi; ++n) {
    if (HOM.dim(n) == 0 || HOM2.dim(n) == 0) continue;
    auto cols = hom_basis(V.cx, N.cx, n);
    Matrix<F> mb(f, HOM2.dim(n), HOM.dim(n));
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      for (int h = 0; h < H->n; ++h) {
        Matrix<F> be = N.action(h, k + n);
        int pos = tensor_pos(RH, V.cx, k, 0, h, j);
        for (int r = 0; r < be.nr; ++r)
          if (!f.is_zero(be.at(r, i)))
            mb.at(hom_pos(RV, N.cx, n, k, pos, r), int(c)) = be.at(r, i);
      }
    }
    b.set(n, std::move(mb));
  }
  SubComplex<F> s = equalizer_complex(a, b);
  return {HOM, s.cx, s.incl};
}

// --- induction and coinduction along H ≤ G -------------------------------------

template <class F>
struct InducedModule {
  Subgroup H;
  SubgroupGroup sg;
  GModule<F> mod;     // over G; underlying complex is ot.cx
  OrbitTensor<F> ot;  // R[G] ⊙_H N
  ChainMap<F> unit;   // N -> ind N (H-equivariantly), n ↦ [e⊗n]
};

// R[G] as a right H-module by right translation.
template <class F>
SidedModule<F> group_ring_right_restricted(F f, GroupPtr G, const SubgroupGroup& sg) {
  ChainComplex<F> cx = ChainComplex<F>::concentrated(f, 0, G->n);
  return make_right_module(sg.grp, cx, [&](int h, int) {
    Matrix<F> m(f, G->n, G->n);
    int hp = sg.to_parent[h];
    for (int x = 0; x < G->n; ++x) m.at(G->op(x, hp), x) = f.one();
    return m;
  });
}

template <class F>
InducedModule<F> induction(const HModule<F>& N) {
  GroupPtr G = N.H.parent;
  const F& f = N.mod.cx.f;
  GModule<F> RG = group_ring(f, G);
  SidedModule<F> rgt = group_ring_right_restricted(f, G, N.sg);
  OrbitTensor<F> ot = orbit_tensor(rgt, N.mod);
  GModule<F> ind{G, ot.cx, {}};
  ind.act.resize(G->n);
  for (int g = 0; g < G->n; ++g) {
    ChainMap<F> lg = tensor_map(RG.action_map(g), identity_map(N.mod.cx));
    for (int n = ot.cx.lo; n <= ot.cx.hi; ++n)
      ind.act[g].push_back(mul(ot.proj.at(n), mul(lg.at(n), ot.sect.at(n))));
  }
  ind.validate();
  ChainMap<F> ins = tensor_insert(RG.cx, N.mod.cx, G->e);
  ChainMap<F> unit = compose(ot.proj, ins);
  return {N.H, N.sg, std::move(ind), std::move(ot), std::move(unit)};
}

// ind(res M) -> M, [g⊗m] ↦ g·m. IR must be induction(restrict_to(M, H)).
template <class F>
ChainMap<F> induction_counit(const InducedModule<F>& IR, const GModule<F>& M) {
  ChainMap<F> ea = action_evaluation(M);
  return chain_map_from(IR.mod.cx, M.cx, [&](int n) { return mul(ea.at(n), IR.ot.sect.at(n)); });
}

// Functoriality: R[G]⊙_H ζ for an H-equivariant ζ: A -> B.
template <class F>
ChainMap<F> induced_map(const InducedModule<F>& IA, const InducedModule<F>& IB,
                        const ChainMap<F>& zeta) {
  const F& f = zeta.src.f;
  GroupPtr G = IA.H.parent;
  ChainComplex<F> RGcx = ChainComplex<F>::concentrated(f, 0, G->n);
  ChainMap<F> mid = tensor_map(identity_map(RGcx), zeta);
  return chain_map_from(IA.mod.cx, IB.mod.cx, [&](int n) {
    return mul(IB.ot.proj.at(n), mul(mid.at(n), IA.ot.sect.at(n)));
  });
}

template <class F>
struct CoinducedModule {
  Subgroup H;
  SubgroupGroup sg;
  GModule<F> mod;       // over G; underlying complex is fc.cx
  FixedCotensor<F> fc;  // F_H(R[G], N)
  ChainMap<F> counit;   // coind N -> N (H-equivariantly), φ ↦ φ(e)
};

template <class F>
CoinducedModule<F> coinduction(const HModule<F>& N) {
  GroupPtr G = N.H.parent;
  const F& f = N.mod.cx.f;
  GModule<F> RG = group_ring(f, G);
  GModule<F> RGH = restrict_gmodule(RG, N.sg);
  FixedCotensor<F> fc = fixed_cotensor(RGH, N.mod);
  GModule<F> coind{G, fc.cx, {}};
  coind.act.resize(G->n);
  for (int g = 0; g < G->n; ++g) {
    // (g·φ)(x) = φ(xg): precompose with right translation by g
    ChainMap<F> rt{RG.cx, RG.cx, {}};
    Matrix<F> P(f, G->n, G->n);
    for (int x = 0; x < G->n; ++x) P.at(G->op(x, g), x) = f.one();
    rt.set(0, std::move(P));
    ChainMap<F> pre = hom_pre(rt, N.mod.cx);
    for (int n = fc.cx.lo; n <= fc.cx.hi; ++n) {
      auto X = solve(fc.incl.at(n), mul(pre.at(n), fc.incl.at(n)));
      if (!X) throw std::logic_error("coinduction: translation does not preserve the equalizer");
      coind.act[g].push_back(*X);
    }
  }
  coind.validate();
  ChainMap<F> ev = hom_eval_at(RG.cx, N.mod.cx, G->e);
  ChainMap<F> counit = compose(ev, fc.incl);
  return {N.H, N.sg, std::move(coind), std::move(fc), std::move(counit)};
}

// --- adjunction witnesses -------------------------------------------------------

template <class F>
struct AdjunctionIso {
  FixedHom<F> lhs, rhs;
  IsoWitness<F> iso;

  bool verify() const { return iso.verify(); }
};

// Assemble a chain map dom.cx -> cod.cx of fixed-hom complexes from a rule on
// the underlying graded maps; solving through cod.incl certifies that every
// image is again fixed.
template <class F, class Fn>
ChainMap<F> map_on_fixed(const FixedHom<F>& dom, const ChainComplex<F>& dA,
                         const ChainComplex<F>& dB, const FixedHom<F>& cod,
                         const ChainComplex<F>& cA, const ChainComplex<F>& cB, Fn&& fn) {
  const F& f = dA.f;
  ChainMap<F> out{dom.cx, cod.cx, {}};
  for (int p = dom.cx.lo; p <= dom.cx.hi; ++p) {
    int dn = dom.cx.dim(p);
    if (dn == 0) continue;
    Matrix<F> incl_p = dom.incl.at(p);
    Matrix<F> vals(f, cod.incl.at(p).nr, dn);
    for (int c = 0; c < dn; ++c) {
      GradedMap<F> g = hom_unvector(dA, dB, p, incl_p, c);
      Matrix<F> v = hom_vector(cA, cB, fn(g));
      for (int r = 0; r < v.nr; ++r) vals.at(r, c) = v.at(r, 0);
    }
    auto X = solve(cod.incl.at(p), vals);
    if (!X) throw std::logic_error("map_on_fixed: image not in the fixed subcomplex");
    if (X->nr > 0) out.set(p, *X);
  }
  return out;
}

// (θ∘−) and (−∘θ) between fixed-hom complexes, for equivariant θ.
template <class F>
ChainMap<F> fixed_hom_post(const FixedHom<F>& dom, const ChainComplex<F>& A,
                           const FixedHom<F>& cod, const ChainMap<F>& theta) {
  return restrict_map(hom_post(A, theta), dom.incl, cod.incl);
}

template <class F>
ChainMap<F> fixed_hom_pre(const FixedHom<F>& dom, const FixedHom<F>& cod,
                          const ChainMap<F>& theta, const ChainComplex<F>& B) {
  return restrict_map(hom_pre(theta, B), dom.incl, cod.incl);
}

// hom_{GM}(ind N, M) ≅ hom_{HM}(N, res M):
//   Φ(φ) = φ∘η,  Ψ(ψ) = ev∘(id_{R[G]}⊗ψ)∘sect.
template <class F>
AdjunctionIso<F> induction_adjunction(const InducedModule<F>& IN, const HModule<F>& N,
                                      const GModule<F>& M) {
  GroupPtr G = M.G;
  const F& f = M.cx.f;
  GModule<F> resM = restrict_gmodule(M, N.sg);
  FixedHom<F> lhs = hom_fixed(IN.mod, M, full_subgroup(G));
  FixedHom<F> rhs = hom_fixed(N.mod, resM, full_subgroup(N.sg.grp));
  ChainMap<F> fwd = map_on_fixed(lhs, IN.mod.cx, M.cx, rhs, N.mod.cx, M.cx,
                                 [&](const GradedMap<F>& g) { return compose_gc(g, IN.unit); });
  ChainMap<F> ea = action_evaluation(M);
  ChainComplex<F> RGcx = ChainComplex<F>::concentrated(f, 0, G->n);
  GradedMap<F> idRG = graded_identity(RGcx);
  ChainMap<F> bwd = map_on_fixed(rhs, N.mod.cx, M.cx, lhs, IN.mod.cx, M.cx,
                                 [&](const GradedMap<F>& g) {
                                   GradedMap<F> mid = tensor_map_graded(idRG, g);
                                   GradedMap<F> out{IN.mod.cx, M.cx, g.deg, {}};
                                   for (int q = IN.mod.cx.lo; q <= IN.mod.cx.hi; ++q) {
                                     Matrix<F> m =
                                         mul(ea.at(q + g.deg), mul(mid.at(q), IN.ot.sect.at(q)));
                                     if (m.nr > 0 && m.nc > 0) out.set(q, m);
                                   }
                                   return out;
                                 });
  return {std::move(lhs), std::move(rhs), IsoWitness<F>{std::move(fwd), std::move(bwd)}};
}

// hom_{GM}(M, coind N) ≅ hom_{HM}(res M, N):
//   Φ(φ) = ε∘φ,  Ψ(ψ) = (m ↦ (x ↦ ψ(x·m))).
template <class F>
AdjunctionIso<F> coinduction_adjunction(const CoinducedModule<F>& CN, const HModule<F>& N,
                                        const GModule<F>& M) {
  GroupPtr G = M.G;
  const F& f = M.cx.f;
  GModule<F> resM = restrict_gmodule(M, N.sg);
  FixedHom<F> lhs = hom_fixed(M, CN.mod, full_subgroup(G));
  FixedHom<F> rhs = hom_fixed(resM, N.mod, full_subgroup(N.sg.grp));
  ChainMap<F> fwd = map_on_fixed(lhs, M.cx, CN.mod.cx, rhs, M.cx, N.mod.cx,
                                 [&](const GradedMap<F>& g) { return compose_cg(CN.counit, g); });
  ChainComplex<F> RGcx = ChainComplex<F>::concentrated(f, 0, G->n);
  ChainMap<F> bwd = map_on_fixed(
      rhs, M.cx, N.mod.cx, lhs, M.cx, CN.mod.cx, [&](const GradedMap<F>& g) {
        GradedMap<F> out{M.cx, CN.mod.cx, g.deg, {}};
        for (int q = M.cx.lo; q <= M.cx.hi; ++q) {
          int dm = M.cx.dim(q);
          if (dm == 0) continue;
          Matrix<F> hv(f, CN.fc.hom.dim(q + g.deg), dm);
          for (int x = 0; x < G->n; ++x) {
            Matrix<F> w = mul(g.at(q), M.action(x, q));
            for (int m = 0; m < dm; ++m)
              for (int i = 0; i < w.nr; ++i)
                if (!f.is_zero(w.at(i, m)))
                  hv.at(hom_pos(RGcx, N.mod.cx, q + g.deg, 0, x, i), m) = w.at(i, m);
          }
          auto X = solve(CN.fc.incl.at(q + g.deg), hv);
          if (!X) throw std::logic_error("coinduction_adjunction: image not equivariant");
          if (X->nr > 0) out.set(q, *X);
        }
        return out;
      });
  return {std::move(lhs), std::move(rhs), IsoWitness<F>{std::move(fwd), std::move(bwd)}};
}

// --- the key isomorphism hom_{GM}(R[G/H]⊙M, N) ≅ hom_M(M, N^H) ------------------

template <class F>
struct KeyWitness {
  GModule<F> source;    // R[G/H] ⊗ M with G acting on the cosets only
  FixedHom<F> lhs;      // hom_{GM}(R[G/H]⊗M, N)
  SubComplex<F> fixed;  // N^H
  ChainComplex<F> rhs;  // hom(M, N^H)
  IsoWitness<F> iso;
};

template <class F>
KeyWitness<F> key_iso(const ChainComplex<F>& Mcx, const GModule<F>& N, const Subgroup& H) {
  GroupPtr G = N.G;
  const F& f = Mcx.f;
  GModule<F> P = perm_module(f, coset_gset(H));
  GModule<F> A = tensor_g(P, trivial_gmodule(G, Mcx));
  FixedHom<F> lhs = hom_fixed(A, N, full_subgroup(G));
  SubComplex<F> NH = fixed_points(N, H);
  ChainComplex<F> rhs = hom_complex(Mcx, NH.cx);
  CosetSpace cs = coset_space(H);
  // Φ(φ) = (m ↦ φ(eH⊗m)), factored through N^H
  ChainMap<F> ins = tensor_insert(P.cx, Mcx, cs.e_coset);
  ChainMap<F> postN = hom_post(Mcx, NH.incl);
  ChainMap<F> fwd = restrict_map(hom_pre(ins, N.cx), lhs.incl, postN);
  // Ψ(ψ) = (cH⊗m ↦ rep_c·ψ(m))
  ChainComplex<F> HOMA = hom_complex(A.cx, N.cx);
  ChainMap<F> bwd{rhs, lhs.cx, {}};
  int nc = cs.gs.size;
  for (int p = rhs.lo; p <= rhs.hi; ++p) {
    if (rhs.dim(p) == 0) continue;
    Matrix<F> vals(f, HOMA.dim(p), rhs.dim(p));
    Matrix<F> id = Matrix<F>::identity(f, rhs.dim(p));
    for (int c = 0; c < rhs.dim(p); ++c) {
      GradedMap<F> psi = hom_unvector(Mcx, NH.cx, p, id, c);
      GradedMap<F> phi{A.cx, N.cx, p, {}};
      for (int k = Mcx.lo; k <= Mcx.hi; ++k) {
        if (A.cx.dim(k) == 0 || N.cx.dim(k + p) == 0) continue;
        Matrix<F> comp(f, N.cx.dim(k + p), A.cx.dim(k));
        Matrix<F> img = mul(NH.incl.at(k + p), psi.at(k));  // ψ(m) inside N
        for (int cc = 0; cc < nc; ++cc) {
          Matrix<F> gimg = mul(N.action(cs.reps[cc], k + p), img);
          for (int j = 0; j < Mcx.dim(k); ++j) {
            int col = tensor_pos(P.cx, Mcx, k, 0, cc, j);
            for (int r = 0; r < gimg.nr; ++r) comp.at(r, col) = gimg.at(r, j);
          }
        }
        phi.set(k, std::move(comp));
      }
      Matrix<F> v = hom_vector(A.cx, N.cx, phi);
      for (int r = 0; r < v.nr; ++r) vals.at(r, c) = v.at(r, 0);
    }
    auto X = solve(lhs.incl.at(p), vals);
    if (!X) throw std::logic_error("key_iso: image not equivariant");
    if (X->nr > 0) bwd.set(p, *X);
  }
  return {std::move(A), std::move(lhs), std::move(NH), std::move(rhs),
          IsoWitness<F>{std::move(fwd), std::move(bwd)}};
}

// --- currying witnesses ---------------------------------------------------------

// hom(M⊗V, N) ≅ hom(M, hom(V,N)): ν(f)(m)(v) = f(m⊗v), no sign.
template <class F>
IsoWitness<F> curry_first(const ChainComplex<F>& M, const ChainComplex<F>& V,
                          const ChainComplex<F>& N) {
  const F& f = M.f;
  ChainComplex<F> T = tensor_complex(M, V);
  ChainComplex<F> S = hom_complex(T, N);
  ChainComplex<F> HVN = hom_complex(V, N);
  ChainComplex<F> D = hom_complex(M, HVN);
  ChainMap<F> fwd{S, D, {}}, bwd{D, S, {}};
  for (int p = S.lo; p <= S.hi; ++p) {
    if (S.dim(p) == 0 || D.dim(p) == 0) continue;
    Matrix<F> m(f, D.dim(p), S.dim(p));
    auto cols = hom_basis(T, N, p);
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      auto tb = tensor_basis(M, V, k);
      auto [dm, a, b] = tb[j];
      int inner = hom_pos(V, N, p + dm, k - dm, b, i);
      m.at(hom_pos(M, HVN, p, dm, a, inner), int(c)) = f.one();
    }
    fwd.set(p, m);
    bwd.set(p, transpose(m));
  }
  return {std::move(fwd), std::move(bwd)};
}

// hom(M⊗V, N) ≅ hom(V, hom(M,N)): λ(f)(v)(m) = (−1)^{|m||v|} f(m⊗v).
template <class F>
IsoWitness<F> curry_second(const ChainComplex<F>& M, const ChainComplex<F>& V,
                           const ChainComplex<F>& N) {
  const F& f = M.f;
  ChainComplex<F> T = tensor_complex(M, V);
  ChainComplex<F> S = hom_complex(T, N);
  ChainComplex<F> HMN = hom_complex(M, N);
  ChainComplex<F> D = hom_complex(V, HMN);
  ChainMap<F> fwd{S, D, {}}, bwd{D, S, {}};
  for (int p = S.lo; p <= S.hi; ++p) {
    if (S.dim(p) == 0 || D.dim(p) == 0) continue;
    Matrix<F> m(f, D.dim(p), S.dim(p));
    auto cols = hom_basis(T, N, p);
    for (size_t c = 0; c < cols.size(); ++c) {
      auto [k, j, i] = cols[c];
      auto tb = tensor_basis(M, V, k);
      auto [dm, a, b] = tb[j];
      int dv = k - dm;
      int inner = hom_pos(M, N, p + dv, dm, a, i);
      auto v = f.one();
      if (dm % 2 != 0 && dv % 2 != 0) v = f.neg(v);
      m.at(hom_pos(V, HMN, p, dv, b, inner), int(c)) = v;
    }
    fwd.set(p, m);
    bwd.set(p, transpose(m));
  }
  return {std::move(fwd), std::move(bwd)};
}

template <class F>
struct BitensorWitness {
  IsoWitness<F> full;   // between the two hom complexes
  bool equivariant;     // the witness commutes with both conjugation actions
  IsoWitness<F> fixed;  // restricted to the G-fixed subcomplexes
};

// hom(M⊙V, N) ≅ hom(V, hom(M,N)) as G-complexes.
template <class F>
BitensorWitness<F> bitensor_adjunction(const GModule<F>& M, const GModule<F>& V,
                                       const GModule<F>& N) {
  GroupPtr G = M.G;
  IsoWitness<F> full = curry_second(M.cx, V.cx, N.cx);
  GModule<F> HL = hom_g(tensor_g(M, V), N);
  GModule<F> HR = hom_g(V, hom_g(M, N));
  // hom_g(V, hom_g(M,N)) equips hom(V, hom(M,N)) with γ(g) = conj. on both layers
  bool eqv = is_equivariant(full.fwd, HL, HR);
  Subgroup fullG = full_subgroup(G);
  SubComplex<F> fl = fixed_points(HL, fullG);
  SubComplex<F> fr = fixed_points(HR, fullG);
  IsoWitness<F> fixed{restrict_map(full.fwd, fl.incl, fr.incl),
                      restrict_map(full.bwd, fr.incl, fl.incl)};
  return {std::move(full), eqv, std::move(fixed)};
}

// hom(M⊙V, N) ≅ hom(M, F(V,N)) as G-complexes.
template <class F>
BitensorWitness<F> bitensor_adjunction_cotensor(const GModule<F>& M, const GModule<F>& V,
                                                const GModule<F>& N) {
  GroupPtr G = M.G;
  IsoWitness<F> full = curry_first(M.cx, V.cx, N.cx);
  GModule<F> HL = hom_g(tensor_g(M, V), N);
  GModule<F> HR = hom_g(M, cotensor_g(V, N));
  bool eqv = is_equivariant(full.fwd, HL, HR);
  Subgroup fullG = full_subgroup(G);
  SubComplex<F> fl = fixed_points(HL, fullG);
  SubComplex<F> fr = fixed_points(HR, fullG);
  IsoWitness<F> fixed{restrict_map(full.fwd, fl.incl, fr.incl),
                      restrict_map(full.bwd, fr.incl, fl.incl)};
  return {std::move(full), eqv, std::move(fixed)};
}

// --- M/H ≅ R[G/H]⊙_G M and M^H ≅ F_G(R[G/H], M) ---------------------------------

template <class F>
struct OrbitComparison {
  QuotComplex<F> orb;  // M/H
  OrbitTensor<F> ot;   // R[G/H] ⊙_G M
  IsoWitness<F> iso;   // orb.cx ≅ ot.cx
};

template <class F>
OrbitComparison<F> orbits_as_orbit_tensor(const GModule<F>& M, const Subgroup& H) {
  GroupPtr G = M.G;
  const F& f = M.cx.f;
  GModule<F> P = perm_module(f, coset_gset(H));
  SidedModule<F> Pr = right_via_inverse(P);
  OrbitTensor<F> ot = orbit_tensor(Pr, M);
  QuotComplex<F> orb = orbits(M, H);
  GradedMap<F> sectOrb = section_of(orb.proj);
  CosetSpace cs = coset_space(H);
  ChainMap<F> ins = tensor_insert(P.cx, M.cx, cs.e_coset);
  ChainMap<F> fwd = chain_map_from(orb.cx, ot.cx, [&](int n) {
    return mul(ot.proj.at(n), mul(ins.at(n), sectOrb.at(n)));
  });
  int nc = cs.gs.size;
  ChainMap<F> bwd = chain_map_from(ot.cx, orb.cx, [&](int n) {
    Matrix<F> K(f, M.cx.dim(n), ot.tensor.dim(n));
    for (int cc = 0; cc < nc; ++cc) {
      Matrix<F> al = M.action(G->inv(cs.reps[cc]), n);
      for (int j = 0; j < M.cx.dim(n); ++j) {
        int col = tensor_pos(P.cx, M.cx, n, 0, cc, j);
        for (int r = 0; r < al.nr; ++r) K.at(r, col) = al.at(r, j);
      }
    }
    return mul(orb.proj.at(n), mul(K, ot.sect.at(n)));
  });
  return {std::move(orb), std::move(ot), IsoWitness<F>{std::move(fwd), std::move(bwd)}};
}

template <class F>
struct FixedComparison {
  SubComplex<F> fix;    // M^H
  FixedCotensor<F> fc;  // F_G(R[G/H], M)
  IsoWitness<F> iso;    // fix.cx ≅ fc.cx
};

template <class F>
FixedComparison<F> fixed_as_cotensor(const GModule<F>& M, const Subgroup& H) {
  GroupPtr G = M.G;
  const F& f = M.cx.f;
  GModule<F> P = perm_module(f, coset_gset(H));
  FixedCotensor<F> fc = fixed_cotensor(P, M);
  SubComplex<F> fix = fixed_points(M, H);
  CosetSpace cs = coset_space(H);
  int nc = cs.gs.size;
  ChainMap<F> fwd = chain_map_from(fix.cx, fc.cx, [&](int n) {
    Matrix<F> vals(f, fc.hom.dim(n), fix.cx.dim(n));
    Matrix<F> x = fix.incl.at(n);
    for (int cc = 0; cc < nc; ++cc) {
      Matrix<F> gx = mul(M.action(cs.reps[cc], n), x);
      for (int c = 0; c < gx.nc; ++c)
        for (int i = 0; i < gx.nr; ++i)
          if (!f.is_zero(gx.at(i, c))) vals.at(hom_pos(P.cx, M.cx, n, 0, cc, i), c) = gx.at(i, c);
    }
    auto X = solve(fc.incl.at(n), vals);
    if (!X) throw std::logic_error("fixed_as_cotensor: image not in the equalizer");
    return *X;
  });
  ChainMap<F> ev = hom_eval_at(P.cx, M.cx, cs.e_coset);
  ChainMap<F> bwd = chain_map_from(fc.cx, fix.cx, [&](int n) {
    auto X = solve(fix.incl.at(n), mul(ev.at(n), fc.incl.at(n)));
    if (!X) throw std::logic_error("fixed_as_cotensor: evaluation not H-fixed");
    return *X;
  });
  return {std::move(fix), std::move(fc), IsoWitness<F>{std::move(fwd), std::move(bwd)}};
}

}  // namespace eqha
