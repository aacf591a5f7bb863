#pragma once

#include "eqha/chain.hpp"
#include "eqha/group.hpp"

namespace eqha {

// DG module over R[G]: a chain complex with a chain automorphism per group
// element. Right actions are stored as left actions of the opposite group
// (see SidedModule below), so one representation serves both sides.
template <class F>
struct GModule {
  GroupPtr G;
  ChainComplex<F> cx;
  std::vector<std::vector<Matrix<F>>> act;  // act[g][n - cx.lo]

  Matrix<F> action(int g, int n) const {
    if (n < cx.lo || n > cx.hi) return Matrix<F>(cx.f, 0, 0);
    return act[g][n - cx.lo];
  }

  ChainMap<F> action_map(int g) const {
    ChainMap<F> m{cx, cx, {}};
    for (int n = cx.lo; n <= cx.hi; ++n)
      if (cx.dim(n) > 0) m.set(n, action(g, n));
    return m;
  }

  // Checking chain-map and product compatibility on a generating set accepts
  // exactly the same tables: act(g·h) = act(g)·act(h) for g a generator and h
  // arbitrary forces every entry to be the corresponding product of generator
  // matrices, which is in turn a chain map.
  void validate() const {
    cx.validate();
    if (int(act.size()) != G->n) throw std::logic_error("gmodule: action table size");
    for (int g = 0; g < G->n; ++g) {
      if (int(act[g].size()) != (cx.hi < cx.lo ? 0 : cx.hi - cx.lo + 1))
        throw std::logic_error("gmodule: action degree count");
      for (int n = cx.lo; n <= cx.hi; ++n)
        if (act[g][n - cx.lo].nr != cx.dim(n) || act[g][n - cx.lo].nc != cx.dim(n))
          throw std::logic_error("gmodule: action shape");
    }
    std::vector<int> gens = subgroup_generators(full_subgroup(G));
    for (int g : gens)
      if (!action_map(g).is_chain_map())
        throw std::logic_error("gmodule: action of " + G->labels[g] + " not a chain map");
    for (int n = cx.lo; n <= cx.hi; ++n) {
      if (!action(G->e, n).is_identity())
        throw std::logic_error("gmodule: identity acts nontrivially");
      for (int g : gens)
        for (int h = 0; h < G->n; ++h)
          if (!equal(mul(action(g, n), action(h, n)), action(G->op(g, h), n)))
            throw std::logic_error("gmodule: action not a homomorphism");
    }
  }
};

template <class F, class Fn>
GModule<F> make_gmodule(GroupPtr G, const ChainComplex<F>& cx, Fn&& fn, bool validate = true) {
  GModule<F> M{G, cx, {}};
  M.act.resize(G->n);
  for (int g = 0; g < G->n; ++g)
    for (int n = cx.lo; n <= cx.hi; ++n) M.act[g].push_back(fn(g, n));
  if (validate) M.validate();
  return M;
}

template <class F>
GModule<F> trivial_gmodule(GroupPtr G, const ChainComplex<F>& cx) {
  return make_gmodule(G, cx, [&](int, int n) { return Matrix<F>::identity(cx.f, cx.dim(n)); },
                      false);
}

template <class F>
const ChainComplex<F>& forget(const GModule<F>& M) {
  return M.cx;
}

// Free module on a G-set, concentrated in degree 0.
template <class F>
GModule<F> perm_module(F f, const GSet& S) {
  ChainComplex<F> cx = ChainComplex<F>::concentrated(f, 0, S.size);
  return make_gmodule(S.parent, cx, [&](int g, int) {
    Matrix<F> m(f, S.size, S.size);
    for (int x = 0; x < S.size; ++x) m.at(S.act[g][x], x) = f.one();
    return m;
  });
}

inline GSet left_regular_gset(const GroupPtr& G) {
  std::vector<std::vector<int>> act(G->n, std::vector<int>(G->n));
  for (int g = 0; g < G->n; ++g)
    for (int x = 0; x < G->n; ++x) act[g][x] = G->op(g, x);
  return make_gset(G, std::move(act), G->labels);
}

template <class F>
GModule<F> group_ring(F f, const GroupPtr& G) {
  return perm_module(f, left_regular_gset(G));
}

// R[G] as a Hopf algebra object: multiplication, unit, counit, diagonal
// comultiplication g -> g⊗g, antipode g -> g^{-1}.
template <class F>
struct GroupRingHopf {
  GModule<F> mod;
  ChainMap<F> mult;      // R[G]⊗R[G] -> R[G]
  ChainMap<F> unit;      // S^0 -> R[G]
  ChainMap<F> counit;    // R[G] -> S^0
  ChainMap<F> comult;    // R[G] -> R[G]⊗R[G]
  ChainMap<F> antipode;  // R[G] -> R[G]
};

template <class F>
GroupRingHopf<F> group_ring_hopf(F f, const GroupPtr& G) {
  GroupRingHopf<F> H;
  H.mod = group_ring(f, G);
  const ChainComplex<F>& R = H.mod.cx;
  ChainComplex<F> RR = tensor_complex(R, R);
  int n = G->n;
  Matrix<F> mu(f, n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mu.at(G->op(a, b), tensor_pos(R, R, 0, 0, a, b)) = f.one();
  H.mult = ChainMap<F>{RR, R, {}};
  H.mult.set(0, mu);
  H.unit = ChainMap<F>{sphere(f, 0), R, {}};
  Matrix<F> u(f, n, 1);
  u.at(G->e, 0) = f.one();
  H.unit.set(0, u);
  H.counit = ChainMap<F>{R, sphere(f, 0), {}};
  Matrix<F> cu(f, 1, n);
  for (int a = 0; a < n; ++a) cu.at(0, a) = f.one();
  H.counit.set(0, cu);
  H.comult = ChainMap<F>{R, RR, {}};
  Matrix<F> cm(f, n * n, n);
  for (int a = 0; a < n; ++a) cm.at(tensor_pos(R, R, 0, 0, a, a), a) = f.one();
  H.comult.set(0, cm);
  H.antipode = ChainMap<F>{R, R, {}};
  Matrix<F> s(f, n, n);
  for (int a = 0; a < n; ++a) s.at(G->inv(a), a) = f.one();
  H.antipode.set(0, s);
  return H;
}

// Diagonal action on the tensor product.
template <class F>
GModule<F> tensor_g(const GModule<F>& A, const GModule<F>& B) {
  ChainComplex<F> T = tensor_complex(A.cx, B.cx);
  GModule<F> M{A.G, T, {}};
  M.act.resize(A.G->n);
  for (int g = 0; g < A.G->n; ++g) {
    ChainMap<F> tm = tensor_map(A.action_map(g), B.action_map(g));
    for (int n = T.lo; n <= T.hi; ++n) M.act[g].push_back(tm.at(n));
  }
  return M;
}

// Conjugation action on the hom complex: γ(g)(φ) = β(g) ∘ φ ∘ α(g)^{-1}.
template <class F>
GModule<F> hom_g(const GModule<F>& A, const GModule<F>& B) {
  const F& f = A.cx.f;
  ChainComplex<F> H = hom_complex(A.cx, B.cx);
  GModule<F> M{A.G, H, {}};
  M.act.resize(A.G->n);
  for (int g = 0; g < A.G->n; ++g) {
    int ginv = A.G->inv(g);
    for (int n = H.lo; n <= H.hi; ++n) {
      auto cols = hom_basis(A.cx, B.cx, n);
      Matrix<F> mat(f, H.dim(n), H.dim(n));
      for (size_t c = 0; c < cols.size(); ++c) {
        auto [k, j, i] = cols[c];
        Matrix<F> beta = B.action(g, k + n);
        Matrix<F> alpha_inv = A.action(ginv, k);
        for (int r = 0; r < beta.nr; ++r) {
          if (f.is_zero(beta.at(r, i))) continue;
          for (int cc = 0; cc < alpha_inv.nc; ++cc) {
            if (f.is_zero(alpha_inv.at(j, cc))) continue;
            int row = hom_pos(A.cx, B.cx, n, k, cc, r);
            mat.at(row, int(c)) = f.add(mat.at(row, int(c)), f.mul(beta.at(r, i), alpha_inv.at(j, cc)));
          }
        }
      }
      M.act[g].push_back(std::move(mat));
    }
  }
  return M;
}

// Tensor V ⊙ M and cotensor F(V, M) for V a G-object in chain complexes:
// same underlying constructions, diagonal / conjugation actions.
template <class F>
GModule<F> cotensor_g(const GModule<F>& V, const GModule<F>& M) {
  return hom_g(V, M);
}

// Elements commuting with fm form a subgroup, so generators suffice.
template <class F>
bool is_equivariant(const ChainMap<F>& fm, const GModule<F>& A, const GModule<F>& B) {
  for (int g : subgroup_generators(full_subgroup(A.G)))
    if (!equal_maps(compose(fm, A.action_map(g)), compose(B.action_map(g), fm))) return false;
  return true;
}

// M^H: intersection of the kernels of action(h) - id over generators of H,
// with the induced differential and inclusion.
template <class F>
SubComplex<F> fixed_points(const GModule<F>& M, const Subgroup& H) {
  const F& f = M.cx.f;
  std::vector<int> gens = subgroup_generators(H);
  std::map<int, Matrix<F>> basis;
  for (int n = M.cx.lo; n <= M.cx.hi; ++n) {
    int d = M.cx.dim(n);
    if (gens.empty()) {
      basis[n] = Matrix<F>::identity(f, d);
      continue;
    }
    Matrix<F> stack(f, int(gens.size()) * d, d);
    for (size_t k = 0; k < gens.size(); ++k) {
      Matrix<F> a = M.action(gens[k], n);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          auto v = a.at(r, c);
          if (r == c) v = f.sub(v, f.one());
          stack.at(int(k) * d + r, c) = v;
        }
    }
    basis[n] = nullspace(stack);
  }
  ChainComplex<F> K{f, M.cx.lo, M.cx.hi, {}, {}};
  for (int n = K.lo; n <= K.hi; ++n) K.dims.push_back(basis[n].nc);
  for (int n = K.lo; n <= K.hi; ++n) {
    Matrix<F> img = mul(M.cx.d(n), basis[n]);
    Matrix<F> prev = n - 1 >= K.lo ? basis[n - 1] : Matrix<F>(f, M.cx.dim(n - 1), 0);
    auto X = solve(prev, img);
    if (!X) throw std::logic_error("fixed_points: differential does not preserve fixed vectors");
    K.dif.push_back(*X);
  }
  ChainMap<F> incl{K, M.cx, {}};
  for (int n = K.lo; n <= K.hi; ++n) incl.set(n, basis[n]);
  return {K, incl};
}

// M/H: cokernel of the span of (action(h) - id) over generators, with the
// induced differential and projection.
template <class F>
QuotComplex<F> orbits(const GModule<F>& M, const Subgroup& H) {
  const F& f = M.cx.f;
  std::vector<int> gens = subgroup_generators(H);
  std::map<int, QuotientData<F>> q;
  for (int n = M.cx.lo; n <= M.cx.hi; ++n) {
    int d = M.cx.dim(n);
    Matrix<F> W(f, d, int(gens.size()) * d);
    for (size_t k = 0; k < gens.size(); ++k) {
      Matrix<F> a = M.action(gens[k], n);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          auto v = a.at(r, c);
          if (r == c) v = f.sub(v, f.one());
          W.at(r, int(k) * d + c) = v;
        }
    }
    q[n] = quotient_by(W);
  }
  ChainComplex<F> Q{f, M.cx.lo, M.cx.hi, {}, {}};
  for (int n = Q.lo; n <= Q.hi; ++n) Q.dims.push_back(q[n].proj.nr);
  for (int n = Q.lo; n <= Q.hi; ++n) {
    Matrix<F> prev_proj = n - 1 >= Q.lo ? q[n - 1].proj : Matrix<F>(f, 0, M.cx.dim(n - 1));
    Q.dif.push_back(mul(prev_proj, mul(M.cx.d(n), q[n].sect)));
  }
  ChainMap<F> proj{M.cx, Q, {}};
  for (int n = Q.lo; n <= Q.hi; ++n) proj.set(n, q[n].proj);
  return {Q, proj};
}

// hom_H(M, N): the H-fixed subcomplex of the conjugation hom complex,
// remembering the inclusion so elements can be read back as graded maps.
template <class F>
struct FixedHom {
  ChainComplex<F> cx;
  ChainMap<F> incl;  // into hom_complex(M.cx, N.cx)
};

template <class F>
FixedHom<F> hom_fixed(const GModule<F>& M, const GModule<F>& N, const Subgroup& H) {
  SubComplex<F> s = fixed_points(hom_g(M, N), H);
  return {s.cx, s.incl};
}

// Basis of the space of H-equivariant chain maps M -> N: degree-0 cycles of
// the hom complex that are fixed by the conjugation action.
template <class F>
std::vector<ChainMap<F>> equivariant_chain_maps_basis(const GModule<F>& M, const GModule<F>& N,
                                                      const Subgroup& H) {
  const F& f = M.cx.f;
  GModule<F> HG = hom_g(M, N);
  std::vector<int> gens = subgroup_generators(H);
  Matrix<F> stack = HG.cx.d(0);
  int d0 = HG.cx.dim(0);
  for (int g : gens) {
    Matrix<F> a = HG.action(g, 0);
    if (a.nr == 0) a = Matrix<F>(f, d0, d0);
    for (int r = 0; r < d0; ++r) a.at(r, r) = f.sub(a.at(r, r), f.one());
    stack = vstack(stack, a);
  }
  Matrix<F> Z = nullspace(stack);
  std::vector<ChainMap<F>> out;
  for (int c = 0; c < Z.nc; ++c) {
    GradedMap<F> g = hom_unvector(M.cx, N.cx, 0, Z, c);
    ChainMap<F> fm{M.cx, N.cx, {}};
    for (auto& [n, m] : g.comp) fm.set(n, m);
    out.push_back(std::move(fm));
  }
  return out;
}

// A module over a subgroup H ≤ G, carrying the identification of H as a
// standalone group.
template <class F>
struct HModule {
  Subgroup H;        // inside the ambient group
  SubgroupGroup sg;  // H as its own group; mod.G == sg.grp
  GModule<F> mod;
};

template <class F>
GModule<F> restrict_gmodule(const GModule<F>& M, const SubgroupGroup& sg) {
  GModule<F> R{sg.grp, M.cx, {}};
  R.act.resize(sg.grp->n);
  for (int h = 0; h < sg.grp->n; ++h)
    for (int n = M.cx.lo; n <= M.cx.hi; ++n) R.act[h].push_back(M.action(sg.to_parent[h], n));
  return R;
}

template <class F>
HModule<F> restrict_to(const GModule<F>& M, const Subgroup& H) {
  SubgroupGroup sg = subgroup_as_group(H);
  return {H, sg, restrict_gmodule(M, sg)};
}

enum class Side { left, right };

// Right H-modules are left modules over H^op; `group` keeps the original H
// so element ids line up either way.
template <class F>
struct SidedModule {
  Side side = Side::left;
  GroupPtr group;  // the group H itself
  GModule<F> mod;  // over H (left) or over opposite_group(H) (right)

  Matrix<F> action(int h, int n) const { return mod.action(h, n); }
};

template <class F>
SidedModule<F> left_sided(const GModule<F>& M) {
  return {Side::left, M.G, M};
}

template <class F, class Fn>
SidedModule<F> make_right_module(GroupPtr H, const ChainComplex<F>& cx, Fn&& rho,
                                 bool validate = true) {
  GModule<F> M = make_gmodule(opposite_group(H), cx, rho, validate);
  return {Side::right, H, M};
}

// Right action x·h := h^{-1}·x turns a left module into a right one.
template <class F>
SidedModule<F> right_via_inverse(const GModule<F>& M) {
  GroupPtr H = M.G;
  return make_right_module(H, M.cx, [&](int h, int n) { return M.action(H->inv(h), n); }, false);
}

}  // namespace eqha
