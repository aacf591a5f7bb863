#pragma once

#include "eqha/dga.hpp"

namespace eqha {

// --- generating cofibrations --------------------------------------------------

// Shape of a generating map: the boundary inclusion S^{n-1} -> D^n (a
// cofibration) or 0 -> D^n (an acyclic cofibration).
enum class CellKind { sphere_to_disk, zero_to_disk };

// The free module on one orbit and one disk: R[G/H] ⊗ D^n.
template <class F>
GModule<F> free_cell_module(F f, const Subgroup& H, int n) {
  GModule<F> P = perm_module(f, coset_gset(H));
  return tensor_g(P, trivial_gmodule(H.parent, disk(f, n)));
}

// One generator wrapped by an orbit and optionally an algebra:
// R[G/H] ⊗ (A ⊗) i.  The unwrapped ends are kept alongside the wrapped
// modules because hom out of the wrapped source reduces to hom out of the
// core into H-fixed points.
template <class F>
struct Generator {
  CellKind kind;
  Subgroup H;
  int n = 0;                           // disk degree; the cell spans n-1, n
  ChainComplex<F> core_src, core_dst;  // (A ⊗) S^{n-1} or 0, and (A ⊗) D^n
  ChainMap<F> core;                    // core_src -> core_dst
  GModule<F> src, dst;
  ChainMap<F> map;                     // src.cx -> dst.cx, degreewise split injective
};

template <class F>
std::vector<Generator<F>> wrap_generators(F f, const Family& fam, CellKind kind, int lo, int hi,
                                          const DGAlgebra<F>* A = nullptr) {
  std::vector<Generator<F>> out;
  for (const Subgroup& H : fam.members)
    for (int n = lo; n <= hi; ++n) {
      Generator<F> g;
      g.kind = kind;
      g.H = H;
      g.n = n;
      ChainComplex<F> s0 = kind == CellKind::sphere_to_disk ? sphere(f, n - 1)
                                                            : ChainComplex<F>::zero(f);
      ChainComplex<F> d0 = disk(f, n);
      ChainMap<F> i0 =
          kind == CellKind::sphere_to_disk ? sphere_to_disk(f, n) : zero_map(s0, d0);
      if (A) {
        g.core_src = tensor_complex(A->cx, s0);
        g.core_dst = tensor_complex(A->cx, d0);
        g.core = tensor_map(identity_map(A->cx), i0);
      } else {
        g.core_src = s0;
        g.core_dst = d0;
        g.core = i0;
      }
      GModule<F> P = perm_module(f, coset_gset(H));
      g.src = tensor_g(P, trivial_gmodule(fam.parent, g.core_src));
      g.dst = tensor_g(P, trivial_gmodule(fam.parent, g.core_dst));
      g.map = tensor_map(identity_map(P.cx), g.core);
      out.push_back(std::move(g));
    }
  return out;
}

// The same generators in presheaf form: the free presheaf at each orbit of
// the family, applied to the two ends of the disk inclusion.
template <class F>
struct PresheafGenerator {
  CellKind kind;
  Subgroup H;
  int h = 0;  // object index of G/H in the orbit category
  int n = 0;
  Presheaf<F> src, dst;
  PresheafMap<F> map;
};

template <class F>
std::vector<PresheafGenerator<F>> wrap_generators(const OrbitCategory<F>& O, CellKind kind,
                                                  int lo, int hi) {
  const F& f = O.cat.f;
  std::vector<PresheafGenerator<F>> out;
  for (size_t h = 0; h < O.family.members.size(); ++h)
    for (int n = lo; n <= hi; ++n) {
      PresheafGenerator<F> g;
      g.kind = kind;
      g.H = O.family.members[h];
      g.h = int(h);
      g.n = n;
      g.dst = free_presheaf(O, g.H, disk(f, n));
      if (kind == CellKind::sphere_to_disk) {
        g.src = free_presheaf(O, g.H, sphere(f, n - 1));
        ChainMap<F> i0 = sphere_to_disk(f, n);
        for (int i = 0; i < O.cat.nobj; ++i)
          g.map.at_obj.push_back(tensor_map(identity_map(O.cat.hom[i][int(h)]), i0));
      } else {
        g.src = zero_presheaf(g.dst.dom);
        for (int i = 0; i < O.cat.nobj; ++i)
          g.map.at_obj.push_back(zero_map(g.src.val[i], g.dst.val[i]));
      }
      out.push_back(std::move(g));
    }
  return out;
}

// --- module cell attachments ----------------------------------------------------

// One attachment: the pushout of a stage against R[G/H] ⊗ D^n, with the stage
// inclusion and the characteristic map of the new disk.
template <class F>
struct Attachment {
  CellKind kind;
  Subgroup H;
  int n = 0;
  int cells = 0;  // |G/H|
  GModule<F> total;
  ChainMap<F> incl;        // old stage -> total
  ChainMap<F> disk_map;    // R[G/H] ⊗ D^n -> total
  ChainMap<F> attach_map;  // the map the cell was glued along
};

// Block-diagonal direct sum of modules with the four structural maps.
template <class F>
struct GSumData {
  GModule<F> total;
  ChainMap<F> incl_a, incl_b, proj_a, proj_b;
};

template <class F>
GSumData<F> direct_sum_gmodule(const GModule<F>& M, const GModule<F>& N) {
  const F& f = M.cx.f;
  SumData<F> S = direct_sum(M.cx, N.cx);
  GModule<F> T = make_gmodule(M.G, S.total, [&](int g, int k) {
    Matrix<F> out(f, S.total.dim(k), S.total.dim(k));
    Matrix<F> a = M.action(g, k), b = N.action(g, k);
    for (int r = 0; r < a.nr; ++r)
      for (int c = 0; c < a.nc; ++c) out.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.nr; ++r)
      for (int c = 0; c < b.nc; ++c) out.at(M.cx.dim(k) + r, M.cx.dim(k) + c) = b.at(r, c);
    return out;
  });
  return {std::move(T), S.incl_a, S.incl_b, S.proj_a, S.proj_b};
}

// Glue R[G/H] ⊗ D^n onto X along an equivariant chain map defined on the
// wrapped boundary sphere.  The columns of the attaching map must be cycles
// (the chain-map condition against the sphere) and permuted correctly by G;
// the result keeps X as a degreewise split subcomplex and adds one free
// summand in degree n whose differential is the attaching map.
template <class F>
Attachment<F> attach_cell(const GModule<F>& X, const Subgroup& H, int n, const ChainMap<F>& phi) {
  const F& f = X.cx.f;
  if (H.parent != X.G) throw std::invalid_argument("attach_cell: subgroup of a different group");
  GModule<F> P = perm_module(f, coset_gset(H));
  int m = P.cx.dim(0);
  ChainComplex<F> WS = tensor_complex(P.cx, sphere(f, n - 1));
  if (!equal_complex(phi.src, WS) || !equal_complex(phi.dst, X.cx))
    throw std::invalid_argument("attach_cell: attaching map has the wrong ends");
  if (!phi.is_chain_map())
    throw std::invalid_argument("attach_cell: attaching map does not land in cycles");
  for (int g = 1; g < X.G->n; ++g)
    if (!equal(mul(phi.at(n - 1), P.action(g, 0)), mul(X.action(g, n - 1), phi.at(n - 1))))
      throw std::invalid_argument("attach_cell: attaching map is not equivariant");

  int lo = std::min(X.cx.lo, n - 1), hi = std::max(X.cx.hi, n);
  if (X.cx.hi < X.cx.lo) lo = n - 1, hi = n;
  std::vector<int> dims;
  std::vector<Matrix<F>> dif;
  for (int k = lo; k <= hi; ++k) dims.push_back(X.cx.dim(k) + (k == n ? m : 0));
  for (int k = lo; k <= hi; ++k) {
    int rows = k - 1 >= lo ? dims[k - 1 - lo] : 0;
    Matrix<F> D(f, rows, dims[k - lo]);
    Matrix<F> dX = X.cx.d(k);
    for (int r = 0; r < dX.nr; ++r)
      for (int c = 0; c < dX.nc; ++c) D.at(r, c) = dX.at(r, c);
    if (k == n) {
      Matrix<F> ph = phi.at(n - 1);
      for (int r = 0; r < ph.nr; ++r)
        for (int c = 0; c < m; ++c) D.at(r, X.cx.dim(n) + c) = ph.at(r, c);
    }
    dif.push_back(std::move(D));
  }
  ChainComplex<F> T = make_complex(f, lo, std::move(dims), std::move(dif));

  GModule<F> total = make_gmodule(X.G, T, [&](int g, int k) {
    Matrix<F> out(f, T.dim(k), T.dim(k));
    Matrix<F> a = X.action(g, k);
    for (int r = 0; r < a.nr; ++r)
      for (int c = 0; c < a.nc; ++c) out.at(r, c) = a.at(r, c);
    if (k == n) {
      Matrix<F> b = P.action(g, 0);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) out.at(X.cx.dim(k) + r, X.cx.dim(k) + c) = b.at(r, c);
    }
    return out;
  });

  ChainMap<F> incl{X.cx, T, {}};
  for (int k = X.cx.lo; k <= X.cx.hi; ++k) {
    if (X.cx.dim(k) == 0) continue;
    Matrix<F> I(f, T.dim(k), X.cx.dim(k));
    for (int r = 0; r < X.cx.dim(k); ++r) I.at(r, r) = f.one();
    incl.set(k, I);
  }
  ChainComplex<F> WD = tensor_complex(P.cx, disk(f, n));
  ChainMap<F> dm{WD, T, {}};
  Matrix<F> topin(f, T.dim(n), m);
  for (int c = 0; c < m; ++c) topin.at(X.cx.dim(n) + c, c) = f.one();
  dm.set(n, topin);
  Matrix<F> ph = phi.at(n - 1);
  if (ph.nr > 0) dm.set(n - 1, ph);
  return {CellKind::sphere_to_disk, H, n, m, std::move(total), std::move(incl), std::move(dm),
          phi};
}

// Disjointly add R[G/H] ⊗ D^n: the pushout along 0 -> D^n.
template <class F>
Attachment<F> attach_disk(const GModule<F>& X, const Subgroup& H, int n) {
  const F& f = X.cx.f;
  if (H.parent != X.G) throw std::invalid_argument("attach_disk: subgroup of a different group");
  GModule<F> C = free_cell_module(f, H, n);
  GSumData<F> S = direct_sum_gmodule(X, C);
  ChainMap<F> zero_attach = zero_map(tensor_complex(perm_module(f, coset_gset(H)).cx,
                                                    sphere(f, n - 1)),
                                     X.cx);
  return {CellKind::zero_to_disk, H, n, C.cx.dim(n), std::move(S.total), std::move(S.incl_a),
          std::move(S.incl_b), std::move(zero_attach)};
}

// The unique map out of an attachment determined by a cocone: a map on the
// old stage and one on the wrapped disk that agree along the glued boundary.
template <class F>
ChainMap<F> pushout_factor(const Attachment<F>& att, const ChainMap<F>& alpha,
                           const ChainMap<F>& beta) {
  const F& f = att.total.cx.f;
  if (!equal_complex(alpha.src, att.incl.src) || !equal_complex(beta.src, att.disk_map.src) ||
      !equal_complex(alpha.dst, beta.dst))
    throw std::invalid_argument("pushout_factor: cocone has the wrong ends");
  if (att.kind == CellKind::sphere_to_disk) {
    ChainMap<F> wrapped = tensor_map(
        identity_map(perm_module(f, coset_gset(att.H)).cx), sphere_to_disk(f, att.n));
    if (!equal_maps(compose(alpha, att.attach_map), compose(beta, wrapped)))
      throw std::invalid_argument("pushout_factor: cocone disagrees on the boundary");
  }
  ChainMap<F> u{att.total.cx, alpha.dst, {}};
  for (int k = att.total.cx.lo; k <= att.total.cx.hi; ++k) {
    bool added = k == att.n || (att.kind == CellKind::zero_to_disk && k == att.n - 1);
    Matrix<F> M = added ? hstack(alpha.at(k), beta.at(k)) : alpha.at(k);
    if (M.nr > 0 && M.nc > 0) u.set(k, M);
  }
  return u;
}

// A finite relative cell complex: ordered attachments on top of a base, the
// cached stages, and the inclusion of the base (degreewise split injective by
// construction).  The cell list is the cofibrancy certificate.
template <class F>
struct CellComplex {
  struct Cell {
    CellKind kind;
    Subgroup H;
    int n;
  };
  GModule<F> base;
  GModule<F> total;
  ChainMap<F> incl;  // base.cx -> total.cx
  std::vector<Cell> cells;
  std::vector<GModule<F>> stages;  // stages[k]: after k attachments
};

template <class F>
CellComplex<F> cell_complex(const GModule<F>& base) {
  return {base, base, identity_map(base.cx), {}, {base}};
}

template <class F>
Attachment<F> attach(CellComplex<F>& X, const Subgroup& H, int n, const ChainMap<F>& phi) {
  Attachment<F> a = attach_cell(X.total, H, n, phi);
  X.total = a.total;
  X.incl = compose(a.incl, X.incl);
  X.cells.push_back({a.kind, H, n});
  X.stages.push_back(a.total);
  return a;
}

template <class F>
Attachment<F> attach_free(CellComplex<F>& X, const Subgroup& H, int n) {
  Attachment<F> a = attach_disk(X.total, H, n);
  X.total = a.total;
  X.incl = compose(a.incl, X.incl);
  X.cells.push_back({a.kind, H, n});
  X.stages.push_back(a.total);
  return a;
}

// --- fixed-point equivalences and fibrations -------------------------------------

// Verdict of a fixed-point test run over every subgroup in a family (or every
// object of an orbit category), in family order.
struct FamilyVerdict {
  std::vector<bool> per_h;
  bool all = true;
  explicit operator bool() const { return all; }
};

// f is an F-equivalence when every fixed-point map f^H is a quasi-isomorphism.
template <class F>
FamilyVerdict f_equivalence(const GModule<F>& M, const GModule<F>& N, const ChainMap<F>& fm,
                            const Family& fam) {
  FamilyVerdict v;
  for (const Subgroup& H : fam.members) {
    SubComplex<F> MH = fixed_points(M, H), NH = fixed_points(N, H);
    bool ok = quasi_iso(restrict_map(fm, MH.incl, NH.incl));
    v.per_h.push_back(ok);
    v.all = v.all && ok;
  }
  return v;
}

// f is an F-fibration when every f^H is surjective in each degree.
template <class F>
FamilyVerdict f_fibration(const GModule<F>& M, const GModule<F>& N, const ChainMap<F>& fm,
                          const Family& fam) {
  FamilyVerdict v;
  for (const Subgroup& H : fam.members) {
    SubComplex<F> MH = fixed_points(M, H), NH = fixed_points(N, H);
    bool ok = degreewise_surjective(restrict_map(fm, MH.incl, NH.incl));
    v.per_h.push_back(ok);
    v.all = v.all && ok;
  }
  return v;
}

// The inclusion of the base into a complex built only from acyclic cells
// (0 -> D^n shapes) is an F-equivalence; any other attachment is rejected.
template <class F>
FamilyVerdict acyclicity_check(const CellComplex<F>& X, const Family& fam) {
  for (const auto& c : X.cells)
    if (c.kind != CellKind::zero_to_disk)
      throw std::invalid_argument("acyclicity_check: attachment is not an acyclic cell");
  return f_equivalence(X.base, X.total, X.incl, fam);
}

// --- the pullback-corner comparison ------------------------------------------------

// For a generator i = R[G/H] ⊗ i0 with core i0: C -> D and a map p: E -> B,
// maps out of the wrapped ends reduce to maps out of the cores into H-fixed
// points, and the lifting data is the corner map
//   hom(D, E^H) -> hom(C, E^H) ×_{hom(C, B^H)} hom(D, B^H).
// Degreewise surjectivity of the corner map is the enriched lifting property.
template <class F>
struct Sm7Report {
  ChainComplex<F> lhs, rhs;
  ChainMap<F> comparison;
  bool surjective = false;
  bool equivalence = false;  // the comparison is a quasi-isomorphism
  bool iso = false;          // the comparison is a degreewise isomorphism
  bool ok() const { return surjective; }
};

template <class F>
Sm7Report<F> sm7_check(const Generator<F>& gen, const GModule<F>& E, const GModule<F>& B,
                       const ChainMap<F>& p) {
  SubComplex<F> EH = fixed_points(E, gen.H), BH = fixed_points(B, gen.H);
  ChainMap<F> pH = restrict_map(p, EH.incl, BH.incl);
  Sm7Report<F> out;
  out.lhs = hom_complex(gen.core_dst, EH.cx);
  ChainComplex<F> U1 = hom_complex(gen.core_src, EH.cx);
  ChainComplex<F> U2 = hom_complex(gen.core_dst, BH.cx);
  SumData<F> S = direct_sum(U1, U2);
  ChainMap<F> corner = sub_maps(compose(hom_post(gen.core_src, pH), S.proj_a),
                                compose(hom_pre(gen.core, BH.cx), S.proj_b));
  SubComplex<F> PB = kernel_complex(corner);
  out.rhs = PB.cx;
  ChainMap<F> kappa = add_maps(compose(S.incl_a, hom_pre(gen.core, EH.cx)),
                               compose(S.incl_b, hom_post(gen.core_dst, pH)));
  out.comparison = chain_map_from(out.lhs, PB.cx, [&](int k) {
    auto Y = solve(PB.incl.at(k), kappa.at(k));
    if (!Y) throw std::logic_error("sm7_check: comparison misses the pullback");
    return *Y;
  });
  out.surjective = degreewise_surjective(out.comparison);
  out.equivalence = quasi_iso(out.comparison);
  out.iso = degreewise_iso(out.comparison);
  return out;
}

// --- lifting by linear solve ---------------------------------------------------

// A lift in the square (top, bottom) over (gen.map, p): an equivariant chain
// map L: gen.dst -> E with L ∘ gen.map = top and p ∘ L = bottom, found by one
// exact linear solve over the entries of L.
template <class F>
std::optional<ChainMap<F>> solve_lift(const Generator<F>& gen, const GModule<F>& E,
                                      const GModule<F>& B, const ChainMap<F>& p,
                                      const ChainMap<F>& top, const ChainMap<F>& bottom) {
  const F& f = E.cx.f;
  const ChainComplex<F>& D = gen.dst.cx;
  ChainMap<F> L{D, E.cx, {}};
  if (D.hi < D.lo) return L;
  int lo = D.lo, hi = D.hi;
  std::vector<int> base(hi - lo + 1, 0);
  int nv = 0;
  for (int k = lo; k <= hi; ++k) {
    base[k - lo] = nv;
    nv += E.cx.dim(k) * D.dim(k);
  }
  auto var = [&](int k, int r, int c) { return base[k - lo] + r * D.dim(k) + c; };

  int rows = 0;
  for (int k = lo; k <= hi; ++k) {
    rows += E.cx.dim(k - 1) * D.dim(k);                    // chain condition
    rows += (E.cx.dim(k) * D.dim(k)) * (E.G->n - 1);       // equivariance
    rows += E.cx.dim(k) * gen.src.cx.dim(k);               // L ∘ i = top
    rows += B.cx.dim(k) * D.dim(k);                        // p ∘ L = bottom
  }
  Matrix<F> sys(f, rows, nv), rhs(f, rows, 1);
  int row = 0;
  for (int k = lo; k <= hi; ++k) {
    Matrix<F> dE = E.cx.d(k), dD = D.d(k);
    for (int r = 0; r < E.cx.dim(k - 1); ++r)
      for (int c = 0; c < D.dim(k); ++c) {
        for (int s = 0; s < E.cx.dim(k); ++s)
          if (!f.is_zero(dE.at(r, s))) sys.at(row, var(k, s, c)) = dE.at(r, s);
        if (k - 1 >= lo)
          for (int s = 0; s < D.dim(k - 1); ++s)
            if (!f.is_zero(dD.at(s, c)))
              sys.at(row, var(k - 1, r, s)) = f.sub(sys.at(row, var(k - 1, r, s)), dD.at(s, c));
        ++row;
      }
    for (int g = 1; g < E.G->n; ++g) {
      Matrix<F> aE = E.action(g, k), aD = gen.dst.action(g, k);
      for (int r = 0; r < E.cx.dim(k); ++r)
        for (int c = 0; c < D.dim(k); ++c) {
          for (int s = 0; s < E.cx.dim(k); ++s)
            if (!f.is_zero(aE.at(r, s)))
              sys.at(row, var(k, s, c)) = f.add(sys.at(row, var(k, s, c)), aE.at(r, s));
          for (int s = 0; s < D.dim(k); ++s)
            if (!f.is_zero(aD.at(s, c)))
              sys.at(row, var(k, r, s)) = f.sub(sys.at(row, var(k, r, s)), aD.at(s, c));
          ++row;
        }
    }
    Matrix<F> im = gen.map.at(k), tp = top.at(k);
    for (int r = 0; r < E.cx.dim(k); ++r)
      for (int c = 0; c < gen.src.cx.dim(k); ++c) {
        for (int s = 0; s < D.dim(k); ++s)
          if (!f.is_zero(im.at(s, c))) sys.at(row, var(k, r, s)) = im.at(s, c);
        rhs.at(row, 0) = tp.at(r, c);
        ++row;
      }
    Matrix<F> pk = p.at(k), bt = bottom.at(k);
    for (int r = 0; r < B.cx.dim(k); ++r)
      for (int c = 0; c < D.dim(k); ++c) {
        for (int s = 0; s < E.cx.dim(k); ++s)
          if (!f.is_zero(pk.at(r, s))) sys.at(row, var(k, s, c)) = pk.at(r, s);
        rhs.at(row, 0) = bt.at(r, c);
        ++row;
      }
  }
  auto X = solve(sys, rhs);
  if (!X) return std::nullopt;
  for (int k = lo; k <= hi; ++k) {
    if (E.cx.dim(k) == 0 || D.dim(k) == 0) continue;
    Matrix<F> M(f, E.cx.dim(k), D.dim(k));
    for (int r = 0; r < M.nr; ++r)
      for (int c = 0; c < M.nc; ++c) M.at(r, c) = X->at(var(k, r, c), 0);
    L.set(k, M);
  }
  if (!L.is_chain_map()) throw std::logic_error("solve_lift: solution is not a chain map");
  return L;
}

// --- presheaf cell attachments ----------------------------------------------------

template <class F>
PresheafMap<F> compose_presheaf_maps(const PresheafMap<F>& g, const PresheafMap<F>& fm) {
  PresheafMap<F> out;
  for (size_t i = 0; i < fm.at_obj.size(); ++i)
    out.at_obj.push_back(compose(g.at_obj[i], fm.at_obj[i]));
  return out;
}

template <class F>
PresheafMap<F> identity_presheaf_map(const Presheaf<F>& X) {
  PresheafMap<F> out;
  for (const auto& v : X.val) out.at_obj.push_back(identity_map(v));
  return out;
}

// Objectwise direct sum with block-diagonal structure maps.
template <class F>
Presheaf<F> direct_sum_presheaf(const Presheaf<F>& X, const Presheaf<F>& Y) {
  const VCategory<F>& D = *X.dom;
  const F& f = D.f;
  Presheaf<F> Z{X.dom, {}, {}};
  for (int i = 0; i < D.nobj; ++i) Z.val.push_back(direct_sum(X.val[i], Y.val[i]).total);
  Z.act.assign(D.nobj, {});
  for (int i = 0; i < D.nobj; ++i)
    for (int j = 0; j < D.nobj; ++j) {
      const ChainComplex<F>& H = D.hom[i][j];
      ChainComplex<F> S = tensor_complex(H, Z.val[j]);
      ChainMap<F> r{S, Z.val[i], {}};
      for (int k = S.lo; k <= S.hi; ++k) {
        if (S.dim(k) == 0 || Z.val[i].dim(k) == 0) continue;
        Matrix<F> M(f, Z.val[i].dim(k), S.dim(k));
        auto cols = tensor_basis(H, Z.val[j], k);
        for (size_t c = 0; c < cols.size(); ++c) {
          int q = k - cols[c].deg_a;
          int xo = X.val[j].dim(q);
          if (cols[c].b < xo) {
            if (X.val[i].dim(k) == 0) continue;
            Matrix<F> a = X.act[i][j].at(k);
            int sc = tensor_pos(H, X.val[j], k, cols[c].deg_a, cols[c].a, cols[c].b);
            for (int rr = 0; rr < X.val[i].dim(k); ++rr) M.at(rr, int(c)) = a.at(rr, sc);
          } else {
            if (Y.val[i].dim(k) == 0) continue;
            Matrix<F> a = Y.act[i][j].at(k);
            int sc = tensor_pos(H, Y.val[j], k, cols[c].deg_a, cols[c].a, cols[c].b - xo);
            for (int rr = 0; rr < Y.val[i].dim(k); ++rr)
              M.at(X.val[i].dim(k) + rr, int(c)) = a.at(rr, sc);
          }
        }
        r.set(k, M);
      }
      Z.act[i].push_back(std::move(r));
    }
  return Z;
}

// One presheaf cell attachment: glue the free presheaf on D^n at orbit h along
// a presheaf map defined on the free boundary sphere (the zero map included),
// or add the free disk outright.
template <class F>
struct PresheafAttachment {
  CellKind kind;
  int h = 0;
  int n = 0;
  Presheaf<F> total;
  PresheafMap<F> incl;
};

template <class F>
PresheafAttachment<F> attach_presheaf_cell(const Presheaf<F>& X, int h, int n,
                                           const PresheafMap<F>& phi) {
  const VCategory<F>& D = *X.dom;
  const F& f = D.f;
  Presheaf<F> SP = representable_presheaf(X.dom, h, sphere(f, n - 1));
  if (!presheaf_map_valid(SP, X, phi))
    throw std::invalid_argument("attach_presheaf_cell: attaching map is not a presheaf map");
  Presheaf<F> TP = representable_presheaf(X.dom, h, ChainComplex<F>::concentrated(f, n, 1));

  Presheaf<F> Z{X.dom, {}, {}};
  for (int i = 0; i < D.nobj; ++i) {
    const ChainComplex<F>& A = X.val[i];
    const ChainComplex<F>& T = TP.val[i];
    int lo = std::min(A.lo, T.lo), hi = std::max(A.hi, T.hi);
    if (A.hi < A.lo) lo = T.lo, hi = T.hi;
    if (T.hi < T.lo) lo = A.lo, hi = A.hi;
    std::vector<int> dims;
    std::vector<Matrix<F>> dif;
    for (int k = lo; k <= hi; ++k) dims.push_back(A.dim(k) + T.dim(k));
    for (int k = lo; k <= hi; ++k) {
      Matrix<F> M(f, A.dim(k - 1) + T.dim(k - 1), A.dim(k) + T.dim(k));
      Matrix<F> dA = A.d(k), dT = T.d(k);
      for (int r = 0; r < dA.nr; ++r)
        for (int c = 0; c < dA.nc; ++c) M.at(r, c) = dA.at(r, c);
      for (int r = 0; r < dT.nr; ++r)
        for (int c = 0; c < dT.nc; ++c) M.at(A.dim(k - 1) + r, A.dim(k) + c) = dT.at(r, c);
      // boundary of a new generator u ⊗ top: (-1)^{|u|} φ(u ⊗ bottom)
      Matrix<F> ph = phi.at_obj[i].at(k - 1);
      if (ph.nr > 0 && T.dim(k) > 0) {
        bool neg = (k - n) % 2 != 0;
        for (int r = 0; r < ph.nr; ++r)
          for (int c = 0; c < T.dim(k); ++c)
            M.at(r, A.dim(k) + c) = neg ? f.neg(ph.at(r, c)) : ph.at(r, c);
      }
      dif.push_back(std::move(M));
    }
    Z.val.push_back(make_complex(f, lo, std::move(dims), std::move(dif)));
  }
  Z.act.assign(D.nobj, {});
  for (int i = 0; i < D.nobj; ++i)
    for (int j = 0; j < D.nobj; ++j) {
      const ChainComplex<F>& H = D.hom[i][j];
      ChainComplex<F> S = tensor_complex(H, Z.val[j]);
      ChainMap<F> r{S, Z.val[i], {}};
      for (int k = S.lo; k <= S.hi; ++k) {
        if (S.dim(k) == 0 || Z.val[i].dim(k) == 0) continue;
        Matrix<F> M(f, Z.val[i].dim(k), S.dim(k));
        auto cols = tensor_basis(H, Z.val[j], k);
        for (size_t c = 0; c < cols.size(); ++c) {
          int q = k - cols[c].deg_a;
          int xo = X.val[j].dim(q);
          if (cols[c].b < xo) {
            if (X.val[i].dim(k) == 0) continue;
            Matrix<F> a = X.act[i][j].at(k);
            int sc = tensor_pos(H, X.val[j], k, cols[c].deg_a, cols[c].a, cols[c].b);
            for (int rr = 0; rr < X.val[i].dim(k); ++rr) M.at(rr, int(c)) = a.at(rr, sc);
          } else {
            if (TP.val[i].dim(k) == 0) continue;
            Matrix<F> a = TP.act[i][j].at(k);
            int sc = tensor_pos(H, TP.val[j], k, cols[c].deg_a, cols[c].a, cols[c].b - xo);
            for (int rr = 0; rr < TP.val[i].dim(k); ++rr)
              M.at(X.val[i].dim(k) + rr, int(c)) = a.at(rr, sc);
          }
        }
        r.set(k, M);
      }
      Z.act[i].push_back(std::move(r));
    }

  PresheafAttachment<F> out{CellKind::sphere_to_disk, h, n, std::move(Z), {}};
  for (int i = 0; i < D.nobj; ++i) {
    ChainMap<F> ic{X.val[i], out.total.val[i], {}};
    for (int k = X.val[i].lo; k <= X.val[i].hi; ++k) {
      if (X.val[i].dim(k) == 0) continue;
      Matrix<F> I(f, out.total.val[i].dim(k), X.val[i].dim(k));
      for (int s = 0; s < X.val[i].dim(k); ++s) I.at(s, s) = f.one();
      ic.set(k, I);
    }
    out.incl.at_obj.push_back(std::move(ic));
  }
  return out;
}

template <class F>
PresheafAttachment<F> attach_presheaf_disk(const Presheaf<F>& X, int h, int n) {
  const F& f = X.dom->f;
  Presheaf<F> C = representable_presheaf(X.dom, h, disk(f, n));
  PresheafAttachment<F> out{CellKind::zero_to_disk, h, n, direct_sum_presheaf(X, C), {}};
  for (size_t i = 0; i < X.val.size(); ++i)
    out.incl.at_obj.push_back(direct_sum(X.val[i], C.val[i]).incl_a);
  return out;
}

template <class F>
struct PresheafCellComplex {
  struct Cell {
    CellKind kind;
    int h;
    int n;
  };
  Presheaf<F> base;
  Presheaf<F> total;
  PresheafMap<F> incl;
  std::vector<Cell> cells;
  std::vector<Presheaf<F>> stages;
};

template <class F>
PresheafCellComplex<F> presheaf_cell_complex(const Presheaf<F>& base) {
  return {base, base, identity_presheaf_map(base), {}, {base}};
}

template <class F>
PresheafAttachment<F> attach(PresheafCellComplex<F>& X, int h, int n, const PresheafMap<F>& phi) {
  PresheafAttachment<F> a = attach_presheaf_cell(X.total, h, n, phi);
  X.total = a.total;
  X.incl = compose_presheaf_maps(a.incl, X.incl);
  X.cells.push_back({a.kind, h, n});
  X.stages.push_back(a.total);
  return a;
}

template <class F>
PresheafAttachment<F> attach_free(PresheafCellComplex<F>& X, int h, int n) {
  PresheafAttachment<F> a = attach_presheaf_disk(X.total, h, n);
  X.total = a.total;
  X.incl = compose_presheaf_maps(a.incl, X.incl);
  X.cells.push_back({a.kind, h, n});
  X.stages.push_back(a.total);
  return a;
}

// Levelwise form: base -> total is an objectwise quasi-isomorphism, with only
// acyclic cells allowed.
template <class F>
FamilyVerdict acyclicity_check(const PresheafCellComplex<F>& X) {
  for (const auto& c : X.cells)
    if (c.kind != CellKind::zero_to_disk)
      throw std::invalid_argument("acyclicity_check: attachment is not an acyclic cell");
  FamilyVerdict v;
  for (const auto& c : X.incl.at_obj) {
    bool ok = quasi_iso(c);
    v.per_h.push_back(ok);
    v.all = v.all && ok;
  }
  return v;
}

}  // namespace eqha
