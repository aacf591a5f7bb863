#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqha/cells.hpp"
#include "eqha/random_gen.hpp"

using namespace eqha;

namespace {

template <class F>
bool same_dims(const ChainComplex<F>& a, const ChainComplex<F>& b) {
  int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
  for (int n = lo; n <= hi; ++n)
    if (a.dim(n) != b.dim(n)) return false;
  return true;
}

template <class F>
bool equal_gmodule(const GModule<F>& A, const GModule<F>& B) {
  if (!equal_complex(A.cx, B.cx)) return false;
  for (int g = 0; g < A.G->n; ++g)
    for (int n = std::min(A.cx.lo, B.cx.lo); n <= std::max(A.cx.hi, B.cx.hi); ++n)
      if (!equal(A.action(g, n), B.action(g, n))) return false;
  return true;
}

template <class F>
ChainMap<F> random_equivariant_map(F f, Rng& rng, const GModule<F>& M, const GModule<F>& N) {
  ChainMap<F> out = zero_map(M.cx, N.cx);
  for (const auto& b : equivariant_chain_maps_basis(M, N, full_subgroup(M.G)))
    out = add_maps(out, scale_map(f.from_int(rng.uniform(-2, 2)), b));
  return out;
}

template <class F>
ChainMap<F> empty_attach(F f, const Subgroup& H, int n, const GModule<F>& X) {
  return zero_map(tensor_complex(perm_module(f, coset_gset(H)).cx, sphere(f, n - 1)), X.cx);
}

}  // namespace

TEST_CASE("generators wrap orbits around disk inclusions") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);

  auto I = wrap_generators(q, fam, CellKind::sphere_to_disk, 0, 1);
  CHECK(I.size() == 4);
  for (const auto& g : I) {
    CHECK(g.map.is_chain_map());
    CHECK(rank(g.map.at(g.n - 1)) == g.src.cx.dim(g.n - 1));
    CHECK(g.dst.cx.dim(g.n) == g.src.cx.dim(g.n - 1));
  }

  auto J = wrap_generators(q, fam, CellKind::zero_to_disk, 1, 1);
  CHECK(J.size() == 2);
  CHECK(J[0].H.size() == 1);
  CHECK(J[0].dst.cx.dim(1) == 2);
  CHECK(J[0].dst.cx.dim(0) == 2);
  CHECK(J[0].src.cx.total_dim() == 0);
  CHECK(acyclic(J[0].dst.cx));

  DGAlgebra<FieldQ> A = exterior_dga(q);
  auto JA = wrap_generators(q, fam, CellKind::zero_to_disk, 1, 1, &A);
  CHECK(JA[0].dst.cx.dim(1) == 4);
  CHECK(acyclic(JA[0].dst.cx));
  CHECK(JA[0].core.src.total_dim() == 0);

  OrbitCategory<FieldQ> O = fixed_orbit_category(q, fam);
  auto PJ = wrap_generators(O, CellKind::zero_to_disk, 1, 1);
  CHECK(PJ.size() == 2);
  CHECK(PJ[1].h == 1);
  CHECK(PJ[1].dst.val[0].dim(1) == 1);
  CHECK(PJ[1].dst.val[0].dim(0) == 1);
  CHECK(PJ[1].dst.val[1].dim(1) == 1);
  CHECK(PJ[1].dst.val[1].dim(0) == 1);
  CHECK(presheaf_laws(PJ[1].dst));
  auto PI = wrap_generators(O, CellKind::sphere_to_disk, 0, 1);
  for (const auto& g : PI) {
    CHECK(presheaf_laws(g.src));
    CHECK(presheaf_laws(g.dst));
    CHECK(presheaf_map_valid(g.src, g.dst, g.map));
  }
}

TEST_CASE("attaching a free disk is a direct sum with a free cell") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-free-disk"));
  GModule<FieldQ> X = random_gmodule(q, rng, G, 0, 2, 2);

  Attachment<FieldQ> a = attach_disk(X, fam.members[1], 1);
  CHECK(a.cells == 1);
  CHECK(a.total.cx.dim(1) == X.cx.dim(1) + 1);
  CHECK(a.total.cx.dim(0) == X.cx.dim(0) + 1);
  CHECK(a.incl.is_chain_map());
  CHECK(a.disk_map.is_chain_map());
  GModule<FieldQ> C = free_cell_module(q, fam.members[1], 1);
  CHECK(equal_gmodule(a.total, direct_sum_gmodule(X, C).total));

  // a cell glued along the empty boundary of D^0 is the free sphere
  GModule<FieldQ> zero = trivial_gmodule(G, ChainComplex<FieldQ>::zero(q));
  Attachment<FieldQ> s0 = attach_cell(zero, fam.members[0], 0, empty_attach(q, fam.members[0], 0, zero));
  CHECK(s0.cells == 2);
  CHECK(equal_gmodule(
      s0.total,
      tensor_g(perm_module(q, coset_gset(fam.members[0])), trivial_gmodule(G, sphere(q, 0)))));
}

TEST_CASE("a two-cell complex glued along the norm") {
  GroupPtr G = cyclic_group(2);
  auto build = [&](auto f) {
    using F = decltype(f);
    Family fam = all_family(G);
    GModule<F> zero = trivial_gmodule(G, ChainComplex<F>::zero(f));
    CellComplex<F> X = cell_complex(zero);
    attach(X, fam.members[0], 0, empty_attach(f, fam.members[0], 0, X.total));
    CHECK(X.total.cx.dim(0) == 2);
    CHECK(equal(X.total.action(1, 0), perm_module(f, coset_gset(fam.members[0])).action(1, 0)));
    ChainMap<F> norm{tensor_complex(perm_module(f, coset_gset(fam.members[1])).cx, sphere(f, 0)),
                     X.total.cx,
                     {}};
    Matrix<F> nm(f, 2, 1);
    nm.at(0, 0) = f.one();
    nm.at(1, 0) = f.one();
    norm.set(0, nm);
    attach(X, fam.members[1], 1, norm);
    auto h = homology_dims(X.total.cx);
    CHECK(h[0] == 1);
    CHECK(h[1] == 0);
    CHECK(X.incl.is_chain_map());
    CHECK(X.cells.size() == 2);
    CHECK(X.stages.size() == 3);
    return X;
  };
  build(FieldQ{});
  build(FieldFp(2));

  // a non-equivariant attaching map is rejected
  FieldQ q;
  Family fam = all_family(G);
  GModule<FieldQ> R2 = perm_module(q, coset_gset(fam.members[0]));
  ChainMap<FieldQ> skew{tensor_complex(R2.cx, sphere(q, 0)), R2.cx, {}};
  Matrix<FieldQ> sk(q, 2, 2);
  sk.at(0, 0) = q.one();
  skew.set(0, sk);
  CHECK_THROWS_AS(attach_cell(R2, fam.members[0], 1, skew), std::invalid_argument);

  // an attaching map whose columns are not cycles is rejected
  GModule<FieldQ> D1 = free_cell_module(q, fam.members[0], 1);
  ChainMap<FieldQ> offcycle{tensor_complex(R2.cx, sphere(q, 1)), D1.cx, {}};
  offcycle.set(1, Matrix<FieldQ>::identity(q, 2));
  CHECK_THROWS_AS(attach_cell(D1, fam.members[0], 2, offcycle), std::invalid_argument);
}

TEST_CASE("pushouts factor uniquely through sampled cocones") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-pushout"));
  GModule<FieldQ> X = random_gmodule(q, rng, G, 0, 2, 2);
  GModule<FieldQ> Z = random_gmodule(q, rng, G, 0, 2, 2);

  Attachment<FieldQ> a = attach_disk(X, fam.members[0], 1);
  for (int t = 0; t < 2; ++t) {
    ChainMap<FieldQ> psi = random_equivariant_map(q, rng, a.total, Z);
    ChainMap<FieldQ> u = pushout_factor(a, compose(psi, a.incl), compose(psi, a.disk_map));
    CHECK(equal_maps(u, psi));
  }

  // the same against a glued cell
  GModule<FieldQ> zero = trivial_gmodule(G, ChainComplex<FieldQ>::zero(q));
  CellComplex<FieldQ> W = cell_complex(zero);
  attach(W, fam.members[0], 0, empty_attach(q, fam.members[0], 0, W.total));
  ChainMap<FieldQ> norm{tensor_complex(perm_module(q, coset_gset(fam.members[1])).cx, sphere(q, 0)),
                        W.total.cx,
                        {}};
  Matrix<FieldQ> nm(q, 2, 1);
  nm.at(0, 0) = q.one();
  nm.at(1, 0) = q.one();
  norm.set(0, nm);
  Attachment<FieldQ> b = attach(W, fam.members[1], 1, norm);
  for (int t = 0; t < 2; ++t) {
    ChainMap<FieldQ> psi = random_equivariant_map(q, rng, b.total, Z);
    ChainMap<FieldQ> u = pushout_factor(b, compose(psi, b.incl), compose(psi, b.disk_map));
    CHECK(equal_maps(u, psi));
  }

  // a cocone that disagrees on the glued boundary is rejected
  CHECK_THROWS_AS(pushout_factor(b, b.incl, scale_map(q.from_int(2), b.disk_map)),
                  std::invalid_argument);
}

TEST_CASE("fixed-point equivalences and fibrations across a family") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-verdicts"));
  GModule<FieldQ> M = random_gmodule(q, rng, G, -1, 2, 2);

  CHECK(f_equivalence(M, M, identity_map(M.cx), fam).all);
  CHECK(f_fibration(M, M, identity_map(M.cx), fam).all);

  // adding a free disk changes no fixed-point homology
  GModule<FieldQ> zero = trivial_gmodule(G, ChainComplex<FieldQ>::zero(q));
  GModule<FieldQ> D1 = free_cell_module(q, fam.members[0], 1);
  CHECK(f_equivalence(zero, D1, zero_map(zero.cx, D1.cx), fam).all);

  // collapsing the regular representation loses fixed classes everywhere
  GModule<FieldQ> R2 = perm_module(q, coset_gset(fam.members[0]));
  FamilyVerdict vc = f_equivalence(R2, zero, zero_map(R2.cx, zero.cx), fam);
  CHECK(!vc.all);
  CHECK(vc.per_h == std::vector<bool>{false, false});

  // a direct-sum projection is a fibration; the zero map into R[C2] is not
  GSumData<FieldQ> S = direct_sum_gmodule(M, R2);
  CHECK(f_fibration(S.total, R2, S.proj_b, fam).all);
  FamilyVerdict vz = f_fibration(zero, R2, zero_map(zero.cx, R2.cx), fam);
  CHECK(!vz.all);
}

TEST_CASE("only free-disk attachments pass the acyclicity check") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-acyclic"));

  GModule<FieldQ> base = random_gmodule(q, rng, G, -1, 2, 2);
  CellComplex<FieldQ> X = cell_complex(base);
  CHECK(acyclicity_check(X, fam).all);
  attach_free(X, fam.members[1], 1);
  attach_free(X, fam.members[0], 0);
  CHECK(acyclicity_check(X, fam).all);

  // several cells over S3, drawn at random
  GroupPtr S3 = symmetric3();
  Family fs = all_family(S3);
  Rng r2(mix_seed(2026, "cells-acyclic-s3"));
  GModule<FieldQ> b3 = random_gmodule(q, r2, S3, 0, 2, 2);
  CellComplex<FieldQ> Y = cell_complex(b3);
  for (int t = 0; t < 5; ++t)
    attach_free(Y, fs.members[size_t(r2.uniform(0, int(fs.members.size()) - 1))],
                r2.uniform(0, 2));
  CHECK(Y.stages.size() == 6);
  CHECK(acyclicity_check(Y, fs).all);

  // the modular case: free cells still split off their fixed points
  FieldFp f2(2);
  Rng r3(mix_seed(2026, "cells-acyclic-f2"));
  GModule<FieldFp> m2 = random_gmodule(f2, r3, G, 0, 2, 2);
  CellComplex<FieldFp> X2 = cell_complex(m2);
  attach_free(X2, fam.members[0], 1);
  attach_free(X2, fam.members[1], 2);
  CHECK(acyclicity_check(X2, fam).all);

  // a glued cell is rejected outright
  GModule<FieldQ> zero = trivial_gmodule(G, ChainComplex<FieldQ>::zero(q));
  CellComplex<FieldQ> Zc = cell_complex(zero);
  attach(Zc, fam.members[0], 0, empty_attach(q, fam.members[0], 0, Zc.total));
  CHECK_THROWS_AS(acyclicity_check(Zc, fam), std::invalid_argument);
}

TEST_CASE("the pullback corner is surjective against fibrations") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-corner"));
  GModule<FieldQ> Bm = random_gmodule(q, rng, G, 0, 2, 2);
  GModule<FieldQ> Em0 = random_gmodule(q, rng, G, 0, 2, 2);
  GSumData<FieldQ> S = direct_sum_gmodule(Em0, Bm);

  // an acyclic generator against a fibration: surjective and an equivalence
  for (const auto& g : wrap_generators(q, fam, CellKind::zero_to_disk, 1, 1)) {
    Sm7Report<FieldQ> r = sm7_check(g, S.total, Bm, S.proj_b);
    CHECK(r.surjective);
    CHECK(r.equivalence);
  }

  auto I = wrap_generators(q, fam, CellKind::sphere_to_disk, 1, 1);

  // identity fibration: the corner map is an isomorphism
  for (const auto& g : I) {
    Sm7Report<FieldQ> r = sm7_check(g, Bm, Bm, identity_map(Bm.cx));
    CHECK(r.iso);
    CHECK(r.surjective);
  }

  // a cofibration against an acyclic fibration is again an equivalence
  GModule<FieldQ> E1 = free_cell_module(q, fam.members[0], 1);
  GModule<FieldQ> zero = trivial_gmodule(G, ChainComplex<FieldQ>::zero(q));
  Sm7Report<FieldQ> r1 = sm7_check(I[0], E1, zero, zero_map(E1.cx, zero.cx));
  CHECK(r1.surjective);
  CHECK(r1.equivalence);

  // with nothing acyclic, only the surjectivity survives
  GModule<FieldQ> R2 = perm_module(q, coset_gset(fam.members[0]));
  Sm7Report<FieldQ> r2 = sm7_check(I[0], R2, zero, zero_map(R2.cx, zero.cx));
  CHECK(r2.surjective);
  CHECK(!r2.equivalence);
}

TEST_CASE("lifts against fibrations are found by a linear solve") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  Rng rng(mix_seed(2026, "cells-lift"));
  GModule<FieldQ> Bm = random_gmodule(q, rng, G, 0, 2, 2);
  GModule<FieldQ> Em0 = random_gmodule(q, rng, G, -1, 1, 2);
  GSumData<FieldQ> S = direct_sum_gmodule(Em0, Bm);

  auto J = wrap_generators(q, fam, CellKind::zero_to_disk, 0, 2);
  for (const auto& g : J) {
    ChainMap<FieldQ> top = zero_map(g.src.cx, S.total.cx);
    ChainMap<FieldQ> bottom = random_equivariant_map(q, rng, g.dst, Bm);
    auto L = solve_lift(g, S.total, Bm, S.proj_b, top, bottom);
    REQUIRE(L.has_value());
    CHECK(equal_maps(compose(S.proj_b, *L), bottom));
    for (int n = L->src.lo; n <= L->src.hi; ++n)
      CHECK(equal(mul(L->at(n), g.dst.action(1, n)), mul(S.total.action(1, n), L->at(n))));
  }

  // no lift when p misses what the bottom map hits
  ChainMap<FieldQ> zp = zero_map(Em0.cx, J[1].dst.cx);
  CHECK(!solve_lift(J[1], Em0, J[1].dst, zp, zero_map(J[1].src.cx, Em0.cx),
                    identity_map(J[1].dst.cx))
             .has_value());

  // against the identity, the lift is forced to be the bottom map
  auto I = wrap_generators(q, fam, CellKind::sphere_to_disk, 1, 1);
  ChainMap<FieldQ> bottom = random_equivariant_map(q, rng, I[0].dst, Bm);
  auto L2 = solve_lift(I[0], Bm, Bm, identity_map(Bm.cx), compose(bottom, I[0].map), bottom);
  REQUIRE(L2.has_value());
  CHECK(equal_maps(*L2, bottom));
}

TEST_CASE("algebra-wrapped generators join the corner and lifting checks") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  DGAlgebra<FieldQ> A = exterior_dga(q);
  Rng rng(mix_seed(2026, "cells-algebra"));
  GModule<FieldQ> Bm = random_gmodule(q, rng, G, 0, 2, 2);

  auto JA = wrap_generators(q, fam, CellKind::zero_to_disk, 1, 1, &A);
  for (const auto& g : JA) {
    Sm7Report<FieldQ> r = sm7_check(g, Bm, Bm, identity_map(Bm.cx));
    CHECK(r.iso);
  }

  GModule<FieldQ> Em0 = random_gmodule(q, rng, G, 0, 1, 2);
  GSumData<FieldQ> S = direct_sum_gmodule(Em0, Bm);
  ChainMap<FieldQ> bottom = random_equivariant_map(q, rng, JA[1].dst, Bm);
  auto L = solve_lift(JA[1], S.total, Bm, S.proj_b, zero_map(JA[1].src.cx, S.total.cx), bottom);
  REQUIRE(L.has_value());
  CHECK(equal_maps(compose(S.proj_b, *L), bottom));
}

TEST_CASE("free stages transport to presheaf cells") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  OrbitCategory<FieldQ> O = fixed_orbit_category(q, fam);
  Rng rng(mix_seed(2026, "cells-transport"));
  GModule<FieldQ> base = random_gmodule(q, rng, G, 0, 2, 2);

  CellComplex<FieldQ> X = cell_complex(base);
  std::vector<Attachment<FieldQ>> atts;
  atts.push_back(attach_free(X, fam.members[0], 1));
  atts.push_back(attach_free(X, fam.members[1], 0));

  for (size_t k = 0; k < atts.size(); ++k) {
    FixedPresheaf<FieldQ> prev = fixed_presheaf(O, X.stages[k]);
    FixedPresheaf<FieldQ> cur = fixed_presheaf(O, X.stages[k + 1]);
    GModule<FieldQ> cell = free_cell_module(q, X.cells[k].H, X.cells[k].n);
    Presheaf<FieldQ> cellp = fixed_presheaf(O, cell).pre;
    CHECK(presheaf_laws(cur.pre));
    CHECK(equal_presheaf(cur.pre, direct_sum_presheaf(prev.pre, cellp)));
    PresheafMap<FieldQ> step = fixed_presheaf_map(prev, cur, atts[k].incl);
    CHECK(presheaf_map_valid(prev.pre, cur.pre, step));
    for (int i = 0; i < O.cat.nobj; ++i)
      CHECK(equal_maps(step.at_obj[i], direct_sum(prev.pre.val[i], cellp.val[i]).incl_a));
  }

  // the free cells themselves are the free presheaves, through the unit
  for (const auto& c : X.cells) {
    Presheaf<FieldQ> fp = free_presheaf(O, c.H, disk(q, c.n));
    UnitData<FieldQ> u = unit_eta(O, fp);
    CHECK(u.level_iso);
    CHECK(equal_gmodule(u.mod, free_cell_module(q, c.H, c.n)));
  }
}

TEST_CASE("presheaf cells glue and keep the unit an isomorphism") {
  FieldQ q;
  GroupPtr G = cyclic_group(2);
  Family fam = all_family(G);
  OrbitCategory<FieldQ> O = fixed_orbit_category(q, fam);

  // gluing the disk boundary back onto the free sphere recovers the free disk
  Presheaf<FieldQ> sp = free_presheaf(O, fam.members[1], sphere(q, 0));
  PresheafCellComplex<FieldQ> P = presheaf_cell_complex(sp);
  attach(P, 1, 1, identity_presheaf_map(sp));
  CHECK(presheaf_laws(P.total));
  Presheaf<FieldQ> dk = free_presheaf(O, fam.members[1], disk(q, 1));
  for (int i = 0; i < O.cat.nobj; ++i) {
    CHECK(same_dims(P.total.val[i], dk.val[i]));
    CHECK(acyclic(P.total.val[i]));
  }

  // free cells over a module-borne base stay lawful and keep η invertible
  Rng rng(mix_seed(2026, "cells-presheaf"));
  GModule<FieldQ> N = random_gmodule(q, rng, G, 0, 1, 2);
  PresheafCellComplex<FieldQ> Y = presheaf_cell_complex(fixed_presheaf(O, N).pre);
  attach_free(Y, 0, 1);
  attach_free(Y, 1, 2);
  CHECK(presheaf_laws(Y.total));
  CHECK(acyclicity_check(Y).all);
  CHECK(unit_eta(O, Y.total).level_iso);
  CHECK(Y.stages.size() == 3);

  // glued cells fail the acyclicity precondition
  PresheafCellComplex<FieldQ> Zc = presheaf_cell_complex(sp);
  attach(Zc, 1, 1, identity_presheaf_map(sp));
  CHECK_THROWS_AS(acyclicity_check(Zc), std::invalid_argument);

  // an attaching map that is not natural is rejected
  PresheafMap<FieldQ> badphi = identity_presheaf_map(sp);
  badphi.at_obj[0] = scale_map(q.from_int(2), badphi.at_obj[0]);
  CHECK_THROWS_AS(attach_presheaf_cell(sp, 1, 1, badphi), std::invalid_argument);
}
