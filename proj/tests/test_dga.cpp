#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqha/dga.hpp"

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
    for (int n = A.cx.lo; n <= A.cx.hi; ++n)
      if (!equal(A.action(g, n), B.action(g, n))) return false;
  return true;
}

}  // namespace

TEST_CASE("algebra axioms are enforced at load") {
  FieldQ q;
  CHECK_NOTHROW(ground_dga(q));
  CHECK_NOTHROW(exterior_dga(q));
  CHECK_NOTHROW(exterior_dga(FieldFp(2)));

  // an acyclic variant: basis {u, x} with dx = u is still a lawful algebra
  ChainComplex<FieldQ> D =
      make_complex(q, 0, {1, 1}, {Matrix<FieldQ>(q, 0, 1), Matrix<FieldQ>::identity(q, 1)});
  ChainMap<FieldQ> mult{tensor_complex(D, D), D, {}};
  mult.set(0, Matrix<FieldQ>::identity(q, 1));
  Matrix<FieldQ> m1(q, 1, 2);
  m1.at(0, 0) = q.one();
  m1.at(0, 1) = q.one();
  mult.set(1, m1);
  CHECK_NOTHROW(make_dga(D, mult, Matrix<FieldQ>::identity(q, 1)));

  // breaking the unit law on the degree-1 component is rejected
  ChainComplex<FieldQ> E = exterior_dga(q).cx;
  ChainMap<FieldQ> bad{tensor_complex(E, E), E, {}};
  bad.set(0, Matrix<FieldQ>::identity(q, 1));
  Matrix<FieldQ> b1(q, 1, 2);
  b1.at(0, 0) = q.one();
  b1.at(0, 1) = q.from_int(2);
  bad.set(1, b1);
  CHECK_THROWS_AS(make_dga(E, bad, Matrix<FieldQ>::identity(q, 1)),
                  std::invalid_argument);
}

TEST_CASE("scalar extension is unital and free") {
  FieldQ q;
  DGAlgebra<FieldQ> A = exterior_dga(q);

  // A itself: the action matrices coincide with the multiplication
  AModule<FieldQ> selfA = self_module(A);
  CHECK(equal_complex(selfA.cx, A.cx));
  CHECK(equal_maps(selfA.act, A.mult));
  CHECK(amodule_laws(selfA));

  // the one-point complex extends to A: dims {0:1, 1:1}, zero differential
  AModule<FieldQ> pt = extend_scalars(A, sphere(q, 0));
  CHECK(pt.cx.lo == 0);
  CHECK(pt.cx.dim(0) == 1);
  CHECK(pt.cx.dim(1) == 1);
  CHECK(pt.cx.d(1).is_zero());
  CHECK(amodule_laws(pt));

  // over the ground field extension changes nothing
  Rng rng(mix_seed(7, "extend"));
  ChainComplex<FieldQ> X = random_complex(q, rng, -1, 2, 3);
  AModule<FieldQ> MX = extend_scalars(ground_dga(q), X);
  CHECK(same_dims(MX.cx, X));
  CHECK(amodule_laws(MX));

  FieldFp f2(2);
  Rng rng2(mix_seed(8, "extend-f2"));
  CHECK(amodule_laws(extend_scalars(exterior_dga(f2), random_complex(f2, rng2, 0, 2, 3))));
}

TEST_CASE("module laws reject a broken action") {
  FieldQ q;
  DGAlgebra<FieldQ> A = exterior_dga(q);
  AModule<FieldQ> M = self_module(A);
  M.act.comp[1].at(0, 0) = q.from_int(2);  // 1 * x -> 2x violates the unit law
  CHECK(!amodule_laws(M));
  CHECK_THROWS_AS(make_amodule(A, M.cx, M.act), std::invalid_argument);

  // mismatched underlying complexes are rejected for combined modules
  auto C2 = cyclic_group(2);
  GAModule<FieldQ> bad{perm_module(q, left_regular_gset(C2)), self_module(A)};
  CHECK(!gamodule_laws(bad));
}

TEST_CASE("extended modules carry commuting group and algebra actions") {
  auto run = [](auto f, GroupPtr G, auto A, uint64_t seed) {
    Rng rng(mix_seed(seed, "gamodule"));
    GAModule<decltype(f)> N = extend_gmodule(random_gmodule(f, rng, G, -1, 2, 2), A);
    CHECK(gamodule_laws(N));
  };
  FieldQ q;
  run(q, cyclic_group(2), exterior_dga(q), 31);
  run(q, cyclic_group(2), ground_dga(q), 32);
  FieldFp f5(5);
  run(f5, symmetric3(), exterior_dga(f5), 33);
}

TEST_CASE("linear maps over the algebra form a subcomplex") {
  FieldQ q;
  DGAlgebra<FieldQ> A = exterior_dga(q);
  AModule<FieldQ> selfA = self_module(A);

  // endomorphisms of A: one in each of degrees 0 and 1
  HomOverData<FieldQ> H = hom_over(selfA, selfA);
  CHECK(H.cx.dim(0) == 1);
  CHECK(H.cx.dim(1) == 1);
  CHECK(H.cx.dim(-1) == 0);
  CHECK(H.incl.is_chain_map());

  // over the ground field no condition is imposed
  Rng rng(mix_seed(11, "homover"));
  ChainComplex<FieldQ> X = random_complex(q, rng, 0, 2, 2);
  ChainComplex<FieldQ> Y = random_complex(q, rng, 0, 2, 2);
  DGAlgebra<FieldQ> R = ground_dga(q);
  HomOverData<FieldQ> HR = hom_over(extend_scalars(R, X), extend_scalars(R, Y));
  CHECK(same_dims(HR.cx, HR.hom));

  // evaluation at the unit: hom_A(A, N) is N
  CHECK(self_hom_iso(selfA).verify());
  CHECK(self_hom_iso(extend_scalars(A, X)).verify());
  FieldFp f2(2);
  Rng rng2(mix_seed(12, "homover-f2"));
  DGAlgebra<FieldFp> A2 = exterior_dga(f2);
  CHECK(self_hom_iso(extend_scalars(A2, random_complex(f2, rng2, -1, 1, 2))).verify());

  // maps off an extended module are maps of the underlying complex
  AModule<FieldQ> N = extend_scalars(A, Y);
  HomOverData<FieldQ> HX = hom_over(extend_scalars(A, X), N);
  CHECK(same_dims(HX.cx, hom_complex(X, N.cx)));
}

TEST_CASE("equivariant linear maps counted two ways") {
  auto run = [](auto f, GroupPtr G, auto A, uint64_t seed) {
    Rng rng(mix_seed(seed, "count"));
    using FF = decltype(f);
    GAModule<FF> M = extend_gmodule(random_gmodule(f, rng, G, 0, 1, 2), A);
    GAModule<FF> N = extend_gmodule(random_gmodule(f, rng, G, 0, 1, 2), A);
    HomOverData<FF> HO = hom_over(M.am, N.am);
    GModule<FF> HG = hom_over_g(M, N, HO);
    SubComplex<FF> fx = fixed_points(HG, full_subgroup(G));
    int via_complex = nullspace(fx.cx.d(0)).nc;
    CHECK(via_complex == equivariant_a_maps_dim(M, N));
  };
  FieldQ q;
  run(q, cyclic_group(2), exterior_dga(q), 41);
  FieldFp f2(2);
  run(f2, cyclic_group(2), exterior_dga(f2), 42);
  FieldFp f5(5);
  run(f5, cyclic_group(3), ground_dga(f5), 43);
}

TEST_CASE("fixed points of extended modules are module-valued presheaves") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  auto O = fixed_orbit_category(q, all_family(C2));
  DGAlgebra<FieldQ> A = exterior_dga(q);
  Rng rng(mix_seed(51, "presheaf-over"));
  GAModule<FieldQ> N = extend_gmodule(random_gmodule(q, rng, C2, -1, 2, 2), A);
  AlgebraFixedPresheaf<FieldQ> U = fixed_presheaf_over(O, N);
  CHECK(presheaf_laws(U.u.pre));
  for (auto& v : U.vals) CHECK(amodule_laws(v));
  CHECK(structure_maps_linear(U));

  GAModule<FieldQ> back = underlying_gamodule(O, U);
  CHECK(equal_gmodule(back.gm, N.gm));
  CHECK(equal_gamodule(back, N));

  UnitData<FieldQ> eta = unit_eta(O, U.u.pre);
  for (auto& c : eta.eta.at_obj) CHECK(is_identity_map(c));
}

TEST_CASE("the adjunction suite holds over exterior and ground algebras") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  auto O = fixed_orbit_category(q, all_family(C2));
  auto repx = algebra_adjunction_suite(O, exterior_dga(q), 61, 3);
  CHECK(repx.ok());
  CHECK(repx.modules == 3);
  CHECK(repx.cells == 8);

  // with the ground field as the algebra this is the plain adjunction suite
  auto repr = algebra_adjunction_suite(O, ground_dga(q), 62, 3);
  CHECK(repr.ok());

  FieldFp f2(2);
  auto O2 = fixed_orbit_category(f2, all_family(C2));
  CHECK(algebra_adjunction_suite(O2, exterior_dga(f2), 63, 2).ok());

  auto S3 = symmetric3();
  auto OS = fixed_orbit_category(q, all_family(S3));
  CHECK(algebra_adjunction_suite(OS, exterior_dga(q), 64, 1).ok());
}

TEST_CASE("modules are presheaves on the one-object category of the algebra") {
  FieldQ q;
  DGAlgebra<FieldQ> A = exterior_dga(q);
  AModule<FieldQ> selfA = self_module(A);
  Presheaf<FieldQ> P = amodule_as_presheaf(selfA);
  CHECK(presheaf_laws(P));
  AModule<FieldQ> back = amodule_from_presheaf(A, P);
  CHECK(equal_amodule(back, selfA));

  // the ground field gives the unit category
  VCategory<FieldQ> pt = algebra_category(ground_dga(q));
  VCategory<FieldQ> unit = unit_category(q);
  CHECK(equal_complex(pt.hom[0][0], unit.hom[0][0]));
  CHECK(equal(pt.comp[0][0][0].at(0), unit.comp[0][0][0].at(0)));
}

TEST_CASE("re-indexing between orbit functors and product presheaves") {
  auto run = [](auto f, auto A, uint64_t seed) {
    auto O = fixed_orbit_category(f, all_family(cyclic_group(2)));
    auto rep = reindex_suite(O, A, seed, 6);
    CHECK(rep.ok());
    CHECK(rep.instances == 6);
  };
  FieldQ q;
  run(q, exterior_dga(q), 71);
  run(q, ground_dga(q), 72);
  FieldFp f2(2);
  run(f2, exterior_dga(f2), 73);
  FieldFp f5(5);
  run(f5, exterior_dga(f5), 74);
}

TEST_CASE("balanced tensor of extended modules extends the plain tensor") {
  auto run = [](auto f, uint64_t seed) {
    using FF = decltype(f);
    DGAlgebra<FF> A = exterior_dga(f);
    Rng rng(mix_seed(seed, "balanced"));
    ChainComplex<FF> X = random_complex(f, rng, 0, 2, 2);
    ChainComplex<FF> Y = random_complex(f, rng, 0, 2, 2);
    QuotComplex<FF> T = tensor_over(extend_scalars(A, X), extend_scalars(A, Y));
    CHECK(same_dims(T.cx, tensor_complex(A.cx, tensor_complex(X, Y))));

    // the algebra itself is a unit: A (x)_A N has the dimensions of N
    AModule<FF> N = extend_scalars(A, Y);
    CHECK(same_dims(tensor_over(self_module(A), N).cx, N.cx));

    // over the ground field the balanced tensor is the plain one
    DGAlgebra<FF> R = ground_dga(f);
    QuotComplex<FF> TR = tensor_over(extend_scalars(R, X), extend_scalars(R, Y));
    CHECK(same_dims(TR.cx, tensor_complex(X, Y)));
  };
  run(FieldQ{}, 81);
  run(FieldFp(2), 82);
}

TEST_CASE("restriction detects subspaces the action leaves") {
  FieldQ q;
  DGAlgebra<FieldQ> A = exterior_dga(q);
  AModule<FieldQ> selfA = self_module(A);
  // the span of 1 in degree 0 is not stable under multiplication by x
  ChainComplex<FieldQ> pt = ChainComplex<FieldQ>::concentrated(q, 0, 1);
  ChainMap<FieldQ> incl{pt, selfA.cx, {}};
  incl.set(0, Matrix<FieldQ>::identity(q, 1));
  SubComplex<FieldQ> S{pt, incl};
  CHECK_THROWS_AS(restrict_graded(algebra_action(selfA, 1, 0), S), std::logic_error);
}

TEST_CASE("base-change comparison over the ground field matches fixed points") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  Family fam = all_family(C2);
  auto out = tau_comparison(q, fam, ground_dga(q));
  REQUIRE(out.size() == 4);
  int expected[4] = {2, 1, 1, 1};  // (e,e), (e,C2), (C2,e), (C2,C2)
  for (size_t k = 0; k < 4; ++k) {
    CHECK(out[k].lhs.dim(0) == expected[k]);
    CHECK(out[k].rhs.dim(0) == expected[k]);
    CHECK(out[k].chain);
    CHECK(out[k].iso);
    CHECK(out[k].qiso);
  }
  // the morphism-wrapping orbit category sees no map the other way: the
  // comparison complex at (C2, e) has rank 1 where that hom has rank 0
  auto Omaps = group_ring_orbit_category(q, fam);
  CHECK(Omaps.cat.hom[1][0].dim(0) == 0);
  CHECK(out[2].lhs.dim(0) == 1);
}

TEST_CASE("base-change comparison with the exterior algebra, per instance") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  auto out = tau_comparison(q, all_family(C2), exterior_dga(q));
  REQUIRE(out.size() == 4);
  for (auto& t : out) {
    CHECK(t.chain);
    CHECK(same_dims(t.lhs, t.rhs));
    CHECK(t.iso);
    CHECK(t.qiso);
  }
  // the one-orbit case: both sides are A itself
  auto t11 = out[3];
  CHECK(t11.lhs.dim(0) == 1);
  CHECK(t11.lhs.dim(1) == 1);

  auto one = cyclic_group(1);
  auto single = tau_comparison(q, all_family(one), exterior_dga(q));
  REQUIRE(single.size() == 1);
  CHECK(single[0].chain);
  CHECK(single[0].iso);

  FieldFp f5(5);
  auto outc3 = tau_comparison(f5, all_family(cyclic_group(3)), exterior_dga(f5));
  REQUIRE(outc3.size() == 4);
  for (auto& t : outc3) {
    CHECK(t.chain);
    CHECK(t.qiso);
  }
}
