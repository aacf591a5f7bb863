#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqha/orbit_cat.hpp"
#include "eqha/random_gen.hpp"

using namespace eqha;

namespace {

// Exterior algebra on one degree-1 generator: basis {1, x}, x^2 = 0, d = 0.
template <class F>
VCategory<F> exterior_point(F f) {
  ChainComplex<F> E = make_complex(f, 0, {1, 1}, {Matrix<F>(f, 0, 1), Matrix<F>(f, 1, 1)});
  ChainComplex<F> T = tensor_complex(E, E);
  ChainMap<F> mult{T, E, {}};
  mult.set(0, Matrix<F>::identity(f, 1));
  Matrix<F> m1(f, 1, 2);
  m1.at(0, 0) = f.one();  // 1⊗x
  m1.at(0, 1) = f.one();  // x⊗1
  mult.set(1, m1);
  return one_object_category(E, mult, Matrix<F>::identity(f, 1), "ext");
}

}  // namespace

TEST_CASE("orbit category hom ranks for the cyclic group of order 2") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  auto P = build_orbit_pair(q, all_family(C2));
  // objects ordered by size: [e, C2]
  CHECK(P.by_maps.dim(0, 0) == 2);
  CHECK(P.by_maps.dim(0, 1) == 1);
  CHECK(P.by_maps.dim(1, 0) == 0);
  CHECK(P.by_maps.dim(1, 1) == 1);
  CHECK(P.by_fixed.dim(0, 0) == 2);
  CHECK(P.by_fixed.dim(0, 1) == 1);
  CHECK(P.by_fixed.dim(1, 0) == 1);  // strictly bigger than the map-based hom
  CHECK(P.by_fixed.dim(1, 1) == 1);
}

TEST_CASE("free homs on equivariant maps have the expected ranks") {
  FieldQ q;
  auto S3 = symmetric3();
  auto O = group_ring_orbit_category(q, all_family(S3));
  CHECK(O.cat.nobj == 6);
  CHECK(O.dim(0, 0) == 6);  // G-maps G/e -> G/e are the right translations
  for (int i = 0; i < O.cat.nobj; ++i)
    for (int j = 0; j < O.cat.nobj; ++j)
      CHECK(O.dim(i, j) ==
            int(equivariant_maps(O.cosets[i].gs, O.cosets[j].gs).size()));
}

TEST_CASE("fixed-variant hom ranks count orbits") {
  auto check_ranks = [](auto f, GroupPtr G) {
    auto O = fixed_orbit_category(f, all_family(G));
    for (int i = 0; i < O.cat.nobj; ++i) {
      for (int j = 0; j < O.cat.nobj; ++j) {
        int orbs = int(gset_orbits_under(O.cosets[j].gs, O.family.members[i]).size());
        CHECK(O.dim(i, j) == orbs);
      }
      // hom out of G/e is the whole permutation module
      CHECK(O.dim(0, i) == O.cosets[i].gs.size);
    }
    CHECK(O.dim(0, 0) == G->n);
  };
  check_ranks(FieldQ{}, cyclic_group(4));
  check_ranks(FieldQ{}, symmetric3());
  check_ranks(FieldFp(2), symmetric3());
  check_ranks(FieldFp(5), cyclic_group(3));
}

TEST_CASE("both orbit category variants satisfy the category laws") {
  FieldQ q;
  for (auto G : {cyclic_group(2), cyclic_group(3), cyclic_group(4)}) {
    auto P = build_orbit_pair(q, all_family(G));
    CHECK(category_laws(P.by_maps.cat));
    CHECK(category_laws(P.by_fixed.cat));
  }
  auto S3 = symmetric3();
  auto PF = build_orbit_pair(FieldFp(2), all_family(S3));
  CHECK(category_laws(PF.by_maps.cat));
  CHECK(category_laws(PF.by_fixed.cat));
  // a proper family: conjugation-and-subgroup closure of one reflection
  Subgroup H = subgroup_lattice(S3)[1];
  REQUIRE(H.size() == 2);
  Family fam = family_closure(S3, {H});
  CHECK(int(fam.members.size()) == 4);
  auto PS = build_orbit_pair(FieldFp(5), fam);
  CHECK(category_laws(PS.by_fixed.cat));
  CHECK(functor_laws(PS.by_maps.cat, PS.by_fixed.cat, PS.delta));
}

TEST_CASE("comparison functor is functorial and injective on homs") {
  FieldQ q;
  for (auto G : {cyclic_group(2), cyclic_group(4), symmetric3()}) {
    auto P = build_orbit_pair(q, all_family(G));
    CHECK(functor_laws(P.by_maps.cat, P.by_fixed.cat, P.delta));
    for (int i = 0; i < P.by_maps.cat.nobj; ++i)
      for (int j = 0; j < P.by_maps.cat.nobj; ++j)
        CHECK(rank(P.delta.map[i][j].at(0)) == P.by_maps.dim(i, j));
  }
  // over the trivial group the two variants coincide via the comparison
  auto P1 = build_orbit_pair(q, all_family(cyclic_group(1)));
  CHECK(functor_laws(P1.by_maps.cat, P1.by_fixed.cat, P1.delta));
  for (int i = 0; i < P1.by_maps.cat.nobj; ++i)
    for (int j = 0; j < P1.by_maps.cat.nobj; ++j) {
      CHECK(P1.by_maps.dim(i, j) == P1.by_fixed.dim(i, j));
      CHECK(invertible(P1.delta.map[i][j].at(0)));
    }
  // the C2 discrepancy: map-based hom vanishes, fixed hom does not
  auto P2 = build_orbit_pair(q, all_family(cyclic_group(2)));
  CHECK(P2.by_maps.dim(1, 0) == 0);
  CHECK(P2.by_fixed.dim(1, 0) == 1);
  CHECK(invertible(P2.delta.map[0][0].at(0)));
}

TEST_CASE("one-object categories from algebras") {
  FieldQ q;
  for (auto G : {cyclic_group(4), symmetric3()}) {
    auto H = group_ring_hopf(q, G);
    Matrix<FieldQ> unit_col(q, G->n, 1);
    unit_col.at(G->e, 0) = q.one();
    auto C = one_object_category(H.mod.cx, H.mult, unit_col, "R[G]");
    CHECK(category_laws(C));
  }
  auto E = exterior_point(q);
  CHECK(category_laws(E));
  CHECK(category_laws(exterior_point(FieldFp(2))));
  CHECK(category_laws(unit_category(q)));
}

TEST_CASE("opposite categories keep the laws") {
  FieldQ q;
  auto C2 = cyclic_group(2);
  auto P = build_orbit_pair(q, all_family(C2));
  CHECK(category_laws(opposite_category(P.by_fixed.cat)));
  CHECK(category_laws(opposite_category(P.by_maps.cat)));
  auto E = exterior_point(q);
  auto Eop = opposite_category(E);
  CHECK(category_laws(Eop));
  // double opposite returns the original composition matrices
  auto Eoo = opposite_category(Eop);
  for (int n = 0; n <= 2; ++n) CHECK(equal(Eoo.comp[0][0][0].at(n), E.comp[0][0][0].at(n)));
}

TEST_CASE("product categories interleave with the sign rule") {
  FieldQ q;
  auto E = exterior_point(q);
  auto EE = product_category(E, E);  // exterior algebra on two generators
  CHECK(EE.nobj == 1);
  CHECK(EE.hom[0][0].dim(0) == 1);
  CHECK(EE.hom[0][0].dim(1) == 2);
  CHECK(EE.hom[0][0].dim(2) == 1);
  CHECK(category_laws(EE));
  // x⊗1 and 1⊗y anticommute
  Matrix<FieldQ> ex = basis_column(q, 2, 1);  // x⊗1
  Matrix<FieldQ> ey = basis_column(q, 2, 0);  // 1⊗y
  Matrix<FieldQ> xy = compose_elems(EE, 0, 0, 0, 1, ex, 1, ey);
  Matrix<FieldQ> yx = compose_elems(EE, 0, 0, 0, 1, ey, 1, ex);
  CHECK(equal(xy, scale(q.neg(q.one()), yx)));
  CHECK(!xy.is_zero());

  auto C2 = cyclic_group(2);
  auto Fx = fixed_orbit_category(q, all_family(C2));
  auto PU = product_category(Fx.cat, unit_category(q));
  CHECK(category_laws(PU));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(PU.hom[i][j].dim(0) == Fx.cat.hom[i][j].dim(0));
  CHECK(category_laws(product_category(Fx.cat, E)));
}

TEST_CASE("the tensor symmetry is a chain isomorphism") {
  FieldQ q;
  Rng rng{mix_seed(42, "swap")};
  auto A = random_complex(q, rng, -1, 2, 3);
  auto B = random_complex(q, rng, 0, 2, 2);
  auto s = tensor_swap(A, B);
  CHECK(s.is_chain_map());
  auto t = tensor_swap(B, A);
  CHECK(is_identity_map(compose(t, s)));
  CHECK(is_identity_map(compose(s, t)));
}
