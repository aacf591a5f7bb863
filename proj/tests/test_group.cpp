#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "eqha/group.hpp"

using namespace eqha;

namespace {

// Independent subgroup enumeration: brute force over all subsets (groups
// here have order <= 8, and s3 has order 6).
std::vector<std::vector<int>> brute_force_subgroups(const FiniteGroup& G) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << G.n); ++mask) {
    if (!(mask & (1u << G.e))) continue;
    std::vector<int> elems;
    for (int g = 0; g < G.n; ++g)
      if (mask & (1u << g)) elems.push_back(g);
    bool closed = true;
    for (int a : elems) {
      if (!(mask & (1u << G.inv(a)))) closed = false;
      for (int b : elems)
        if (!(mask & (1u << G.op(a, b)))) closed = false;
    }
    if (closed) out.push_back(elems);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

TEST_CASE("cyclic group structure") {
  auto C4 = cyclic_group(4);
  CHECK(C4->n == 4);
  CHECK(C4->e == 0);
  CHECK(C4->op(1, 1) == 2);
  CHECK(C4->op(3, 1) == 0);
  CHECK(C4->inv(1) == 3);
  CHECK(C4->labels[2] == "g^2");
  CHECK(C4->label_index("g^3") == 3);
}

TEST_CASE("s3 composition and labels") {
  auto S3 = symmetric3();
  CHECK(S3->n == 6);
  int t12 = S3->label_index("(12)");
  int t13 = S3->label_index("(13)");
  int r132 = S3->label_index("(132)");
  CHECK(S3->op(t12, t13) == r132);  // apply (13) first, then (12)
  CHECK(S3->inv(S3->label_index("(123)")) == r132);
  CHECK(S3->inv(t12) == t12);
}

TEST_CASE("table validation rejects garbage") {
  CHECK_THROWS(make_group_from_table({{0, 1}, {1, 1}}, {}, "bad"));       // not latin
  CHECK_THROWS(make_group_from_table({{1, 0}, {0, 0}}, {}, "bad"));      // no identity row works out
  CHECK_THROWS(make_group_from_table({{0, 1}, {1, 0}}, {"e"}, "bad"));   // label count
}

TEST_CASE("permutation generators close to s3") {
  auto G = make_group_from_perms({{1, 0, 2}, {1, 2, 0}}, {"a", "b"}, "s3gen");
  CHECK(G->n == 6);
  // orders: three elements of order 2, two of order 3, identity
  std::multiset<int> orders;
  for (int g = 0; g < 6; ++g) {
    int o = 1, x = g;
    while (x != G->e) {
      x = G->op(x, g);
      ++o;
    }
    orders.insert(o);
  }
  CHECK(orders == std::multiset<int>{1, 2, 2, 2, 3, 3});
}

TEST_CASE("opposite group") {
  auto S3 = symmetric3();
  auto Op = opposite_group(S3);
  int a = S3->label_index("(12)"), b = S3->label_index("(13)");
  CHECK(Op->op(a, b) == S3->op(b, a));
  CHECK(Op->e == S3->e);
  auto C4 = cyclic_group(4);
  auto C4op = opposite_group(C4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(C4op->op(x, y) == C4->op(x, y));
}

TEST_CASE("subgroup lattice matches brute force") {
  for (auto G : {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric3()}) {
    auto lat = subgroup_lattice(G);
    auto brute = brute_force_subgroups(*G);
    REQUIRE(lat.size() == brute.size());
    for (size_t i = 0; i < lat.size(); ++i) CHECK(lat[i].elems == brute[i]);
  }
  CHECK(subgroup_lattice(cyclic_group(2)).size() == 2);
  CHECK(subgroup_lattice(cyclic_group(3)).size() == 2);
  CHECK(subgroup_lattice(cyclic_group(4)).size() == 3);
  CHECK(subgroup_lattice(symmetric3()).size() == 6);
}

TEST_CASE("subgroup validation and helpers") {
  auto S3 = symmetric3();
  CHECK_THROWS(make_subgroup(S3, {S3->e, S3->label_index("(123)")}));  // not closed
  auto H = make_subgroup(S3, {S3->e, S3->label_index("(12)")});
  CHECK(H.key() == "{e,(12)}");
  auto gens = subgroup_generators(H);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == S3->label_index("(12)"));
  CHECK(subgroup_generators(trivial_subgroup(S3)).empty());
  auto A3 = make_subgroup(S3, {S3->e, S3->label_index("(123)"), S3->label_index("(132)")});
  CHECK(subgroup_generators(A3).size() == 1);

  auto conj = conjugate_subgroup(H, S3->label_index("(123)"));
  CHECK(conj.size() == 2);
  CHECK(!same_subgroup(conj, H));
  CHECK(subgroup_leq(trivial_subgroup(S3), H));
  CHECK(!subgroup_leq(A3, H));
}

TEST_CASE("subgroup as standalone group") {
  auto S3 = symmetric3();
  auto A3 = make_subgroup(S3, {S3->e, S3->label_index("(123)"), S3->label_index("(132)")});
  auto sub = subgroup_as_group(A3);
  CHECK(sub.grp->n == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(sub.to_parent[sub.grp->op(a, b)] == S3->op(sub.to_parent[a], sub.to_parent[b]));
  CHECK(sub.from_parent(S3->label_index("(123)")) >= 0);
  CHECK(sub.from_parent(S3->label_index("(12)")) == -1);
}

TEST_CASE("family closure") {
  auto S3 = symmetric3();
  auto H = make_subgroup(S3, {S3->e, S3->label_index("(12)")});
  auto fam = family_closure(S3, {H});
  // trivial + the three conjugate order-2 subgroups
  CHECK(fam.members.size() == 4);
  CHECK(fam.contains(trivial_subgroup(S3)));
  CHECK(fam.contains(make_subgroup(S3, {S3->e, S3->label_index("(23)")})));
  CHECK(!fam.contains(full_subgroup(S3)));

  CHECK(all_family(S3).members.size() == 6);
  CHECK(trivial_family(S3).members.size() == 1);

  // closure is closed under conjugation and subgroups
  for (const auto& K : fam.members)
    for (int g = 0; g < S3->n; ++g) CHECK(fam.contains(conjugate_subgroup(K, g)));
}

TEST_CASE("coset space") {
  auto S3 = symmetric3();
  auto H = make_subgroup(S3, {S3->e, S3->label_index("(12)")});
  auto cs = coset_space(H);
  CHECK(cs.gs.size == 3);
  CHECK(cs.e_coset == 0);
  CHECK(cs.reps[0] == S3->e);
  for (int g = 0; g < S3->n; ++g) CHECK(cs.elem_coset[g] == cs.gs.act[g][cs.e_coset]);
  // transitive
  CHECK(gset_orbits(cs.gs).size() == 1);

  auto C4 = cyclic_group(4);
  auto K = make_subgroup(C4, {0, 2});
  auto cs2 = coset_space(K);
  CHECK(cs2.gs.size == 2);
  CHECK(gset_fixed_points(cs2.gs, K) == std::vector<int>{0, 1});
  CHECK(gset_fixed_points(cs2.gs, full_subgroup(C4)).empty());
}

TEST_CASE("gset machinery") {
  auto C2 = cyclic_group(2);
  auto free_orbit = coset_gset(trivial_subgroup(C2));
  auto fixed_pt = coset_gset(full_subgroup(C2));
  auto uni = gset_disjoint_union(free_orbit, fixed_pt);
  CHECK(uni.size == 3);
  CHECK(gset_orbits(uni).size() == 2);
  CHECK(gset_fixed_points(uni, full_subgroup(C2)) == std::vector<int>{2});
  CHECK(stabilizer(uni, 0).size() == 1);
  CHECK(stabilizer(uni, 2).size() == 2);

  auto S3 = symmetric3();
  auto X = coset_gset(make_subgroup(S3, {S3->e, S3->label_index("(12)")}));
  auto orb = gset_orbits_under(X, make_subgroup(S3, {S3->e, S3->label_index("(12)")}));
  // H\G/H double cosets: eH fixed, the other two cosets swap
  REQUIRE(orb.size() == 2);
  CHECK(orb[0] == std::vector<int>{0});
  CHECK(orb[1].size() == 2);
}

TEST_CASE("equivariant map enumeration") {
  auto C2 = cyclic_group(2);
  auto free_orbit = coset_gset(trivial_subgroup(C2));
  auto pt = coset_gset(full_subgroup(C2));
  CHECK(equivariant_maps(free_orbit, free_orbit).size() == 2);
  CHECK(equivariant_maps(pt, free_orbit).empty());
  CHECK(equivariant_maps(free_orbit, pt).size() == 1);

  // count always equals |fixed points of stabilizer| per orbit, multiplied
  for (auto Gp : {cyclic_group(4), symmetric3()}) {
    auto lat = subgroup_lattice(Gp);
    for (const auto& H : lat)
      for (const auto& K : lat) {
        auto X = coset_gset(H), Y = coset_gset(K);
        auto maps = equivariant_maps(X, Y);
        CHECK(maps.size() == gset_fixed_points(Y, H).size());
        std::set<std::vector<int>> uniq(maps.begin(), maps.end());
        CHECK(uniq.size() == maps.size());
        for (const auto& m : maps)
          for (int g = 0; g < Gp->n; ++g)
            for (int x = 0; x < X.size; ++x) CHECK(m[X.act[g][x]] == Y.act[g][m[x]]);
      }
  }
}
