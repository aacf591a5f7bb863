#pragma once

#include <memory>
#include <string>
#include <vector>

namespace eqha {

// Finite group as a validated multiplication table. Element 0-based ids,
// labels for I/O. Immutable after construction; shared by everything built
// on top of it.
struct FiniteGroup {
  int n = 0;
  std::vector<int> table;  // table[a*n+b] = a*b
  std::vector<int> invv;
  int e = 0;
  std::vector<std::string> labels;
  std::string name;

  int op(int a, int b) const { return table[a * n + b]; }
  int inv(int a) const { return invv[a]; }
  int label_index(const std::string& s) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Validates associativity, identity, inverses, Latin square property.
GroupPtr make_group_from_table(const std::vector<std::vector<int>>& cayley,
                               std::vector<std::string> labels, std::string name);

// Closure of permutation generators under composition ((a*b)(x) = a(b(x))).
GroupPtr make_group_from_perms(const std::vector<std::vector<int>>& gens,
                               const std::vector<std::string>& gen_names, std::string name);

GroupPtr cyclic_group(int n);
GroupPtr symmetric3();
GroupPtr group_by_name(const std::string& name);  // c2,c3,c4,s3

// Same elements, reversed multiplication.
GroupPtr opposite_group(const GroupPtr& G);

struct Subgroup {
  GroupPtr parent;
  std::vector<int> elems;  // sorted, always contains the identity

  bool contains(int g) const;
  int size() const { return int(elems.size()); }
  std::string key() const;  // canonical textual id, e.g. "{e,g^2}"
};

Subgroup make_subgroup(GroupPtr G, std::vector<int> elems);  // validates closure
Subgroup trivial_subgroup(GroupPtr G);
Subgroup full_subgroup(GroupPtr G);
bool same_subgroup(const Subgroup& a, const Subgroup& b);
Subgroup conjugate_subgroup(const Subgroup& H, int g);  // g H g^{-1}
bool subgroup_leq(const Subgroup& a, const Subgroup& b);

// All subgroups, ordered by (size, elements lexicographic).
std::vector<Subgroup> subgroup_lattice(const GroupPtr& G);

// Small generating set (greedy).
std::vector<int> subgroup_generators(const Subgroup& H);

// The subgroup as a standalone group; to_parent maps new ids to old.
struct SubgroupGroup {
  GroupPtr grp;
  std::vector<int> to_parent;
  int from_parent(int g) const;
};
SubgroupGroup subgroup_as_group(const Subgroup& H);

// Family of subgroups closed under conjugation and passing to subgroups.
struct Family {
  GroupPtr parent;
  std::vector<Subgroup> members;  // ordered by (size, elems lex)

  bool contains(const Subgroup& H) const;
};

Family family_closure(GroupPtr G, const std::vector<Subgroup>& seeds);
Family all_family(const GroupPtr& G);
Family trivial_family(const GroupPtr& G);

// Finite left G-set given by one permutation of the points per element.
struct GSet {
  GroupPtr parent;
  int size = 0;
  std::vector<std::vector<int>> act;  // act[g][x]
  std::vector<std::string> point_labels;

  int apply(int g, int x) const { return act[g][x]; }
};

GSet make_gset(GroupPtr G, std::vector<std::vector<int>> act,
               std::vector<std::string> point_labels);  // validates
GSet gset_disjoint_union(const GSet& A, const GSet& B);

// Left cosets gH with the translation action. Cosets are ordered (and
// represented) by their minimal element id.
struct CosetSpace {
  Subgroup H;
  GSet gs;
  std::vector<int> reps;        // reps[c] = minimal element of coset c
  std::vector<int> elem_coset;  // elem_coset[g] = coset of g
  int e_coset = 0;              // the coset H itself
};
CosetSpace coset_space(const Subgroup& H);
GSet coset_gset(const Subgroup& H);

std::vector<int> gset_fixed_points(const GSet& X, const Subgroup& H);
std::vector<std::vector<int>> gset_orbits(const GSet& X);                       // under all of G
std::vector<std::vector<int>> gset_orbits_under(const GSet& X, const Subgroup& H);
Subgroup stabilizer(const GSet& X, int x);

// All equivariant maps X -> Y, each as the vector of images, in
// lexicographic order.
std::vector<std::vector<int>> equivariant_maps(const GSet& X, const GSet& Y);

}  // namespace eqha
