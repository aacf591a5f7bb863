#include "eqha/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace eqha {

int FiniteGroup::label_index(const std::string& s) const {
  for (int i = 0; i < n; ++i)
    if (labels[i] == s) return i;
  return -1;
}

GroupPtr make_group_from_table(const std::vector<std::vector<int>>& cayley,
                               std::vector<std::string> labels, std::string name) {
  auto G = std::make_shared<FiniteGroup>();
  int n = int(cayley.size());
  if (n == 0) throw std::invalid_argument("empty group table");
  G->n = n;
  G->table.assign(n * n, 0);
  for (int a = 0; a < n; ++a) {
    if (int(cayley[a].size()) != n) throw std::invalid_argument("group table not square");
    for (int b = 0; b < n; ++b) {
      int v = cayley[a][b];
      if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
      G->table[a * n + b] = v;
    }
  }
  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      if (row[G->op(a, b)]) throw std::invalid_argument("group table row not a permutation");
      row[G->op(a, b)] = true;
      if (col[G->op(b, a)]) throw std::invalid_argument("group table column not a permutation");
      col[G->op(b, a)] = true;
    }
  }
  // identity
  int e = -1;
  for (int a = 0; a < n; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b)
      if (G->op(a, b) != b || G->op(b, a) != b) {
        ok = false;
        break;
      }
    if (ok) {
      e = a;
      break;
    }
  }
  if (e < 0) throw std::invalid_argument("group table has no identity");
  G->e = e;
  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G->op(G->op(a, b), c) != G->op(a, G->op(b, c)))
          throw std::invalid_argument("group table not associative");
  // inverses
  G->invv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G->op(a, b) == e) G->invv[a] = b;
  for (int a = 0; a < n; ++a)
    if (G->invv[a] < 0) throw std::invalid_argument("group element without inverse");

  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(i == e ? "e" : "x" + std::to_string(i));
  if (int(labels.size()) != n) throw std::invalid_argument("label count mismatch");
  std::set<std::string> uniq(labels.begin(), labels.end());
  if (int(uniq.size()) != n) throw std::invalid_argument("duplicate labels");
  G->labels = std::move(labels);
  G->name = std::move(name);
  return G;
}

GroupPtr make_group_from_perms(const std::vector<std::vector<int>>& gens,
                               const std::vector<std::string>& gen_names, std::string name) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  size_t deg = gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != deg) throw std::invalid_argument("generator degrees differ");
    std::vector<bool> seen(deg, false);
    for (int v : g) {
      if (v < 0 || v >= int(deg) || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }
  std::vector<int> id(deg);
  for (size_t i = 0; i < deg; ++i) id[i] = int(i);

  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(deg);
    for (size_t x = 0; x < deg; ++x) c[x] = a[b[x]];
    return c;
  };

  std::vector<std::vector<int>> elems{id};
  std::vector<std::string> words{"e"};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto next = compose(gens[gi], elems[head]);
      if (index.count(next)) continue;
      std::string nm = gen_names.size() > gi ? gen_names[gi] : "s" + std::to_string(gi);
      std::string w = head == 0 ? nm : nm + "*" + words[head];
      index[next] = int(elems.size());
      elems.push_back(next);
      words.push_back(w);
    }
    if (elems.size() > 10000) throw std::invalid_argument("generated group too large");
  }
  int n = int(elems.size());
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cayley[a][b] = index.at(compose(elems[a], elems[b]));
  return make_group_from_table(cayley, words, std::move(name));
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cayley[a][b] = (a + b) % n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i)));
  return make_group_from_table(cayley, labels, "c" + std::to_string(n));
}

GroupPtr symmetric3() {
  // permutations of {0,1,2}; (abc) in labels uses 1-based points
  std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  int n = 6;
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  auto find = [&](const std::vector<int>& p) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == p) return i;
    throw std::logic_error("s3 composition");
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(3);
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      cayley[a][b] = find(c);
    }
  return make_group_from_table(cayley, labels, "s3");
}

GroupPtr group_by_name(const std::string& name) {
  if (name == "c2") return cyclic_group(2);
  if (name == "c3") return cyclic_group(3);
  if (name == "c4") return cyclic_group(4);
  if (name == "s3") return symmetric3();
  throw std::invalid_argument("unknown group name: " + name);
}

GroupPtr opposite_group(const GroupPtr& G) {
  int n = G->n;
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cayley[a][b] = G->op(b, a);
  return make_group_from_table(cayley, G->labels, G->name + "_op");
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

std::string Subgroup::key() const {
  std::string s = "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ",";
    s += parent->labels[elems[i]];
  }
  return s + "}";
}

Subgroup make_subgroup(GroupPtr G, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (int g : elems)
    if (g < 0 || g >= G->n) throw std::invalid_argument("subgroup element out of range");
  Subgroup H{G, elems};
  if (!H.contains(G->e)) throw std::invalid_argument("subgroup missing identity");
  for (int a : elems) {
    if (!H.contains(G->inv(a))) throw std::invalid_argument("subgroup not closed under inverse");
    for (int b : elems)
      if (!H.contains(G->op(a, b))) throw std::invalid_argument("subgroup not closed");
  }
  return H;
}

Subgroup trivial_subgroup(GroupPtr G) { return Subgroup{G, {G->e}}; }

Subgroup full_subgroup(GroupPtr G) {
  std::vector<int> all(G->n);
  for (int i = 0; i < G->n; ++i) all[i] = i;
  return Subgroup{G, all};
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) { return a.elems == b.elems; }

Subgroup conjugate_subgroup(const Subgroup& H, int g) {
  const auto& G = *H.parent;
  std::vector<int> out;
  for (int h : H.elems) out.push_back(G.op(G.op(g, h), G.inv(g)));
  std::sort(out.begin(), out.end());
  return Subgroup{H.parent, out};
}

bool subgroup_leq(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
}

std::vector<Subgroup> subgroup_lattice(const GroupPtr& G) {
  // close every subset of a generating-set frontier: BFS on generated subgroups
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  auto close = [&](std::vector<int> seed) {
    std::set<int> S(seed.begin(), seed.end());
    S.insert(G->e);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(S.begin(), S.end());
      for (int a : cur)
        for (int b : cur) {
          if (S.insert(G->op(a, b)).second) grew = true;
          if (S.insert(G->inv(a)).second) grew = true;
        }
    }
    return std::vector<int>(S.begin(), S.end());
  };
  found.insert(close({}));
  queue.push_back(close({}));
  for (size_t head = 0; head < queue.size(); ++head) {
    auto base = queue[head];
    for (int g = 0; g < G->n; ++g) {
      auto ext = base;
      ext.push_back(g);
      auto got = close(ext);
      if (found.insert(got).second) queue.push_back(got);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& el : found) out.push_back(Subgroup{G, el});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

std::vector<int> subgroup_generators(const Subgroup& H) {
  const auto& G = *H.parent;
  std::vector<int> gens;
  std::set<int> have{G.e};
  auto grow = [&](int g) {
    std::set<int> next = have;
    next.insert(g);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(next.begin(), next.end());
      for (int a : cur)
        for (int b : cur)
          if (next.insert(G.op(a, b)).second) grew = true;
    }
    have = next;
  };
  // prefer elements of largest order first so cyclic subgroups need one generator
  std::vector<int> cand;
  for (int g : H.elems)
    if (g != G.e) cand.push_back(g);
  auto order_of = [&](int g) {
    int o = 1, x = g;
    while (x != G.e) {
      x = G.op(x, g);
      ++o;
    }
    return o;
  };
  std::stable_sort(cand.begin(), cand.end(),
                   [&](int a, int b) { return order_of(a) > order_of(b); });
  for (int g : cand) {
    if (have.count(g)) continue;
    gens.push_back(g);
    grow(g);
    if (int(have.size()) == H.size()) break;
  }
  return gens;  // empty for the trivial subgroup
}

int SubgroupGroup::from_parent(int g) const {
  for (size_t i = 0; i < to_parent.size(); ++i)
    if (to_parent[i] == g) return int(i);
  return -1;
}

SubgroupGroup subgroup_as_group(const Subgroup& H) {
  const auto& G = *H.parent;
  int k = H.size();
  std::vector<std::vector<int>> cayley(k, std::vector<int>(k));
  auto pos = [&](int g) {
    return int(std::lower_bound(H.elems.begin(), H.elems.end(), g) - H.elems.begin());
  };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) cayley[a][b] = pos(G.op(H.elems[a], H.elems[b]));
  std::vector<std::string> labels;
  for (int g : H.elems) labels.push_back(G.labels[g]);
  return SubgroupGroup{make_group_from_table(cayley, labels, G.name + ":" + H.key()), H.elems};
}

bool Family::contains(const Subgroup& H) const {
  for (const auto& m : members)
    if (same_subgroup(m, H)) return true;
  return false;
}

Family family_closure(GroupPtr G, const std::vector<Subgroup>& seeds) {
  auto lattice = subgroup_lattice(G);
  std::vector<Subgroup> members;
  for (const auto& K : lattice) {
    bool in = false;
    for (const auto& H : seeds) {
      for (int g = 0; g < G->n && !in; ++g)
        if (subgroup_leq(K, conjugate_subgroup(H, g))) in = true;
      if (in) break;
    }
    if (in) members.push_back(K);
  }
  return Family{G, members};
}

Family all_family(const GroupPtr& G) { return Family{G, subgroup_lattice(G)}; }

Family trivial_family(const GroupPtr& G) { return Family{G, {trivial_subgroup(G)}}; }

GSet make_gset(GroupPtr G, std::vector<std::vector<int>> act,
               std::vector<std::string> point_labels) {
  GSet X;
  X.parent = G;
  if (int(act.size()) != G->n) throw std::invalid_argument("gset needs one permutation per element");
  X.size = act.empty() ? 0 : int(act[0].size());
  for (const auto& p : act) {
    if (int(p.size()) != X.size) throw std::invalid_argument("gset permutation sizes differ");
    std::vector<bool> seen(X.size, false);
    for (int v : p) {
      if (v < 0 || v >= X.size || seen[v]) throw std::invalid_argument("gset action not a permutation");
      seen[v] = true;
    }
  }
  X.act = std::move(act);
  for (int x = 0; x < X.size; ++x)
    if (X.act[G->e][x] != x) throw std::invalid_argument("gset identity acts nontrivially");
  for (int a = 0; a < G->n; ++a)
    for (int b = 0; b < G->n; ++b)
      for (int x = 0; x < X.size; ++x)
        if (X.act[G->op(a, b)][x] != X.act[a][X.act[b][x]])
          throw std::invalid_argument("gset action not a homomorphism");
  if (point_labels.empty())
    for (int x = 0; x < X.size; ++x) point_labels.push_back("p" + std::to_string(x));
  if (int(point_labels.size()) != X.size) throw std::invalid_argument("gset label count mismatch");
  X.point_labels = std::move(point_labels);
  return X;
}

GSet gset_disjoint_union(const GSet& A, const GSet& B) {
  if (A.parent->n != B.parent->n) throw std::invalid_argument("gset union: different groups");
  std::vector<std::vector<int>> act(A.parent->n, std::vector<int>(A.size + B.size));
  for (int g = 0; g < A.parent->n; ++g) {
    for (int x = 0; x < A.size; ++x) act[g][x] = A.act[g][x];
    for (int x = 0; x < B.size; ++x) act[g][A.size + x] = A.size + B.act[g][x];
  }
  std::vector<std::string> labels = A.point_labels;
  for (const auto& l : B.point_labels) labels.push_back(l + "'");
  return make_gset(A.parent, std::move(act), std::move(labels));
}

CosetSpace coset_space(const Subgroup& H) {
  const auto& G = *H.parent;
  CosetSpace cs;
  cs.H = H;
  cs.elem_coset.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g) {
    if (cs.elem_coset[g] >= 0) continue;
    int c = int(cs.reps.size());
    cs.reps.push_back(g);  // minimal since g ascends
    for (int h : H.elems) cs.elem_coset[G.op(g, h)] = c;
  }
  int m = int(cs.reps.size());
  std::vector<std::vector<int>> act(G.n, std::vector<int>(m));
  for (int g = 0; g < G.n; ++g)
    for (int c = 0; c < m; ++c) act[g][c] = cs.elem_coset[G.op(g, cs.reps[c])];
  std::vector<std::string> labels;
  for (int c = 0; c < m; ++c) labels.push_back(G.labels[cs.reps[c]] + "H");
  cs.gs = make_gset(H.parent, std::move(act), std::move(labels));
  cs.e_coset = cs.elem_coset[G.e];
  return cs;
}

GSet coset_gset(const Subgroup& H) { return coset_space(H).gs; }

std::vector<int> gset_fixed_points(const GSet& X, const Subgroup& H) {
  std::vector<int> out;
  for (int x = 0; x < X.size; ++x) {
    bool fixed = true;
    for (int h : H.elems)
      if (X.act[h][x] != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

std::vector<std::vector<int>> gset_orbits_under(const GSet& X, const Subgroup& H) {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(X.size, false);
  for (int x = 0; x < X.size; ++x) {
    if (seen[x]) continue;
    std::set<int> orb;
    for (int h : H.elems) orb.insert(X.act[h][x]);
    std::vector<int> o(orb.begin(), orb.end());
    for (int y : o) seen[y] = true;
    orbits.push_back(o);
  }
  return orbits;
}

std::vector<std::vector<int>> gset_orbits(const GSet& X) {
  return gset_orbits_under(X, full_subgroup(X.parent));
}

Subgroup stabilizer(const GSet& X, int x) {
  std::vector<int> elems;
  for (int g = 0; g < X.parent->n; ++g)
    if (X.act[g][x] == x) elems.push_back(g);
  return make_subgroup(X.parent, elems);
}

std::vector<std::vector<int>> equivariant_maps(const GSet& X, const GSet& Y) {
  const auto& G = *X.parent;
  if (Y.parent->n != G.n) throw std::invalid_argument("equivariant_maps: different groups");
  if (X.size == 0) return {std::vector<int>{}};
  auto orbits = gset_orbits(X);
  // Per orbit rep x, the image must be fixed by Stab(x); any such choice
  // extends uniquely and consistently to the orbit.
  std::vector<int> reps;
  std::vector<std::vector<int>> choices;
  for (const auto& orb : orbits) {
    reps.push_back(orb[0]);
    choices.push_back(gset_fixed_points(Y, stabilizer(X, orb[0])));
    if (choices.back().empty()) return {};
  }
  std::vector<std::vector<int>> out;
  std::vector<size_t> pick(reps.size(), 0);
  while (true) {
    std::vector<int> img(X.size, -1);
    for (size_t oi = 0; oi < reps.size(); ++oi) {
      int y0 = choices[oi][pick[oi]];
      for (int g = 0; g < G.n; ++g) img[X.act[g][reps[oi]]] = Y.act[g][y0];
    }
    out.push_back(img);
    size_t k = reps.size();
    while (k > 0 && ++pick[k - 1] == choices[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eqha
