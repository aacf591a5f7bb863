#pragma once

#include "eqha/gmodule.hpp"
#include "eqha/rng.hpp"

namespace eqha {

template <class F>
typename F::Elem random_small_elem(F f, Rng& rng) {
  return f.from_int(rng.uniform(-2, 2));
}

template <class F>
typename F::Elem random_small_nonzero(F f, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    auto v = f.from_int(rng.uniform(-2, 2));
    if (!f.is_zero(v)) return v;
  }
  return f.one();
}

template <class F>
Matrix<F> random_matrix(F f, Rng& rng, int nr, int nc, int nonzeros) {
  Matrix<F> m(f, nr, nc);
  if (nr == 0 || nc == 0) return m;
  for (int k = 0; k < nonzeros; ++k)
    m.at(int(rng.uniform(0, nr - 1)), int(rng.uniform(0, nc - 1))) = random_small_nonzero(f, rng);
  return m;
}

// d_{n+1} is drawn inside ker(d_n), so d^2 = 0 by construction.
template <class F>
ChainComplex<F> random_complex(F f, Rng& rng, int lo, int hi, int maxdim) {
  ChainComplex<F> C{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) C.dims.push_back(int(rng.uniform(0, maxdim)));
  for (int n = lo; n <= hi; ++n) {
    if (n == lo) {
      C.dif.push_back(Matrix<F>(f, 0, C.dim(lo)));
      continue;
    }
    Matrix<F> K = nullspace(C.dif[n - 1 - lo]);  // inside C_{n-1}
    Matrix<F> R = random_matrix(f, rng, K.nc, C.dim(n), std::max(1, K.nc * C.dim(n) / 3));
    C.dif.push_back(mul(K, R));
  }
  return C;
}

// Direct sum of k disks at random degrees: acyclic by construction.
template <class F>
ChainComplex<F> random_acyclic(F f, Rng& rng, int lo, int hi, int k) {
  ChainComplex<F> A = ChainComplex<F>::zero(f);
  for (int i = 0; i < k; ++i) {
    int n = int(rng.uniform(lo + 1, hi));
    A = direct_sum(A, disk(f, n)).total;
  }
  return A;
}

// Basis of the space of chain maps C -> D: degree-0 cycles of hom(C,D).
template <class F>
std::vector<ChainMap<F>> chain_maps_basis(const ChainComplex<F>& C, const ChainComplex<F>& D) {
  ChainComplex<F> H = hom_complex(C, D);
  Matrix<F> Z = nullspace(H.d(0));
  std::vector<ChainMap<F>> out;
  for (int c = 0; c < Z.nc; ++c) {
    GradedMap<F> g = hom_unvector(C, D, 0, Z, c);
    ChainMap<F> fm{C, D, {}};
    for (auto& [n, m] : g.comp) fm.set(n, m);
    out.push_back(std::move(fm));
  }
  return out;
}

template <class F>
ChainMap<F> random_chain_map(Rng& rng, const ChainComplex<F>& C, const ChainComplex<F>& D) {
  auto basis = chain_maps_basis(C, D);
  ChainMap<F> fm = zero_map(C, D);
  for (auto& b : basis)
    if (rng.chance(1, 2)) fm = add_maps(fm, scale_map(random_small_elem(C.f, rng), b));
  return fm;
}

// Quasi-isomorphisms by construction: inclusion into / projection off a
// direct sum with an acyclic complex.
template <class F>
ChainMap<F> random_quasi_iso_from(Rng& rng, const ChainComplex<F>& C) {
  ChainComplex<F> A = random_acyclic(C.f, rng, C.lo, C.hi + 1, int(rng.uniform(1, 2)));
  return direct_sum(C, A).incl_a;
}

template <class F>
ChainMap<F> random_quasi_iso_to(Rng& rng, const ChainComplex<F>& C) {
  ChainComplex<F> A = random_acyclic(C.f, rng, C.lo, C.hi + 1, int(rng.uniform(1, 2)));
  return direct_sum(C, A).proj_a;
}

// --- random G-modules ---------------------------------------------------------
//
// A block is one representation of G in a single degree: |G| matrices. Random
// modules are block sums per degree, optionally conjugated by unipotent
// matrices, with an equivariant differential solved for afterwards.

template <class F>
using ActionBlock = std::vector<Matrix<F>>;

template <class F>
ActionBlock<F> perm_block(F f, const GSet& S) {
  ActionBlock<F> B;
  for (int g = 0; g < S.parent->n; ++g) {
    Matrix<F> m(f, S.size, S.size);
    for (int x = 0; x < S.size; ++x) m.at(S.act[g][x], x) = f.one();
    B.push_back(std::move(m));
  }
  return B;
}

// Augmentation kernel {Σx_i = 0} of a permutation block, in the basis e_i - e_0.
template <class F>
ActionBlock<F> augmentation_kernel_block(F f, const GSet& S) {
  ActionBlock<F> B;
  int n = S.size;
  for (int g = 0; g < S.parent->n; ++g) {
    Matrix<F> m(f, n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int gi = S.act[g][i], g0 = S.act[g][0];
      if (gi != 0) m.at(gi - 1, i - 1) = f.add(m.at(gi - 1, i - 1), f.one());
      if (g0 != 0) m.at(g0 - 1, i - 1) = f.sub(m.at(g0 - 1, i - 1), f.one());
    }
    B.push_back(std::move(m));
  }
  return B;
}

inline std::vector<long> unit_candidates(const FieldQ&) { return {1, -1}; }
inline std::vector<long> unit_candidates(const FieldFp& f) {
  std::vector<long> out;
  if (f.p <= 64)
    for (long v = 1; v < f.p; ++v) out.push_back(v);
  else
    out = {1, f.p - 1};
  return out;
}

// All 1-dimensional representations whose values lie in the candidate set
// (±1 always; every residue for small prime fields), found by assigning
// candidate roots of unity to generators and completing multiplicatively.
template <class F>
std::vector<ActionBlock<F>> character_blocks(F f, const GroupPtr& G) {
  using E = typename F::Elem;
  std::vector<int> gens = subgroup_generators(full_subgroup(G));
  auto elem_order = [&](int g) {
    int m = 1;
    for (int x = g; x != G->e; x = G->op(x, g)) ++m;
    return m;
  };
  std::vector<std::vector<E>> cand;
  for (int g : gens) {
    int m = elem_order(g);
    std::vector<E> c;
    for (long v : unit_candidates(f)) {
      E x = f.from_int(v);
      if (f.is_zero(x)) continue;
      E pw = f.one();
      for (int i = 0; i < m; ++i) pw = f.mul(pw, x);
      if (!f.is_one(pw)) continue;
      bool dup = false;
      for (auto& y : c) dup = dup || y == x;
      if (!dup) c.push_back(x);
    }
    cand.push_back(std::move(c));
  }
  std::vector<ActionBlock<F>> out;
  std::vector<std::vector<E>> seen;
  std::vector<size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<std::optional<E>> chi(G->n);
    chi[G->e] = f.one();
    for (size_t i = 0; i < gens.size(); ++i) chi[gens[i]] = cand[i][pick[i]];
    bool ok = true, changed = true;
    while (changed && ok) {
      changed = false;
      for (int a = 0; a < G->n && ok; ++a)
        for (int b = 0; b < G->n && ok; ++b) {
          if (!chi[a] || !chi[b]) continue;
          int c = G->op(a, b);
          E v = f.mul(*chi[a], *chi[b]);
          if (!chi[c])
            chi[c] = v, changed = true;
          else if (!(*chi[c] == v))
            ok = false;
        }
    }
    for (auto& x : chi) ok = ok && x.has_value();
    if (ok) {
      std::vector<E> vec;
      for (auto& x : chi) vec.push_back(*x);
      bool dup = false;
      for (auto& s : seen) dup = dup || s == vec;
      if (!dup) {
        seen.push_back(vec);
        ActionBlock<F> B;
        for (int g = 0; g < G->n; ++g) {
          Matrix<F> m(f, 1, 1);
          m.at(0, 0) = vec[g];
          B.push_back(std::move(m));
        }
        out.push_back(std::move(B));
      }
    }
    size_t i = 0;
    while (i < gens.size() && ++pick[i] == cand[i].size()) pick[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

// Coset permutation blocks, their augmentation kernels, and all characters.
template <class F>
std::vector<ActionBlock<F>> gmodule_block_library(F f, const GroupPtr& G, int max_block_dim = 4) {
  std::vector<ActionBlock<F>> lib;
  for (const Subgroup& K : subgroup_lattice(G)) {
    int idx = G->n / K.size();
    if (idx > max_block_dim + 1) continue;
    GSet S = coset_gset(K);
    if (idx <= max_block_dim) lib.push_back(perm_block(f, S));
    if (idx >= 2 && idx - 1 <= max_block_dim) lib.push_back(augmentation_kernel_block(f, S));
  }
  for (auto& B : character_blocks(f, G)) lib.push_back(std::move(B));
  return lib;
}

// Random X with act_dst(g)·X = X·act_src(g) for the given generators and
// dprev·X = 0: a random element of the solved subspace.
template <class F>
Matrix<F> random_equivariant_kernel_map(F f, Rng& rng, const std::vector<Matrix<F>>& src_gens,
                                        const std::vector<Matrix<F>>& dst_gens,
                                        const Matrix<F>& dprev, int nrows, int ncols) {
  using E = typename F::Elem;
  int nv = nrows * ncols;
  Matrix<F> X(f, nrows, ncols);
  if (nv == 0) return X;
  auto var = [&](int r, int c) { return r * ncols + c; };
  std::vector<std::vector<E>> rows;
  auto add_row = [&]() -> std::vector<E>& {
    rows.emplace_back(nv, f.zero());
    return rows.back();
  };
  for (size_t t = 0; t < src_gens.size(); ++t) {
    const Matrix<F>& As = src_gens[t];
    const Matrix<F>& Ad = dst_gens[t];
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) {
        auto& row = add_row();
        for (int r = 0; r < nrows; ++r) row[var(r, j)] = f.add(row[var(r, j)], Ad.at(i, r));
        for (int c = 0; c < ncols; ++c) row[var(i, c)] = f.sub(row[var(i, c)], As.at(c, j));
      }
  }
  for (int i = 0; i < dprev.nr; ++i)
    for (int j = 0; j < ncols; ++j) {
      auto& row = add_row();
      for (int r = 0; r < nrows; ++r) row[var(r, j)] = dprev.at(i, r);
    }
  Matrix<F> A(f, int(rows.size()), nv);
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < nv; ++j) A.at(i, j) = rows[i][j];
  Matrix<F> K = nullspace(A);
  for (int b = 0; b < K.nc; ++b) {
    if (!rng.chance(2, 3)) continue;
    E cf = random_small_elem(f, rng);
    if (f.is_zero(cf)) continue;
    for (int r = 0; r < nrows; ++r)
      for (int c = 0; c < ncols; ++c) X.at(r, c) = f.add(X.at(r, c), f.mul(cf, K.at(var(r, c), b)));
  }
  return X;
}

// Random DG module over R[G]: block-diagonal representations per degree,
// a unipotent change of basis, and a random equivariant differential with
// d² = 0 by construction.
template <class F>
GModule<F> random_gmodule(F f, Rng& rng, const GroupPtr& G, int lo, int hi, int maxdim,
                          const std::vector<ActionBlock<F>>* library = nullptr) {
  std::vector<ActionBlock<F>> own;
  if (!library) {
    own = gmodule_block_library(f, G);
    library = &own;
  }
  std::vector<int> gens = subgroup_generators(full_subgroup(G));
  int span = hi - lo + 1;
  std::vector<int> dims(span, 0);
  std::vector<std::vector<Matrix<F>>> deg_act(span);  // deg_act[n-lo][g]
  for (int n = lo; n <= hi; ++n) {
    int budget = int(rng.uniform(0, maxdim));
    std::vector<int> blocks;
    for (int tries = 0; tries < 8 && budget > 0; ++tries) {
      int b = int(rng.uniform(0, int(library->size()) - 1));
      int d = (*library)[b][0].nr;
      if (d <= budget) {
        blocks.push_back(b);
        budget -= d;
      }
    }
    int dn = 0;
    for (int b : blocks) dn += (*library)[b][0].nr;
    dims[n - lo] = dn;
    for (int g = 0; g < G->n; ++g) {
      Matrix<F> m(f, dn, dn);
      int off = 0;
      for (int b : blocks) {
        const Matrix<F>& bm = (*library)[b][g];
        for (int r = 0; r < bm.nr; ++r)
          for (int c = 0; c < bm.nc; ++c) m.at(off + r, off + c) = bm.at(r, c);
        off += bm.nr;
      }
      deg_act[n - lo].push_back(std::move(m));
    }
    // unipotent change of basis: conjugate the whole degree by I + c·E_{ij}
    if (dn >= 2 && rng.chance(1, 2)) {
      int i = int(rng.uniform(0, dn - 1)), j = int(rng.uniform(0, dn - 1));
      if (i != j) {
        auto c = random_small_nonzero(f, rng);
        Matrix<F> S = Matrix<F>::identity(f, dn), Si = Matrix<F>::identity(f, dn);
        S.at(i, j) = c;
        Si.at(i, j) = f.neg(c);
        for (int g = 0; g < G->n; ++g) deg_act[n - lo][g] = mul(S, mul(deg_act[n - lo][g], Si));
      }
    }
  }
  ChainComplex<F> cx{f, lo, hi, dims, {}};
  std::vector<Matrix<F>> dif;
  for (int n = lo; n <= hi; ++n) {
    if (n == lo) {
      dif.push_back(Matrix<F>(f, 0, dims[0]));
      continue;
    }
    std::vector<Matrix<F>> src_gens, dst_gens;
    for (size_t t = 0; t < gens.size(); ++t) {
      src_gens.push_back(deg_act[n - lo][gens[t]]);
      dst_gens.push_back(deg_act[n - 1 - lo][gens[t]]);
    }
    dif.push_back(random_equivariant_kernel_map(f, rng, src_gens, dst_gens, dif[n - 1 - lo],
                                                dims[n - 1 - lo], dims[n - lo]));
  }
  cx.dif = std::move(dif);
  GModule<F> M{G, cx, {}};
  M.act.resize(G->n);
  for (int g = 0; g < G->n; ++g)
    for (int n = lo; n <= hi; ++n) M.act[g].push_back(deg_act[n - lo][g]);
  M.validate();
  return M;
}

template <class F>
ChainMap<F> random_equivariant_map(Rng& rng, const GModule<F>& A, const GModule<F>& B) {
  auto basis = equivariant_chain_maps_basis(A, B, full_subgroup(A.G));
  ChainMap<F> fm = zero_map(A.cx, B.cx);
  for (auto& b : basis)
    if (rng.chance(1, 2)) fm = add_maps(fm, scale_map(random_small_elem(A.cx.f, rng), b));
  return fm;
}

}  // namespace eqha
