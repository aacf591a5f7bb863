#pragma once

#include <map>

#include "eqha/gmodule.hpp"
#include "eqha/vcat.hpp"

namespace eqha {

// Two enrichments of the orbit category of a family of subgroups. Objects are
// the orbits G/H for H in the family; in the group-ring variant hom(H,K) is
// the free module on the equivariant maps G/H -> G/K, in the fixed-point
// variant it is the fixed module (R[G/K])^H with its orbit-sum basis. Both
// are stored with degree-0 hom complexes so the presheaf machinery can
// consume them uniformly.
enum class OrbitVariant { group_ring, fixed_point };

template <class F>
struct OrbitCategory {
  OrbitVariant variant{};
  GroupPtr G;
  Family family;
  VCategory<F> cat;
  std::vector<CosetSpace> cosets;                                  // per object
  std::vector<std::vector<std::vector<std::string>>> labels;       // [i][j][basis]
  std::vector<std::vector<std::vector<std::vector<int>>>> images;  // group_ring: map images
  std::vector<std::vector<Matrix<F>>> vectors;  // fixed_point: basis columns in R[G/K_j]

  int dim(int i, int j) const { return cat.hom[i][j].dim(0); }
};

template <class F>
OrbitCategory<F> group_ring_orbit_category(F f, const Family& fam) {
  int m = int(fam.members.size());
  OrbitCategory<F> O;
  O.variant = OrbitVariant::group_ring;
  O.G = fam.parent;
  O.family = fam;
  O.cat.f = f;
  O.cat.nobj = m;
  for (const Subgroup& H : fam.members) {
    O.cat.obj_labels.push_back("G/" + H.key());
    O.cosets.push_back(coset_space(H));
  }
  O.cat.hom.assign(m, std::vector<ChainComplex<F>>(m));
  O.labels.assign(m, std::vector<std::vector<std::string>>(m));
  O.images.assign(m, std::vector<std::vector<std::vector<int>>>(m));
  std::vector<std::vector<std::map<std::vector<int>, int>>> index(
      m, std::vector<std::map<std::vector<int>, int>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      O.images[i][j] = equivariant_maps(O.cosets[i].gs, O.cosets[j].gs);
      O.cat.hom[i][j] = ChainComplex<F>::concentrated(f, 0, int(O.images[i][j].size()));
      for (int b = 0; b < int(O.images[i][j].size()); ++b) {
        index[i][j][O.images[i][j][b]] = b;
        O.labels[i][j].push_back(
            O.cosets[j].gs.point_labels[O.images[i][j][b][O.cosets[i].e_coset]]);
      }
    }
  O.cat.comp.assign(m, std::vector<std::vector<ChainMap<F>>>(m, std::vector<ChainMap<F>>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        int d2 = O.dim(j, k), d1 = O.dim(i, j);
        Matrix<F> M(f, O.dim(i, k), d2 * d1);
        for (int b2 = 0; b2 < d2; ++b2)
          for (int b1 = 0; b1 < d1; ++b1) {
            std::vector<int> cmps(O.cosets[i].gs.size);
            for (int x = 0; x < int(cmps.size()); ++x)
              cmps[x] = O.images[j][k][b2][O.images[i][j][b1][x]];
            M.at(index[i][k].at(cmps), b2 * d1 + b1) = f.one();
          }
        ChainMap<F> cm{tensor_complex(O.cat.hom[j][k], O.cat.hom[i][j]), O.cat.hom[i][k], {}};
        if (M.nr > 0 && M.nc > 0) cm.set(0, std::move(M));
        O.cat.comp[i][j][k] = std::move(cm);
      }
  for (int i = 0; i < m; ++i) {
    std::vector<int> idimg(O.cosets[i].gs.size);
    for (int x = 0; x < int(idimg.size()); ++x) idimg[x] = x;
    O.cat.iden.push_back(basis_column(f, O.dim(i, i), index[i][i].at(idimg)));
  }
  return O;
}

template <class F>
OrbitCategory<F> fixed_orbit_category(F f, const Family& fam) {
  int m = int(fam.members.size());
  OrbitCategory<F> O;
  O.variant = OrbitVariant::fixed_point;
  O.G = fam.parent;
  O.family = fam;
  O.cat.f = f;
  O.cat.nobj = m;
  std::vector<GModule<F>> perm;
  for (const Subgroup& H : fam.members) {
    O.cat.obj_labels.push_back("G/" + H.key());
    O.cosets.push_back(coset_space(H));
    perm.push_back(perm_module(f, O.cosets.back().gs));
  }
  O.cat.hom.assign(m, std::vector<ChainComplex<F>>(m));
  O.labels.assign(m, std::vector<std::vector<std::string>>(m));
  O.vectors.assign(m, std::vector<Matrix<F>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Matrix<F> B = fixed_points(perm[j], fam.members[i]).incl.at(0);
      auto orbits = gset_orbits_under(O.cosets[j].gs, fam.members[i]);
      if (B.nc != int(orbits.size()))
        throw std::logic_error("fixed orbit category: basis is not the orbit-sum basis");
      for (int b = 0; b < B.nc; ++b) {
        std::vector<int> supp;
        for (int r = 0; r < B.nr; ++r)
          if (!f.is_zero(B.at(r, b))) {
            if (!f.is_one(B.at(r, b)))
              throw std::logic_error("fixed orbit category: basis vector not an orbit indicator");
            supp.push_back(r);
          }
        bool matched = false;
        for (auto orb : orbits) {
          std::sort(orb.begin(), orb.end());
          if (orb == supp) matched = true;
        }
        if (!matched)
          throw std::logic_error("fixed orbit category: basis vector not an orbit indicator");
        std::string lab;
        for (size_t s = 0; s < supp.size(); ++s)
          lab += (s ? "+" : "") + O.cosets[j].gs.point_labels[supp[s]];
        O.labels[i][j].push_back(std::move(lab));
      }
      O.cat.hom[i][j] = ChainComplex<F>::concentrated(f, 0, B.nc);
      O.vectors[i][j] = std::move(B);
    }
  O.cat.comp.assign(m, std::vector<std::vector<ChainMap<F>>>(m, std::vector<ChainMap<F>>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        int d2 = O.dim(j, k), d1 = O.dim(i, j);
        Matrix<F> M(f, O.dim(i, k), d2 * d1);
        for (int b2 = 0; b2 < d2; ++b2)
          for (int b1 = 0; b1 < d1; ++b1) {
            // w2∘w1 = Σ_c (w1)_c g_c·w2, the composite of the module maps
            // the two fixed vectors classify
            Matrix<F> res(f, O.cosets[k].gs.size, 1);
            for (int c = 0; c < O.cosets[j].gs.size; ++c) {
              if (f.is_zero(O.vectors[i][j].at(c, b1))) continue;
              Matrix<F> g = perm[k].action(O.cosets[j].reps[c], 0);
              for (int r = 0; r < res.nr; ++r)
                res.at(r, 0) = f.add(res.at(r, 0),
                                     f.mul(O.vectors[i][j].at(c, b1),
                                           mul(g, O.vectors[j][k]).at(r, b2)));
            }
            auto X = solve(O.vectors[i][k], res);
            if (!X) throw std::logic_error("fixed orbit category: composite not fixed");
            for (int r = 0; r < X->nr; ++r) M.at(r, b2 * d1 + b1) = X->at(r, 0);
          }
        ChainMap<F> cm{tensor_complex(O.cat.hom[j][k], O.cat.hom[i][j]), O.cat.hom[i][k], {}};
        if (M.nr > 0 && M.nc > 0) cm.set(0, std::move(M));
        O.cat.comp[i][j][k] = std::move(cm);
      }
  for (int i = 0; i < m; ++i) {
    Matrix<F> ind(f, O.cosets[i].gs.size, 1);
    ind.at(O.cosets[i].e_coset, 0) = f.one();
    auto X = solve(O.vectors[i][i], ind);
    if (!X) throw std::logic_error("fixed orbit category: identity coset not fixed");
    O.cat.iden.push_back(*X);
  }
  return O;
}

// The comparison functor: identity on objects; the map G/H -> G/K sending eH
// to gK goes to the fixed vector gK in (R[G/K])^H.
template <class F>
EnrichedFunctor<F> delta_functor(const OrbitCategory<F>& A, const OrbitCategory<F>& B) {
  if (A.variant != OrbitVariant::group_ring || B.variant != OrbitVariant::fixed_point)
    throw std::invalid_argument("delta_functor: expects (group-ring, fixed-point) variants");
  if (A.G != B.G || A.cat.nobj != B.cat.nobj)
    throw std::invalid_argument("delta_functor: categories over different data");
  const F& f = A.cat.f;
  int m = A.cat.nobj;
  EnrichedFunctor<F> D;
  for (int i = 0; i < m; ++i) D.obj.push_back(i);
  D.map.assign(m, std::vector<ChainMap<F>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Matrix<F> M(f, B.dim(i, j), A.dim(i, j));
      for (int b = 0; b < A.dim(i, j); ++b) {
        Matrix<F> ind(f, A.cosets[j].gs.size, 1);
        ind.at(A.images[i][j][b][A.cosets[i].e_coset], 0) = f.one();
        auto X = solve(B.vectors[i][j], ind);
        if (!X) throw std::logic_error("delta_functor: image vector not fixed");
        for (int r = 0; r < X->nr; ++r) M.at(r, b) = X->at(r, 0);
      }
      ChainMap<F> cm{A.cat.hom[i][j], B.cat.hom[i][j], {}};
      if (M.nr > 0 && M.nc > 0) cm.set(0, std::move(M));
      D.map[i][j] = std::move(cm);
    }
  return D;
}

template <class F>
struct OrbitCategoryPair {
  OrbitCategory<F> by_maps;
  OrbitCategory<F> by_fixed;
  EnrichedFunctor<F> delta;
};

template <class F>
OrbitCategoryPair<F> build_orbit_pair(F f, const Family& fam) {
  OrbitCategoryPair<F> P{group_ring_orbit_category(f, fam), fixed_orbit_category(f, fam), {}};
  P.delta = delta_functor(P.by_maps, P.by_fixed);
  return P;
}

}  // namespace eqha
