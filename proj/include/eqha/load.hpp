#pragma once

#include <string>
#include <vector>

#include "eqha/cells.hpp"
#include "eqha/dga.hpp"
#include "eqha/io.hpp"

namespace eqha {

// GModule files: a complex block plus per-degree action matrices for a
// generating set, keyed by element label.  Unlisted degrees act as the
// identity; unlisted elements are completed by multiplying out the listed
// ones, and the load fails if they do not generate the group.
template <class F>
GModule<F> gmodule_from_json(F f, GroupPtr G, const nlohmann::json& j) {
  ChainComplex<F> cx = complex_from_json(f, j.at("complex"));
  std::vector<std::vector<Matrix<F>>> act(size_t(G->n));
  std::vector<bool> known(size_t(G->n), false);
  auto ident = [&] {
    std::vector<Matrix<F>> v;
    for (int n = cx.lo; n <= cx.hi; ++n) v.push_back(Matrix<F>::identity(f, cx.dim(n)));
    return v;
  };
  act[size_t(G->e)] = ident();
  known[size_t(G->e)] = true;
  if (j.contains("action"))
    for (auto& [lab, degs] : j.at("action").items()) {
      int g = G->label_index(lab);
      if (g < 0) throw std::runtime_error("module action: unknown element '" + lab + "'");
      auto v = ident();
      for (auto& [dk, rows] : degs.items()) {
        int n = std::stoi(dk);
        if (n < cx.lo || n > cx.hi)
          throw std::runtime_error("module action: degree " + dk + " outside support");
        v[size_t(n - cx.lo)] =
            matrix_from_json(f, rows, cx.dim(n), cx.dim(n), "action " + lab + "@" + dk);
      }
      act[size_t(g)] = std::move(v);
      known[size_t(g)] = true;
    }
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < G->n; ++a) {
      if (!known[size_t(a)]) continue;
      for (int b = 0; b < G->n; ++b) {
        if (!known[size_t(b)] || known[size_t(G->op(a, b))]) continue;
        std::vector<Matrix<F>> v;
        for (int n = cx.lo; n <= cx.hi; ++n)
          v.push_back(mul(act[size_t(a)][size_t(n - cx.lo)], act[size_t(b)][size_t(n - cx.lo)]));
        act[size_t(G->op(a, b))] = std::move(v);
        known[size_t(G->op(a, b))] = true;
        grew = true;
      }
    }
  }
  for (int g = 0; g < G->n; ++g)
    if (!known[size_t(g)])
      throw std::runtime_error("module action: listed elements do not generate '" +
                               G->labels[size_t(g)] + "'");
  return make_gmodule(G, cx, [&](int g, int n) { return act[size_t(g)][size_t(n - cx.lo)]; });
}

// DGA files: graded basis labels, an optional differential per degree, and
// structure-constant blocks left*right = sum of (coeff, label) pairs.  Unit
// products are implied; unlisted products are zero.
template <class F>
DGAlgebra<F> dga_from_json(F f, const nlohmann::json& j) {
  if (!j.contains("basis")) throw std::runtime_error("algebra file needs a basis block");
  std::map<int, std::vector<std::string>> basis;
  for (auto& [dk, labs] : j.at("basis").items())
    basis[std::stoi(dk)] = labs.template get<std::vector<std::string>>();
  if (basis.empty()) throw std::runtime_error("algebra basis is empty");
  int lo = basis.begin()->first, hi = basis.rbegin()->first;
  std::map<std::string, std::pair<int, int>> where;  // label -> (degree, index)
  std::vector<int> dims;
  for (int n = lo; n <= hi; ++n) {
    auto it = basis.find(n);
    int d = it == basis.end() ? 0 : int(it->second.size());
    dims.push_back(d);
    if (it != basis.end())
      for (int i = 0; i < d; ++i) {
        if (where.count(it->second[size_t(i)]))
          throw std::runtime_error("algebra basis label repeated: " + it->second[size_t(i)]);
        where[it->second[size_t(i)]] = {n, i};
      }
  }
  ChainComplex<F> cx{f, lo, hi, dims, {}};
  for (int n = lo; n <= hi; ++n) cx.dif.push_back(Matrix<F>(f, cx.dim(n - 1), cx.dim(n)));
  if (j.contains("differential"))
    for (auto& [dk, rows] : j.at("differential").items()) {
      int n = std::stoi(dk);
      if (n < lo || n > hi) throw std::runtime_error("algebra differential outside support");
      cx.dif[size_t(n - lo)] = matrix_from_json(f, rows, cx.dim(n - 1), cx.dim(n), "algebra d@" + dk);
    }
  cx.validate();
  std::string unit_label = j.value("unit", std::string());
  if (!where.count(unit_label) || where.at(unit_label).first != 0)
    throw std::runtime_error("algebra needs a degree-0 'unit' label");
  auto at = [&](const std::string& lab) {
    auto it = where.find(lab);
    if (it == where.end()) throw std::runtime_error("algebra: unknown basis label " + lab);
    return it->second;
  };
  // product columns, keyed by (left, right) basis labels
  std::map<std::pair<std::string, std::string>, Matrix<F>> prod;
  if (j.contains("product"))
    for (auto& block : j.at("product")) {
      std::string a = block.at("left").template get<std::string>();
      std::string b = block.at("right").template get<std::string>();
      int da = at(a).first, db = at(b).first;
      Matrix<F> col(f, cx.dim(da + db), 1);
      for (auto& term : block.at("out")) {
        const auto& cell = term.at(0);
        typename F::Elem c = cell.is_string() ? f.parse(cell.template get<std::string>())
                                              : f.from_int(cell.template get<long>());
        auto [dc, ic] = at(term.at(1).template get<std::string>());
        if (dc != da + db)
          throw std::runtime_error("algebra: product " + a + "*" + b + " lands in degree " +
                                   std::to_string(dc) + ", expected " + std::to_string(da + db));
        col.at(ic, 0) = c;
      }
      prod[{a, b}] = std::move(col);
    }
  ChainComplex<F> TT = tensor_complex(cx, cx);
  ChainMap<F> mult{TT, cx, {}};
  for (int m = TT.lo; m <= TT.hi; ++m) {
    if (TT.dim(m) == 0) continue;
    Matrix<F> M(f, cx.dim(m), TT.dim(m));
    for (auto& ti : tensor_basis(cx, cx, m)) {
      int col = tensor_pos(cx, cx, m, ti.deg_a, ti.a, ti.b);
      const std::string& la = basis.at(ti.deg_a)[size_t(ti.a)];
      const std::string& lb = basis.at(m - ti.deg_a)[size_t(ti.b)];
      if (auto it = prod.find({la, lb}); it != prod.end()) {
        for (int r = 0; r < it->second.nr; ++r) M.at(r, col) = it->second.at(r, 0);
      } else if (la == unit_label) {
        M.at(ti.b, col) = f.one();
      } else if (lb == unit_label) {
        M.at(ti.a, col) = f.one();
      }
    }
    mult.set(m, std::move(M));
  }
  Matrix<F> unit(f, cx.dim(0), 1);
  unit.at(at(unit_label).second, 0) = f.one();
  return make_dga(cx, mult, unit);  // validates all the algebra axioms
}

// Builtin names or a file with an [algebra] block.
template <class F>
DGAlgebra<F> load_algebra(F f, const std::string& name_or_path) {
  if (name_or_path == "ground") return ground_dga(f);
  if (name_or_path == "exterior") return exterior_dga(f);
  auto j = load_structured_file(name_or_path);
  return dga_from_json(f, j.contains("algebra") ? j.at("algebra") : j);
}

// Cell build scripts: an optional [base] module block followed by ordered
// [[attach]] blocks with a subgroup (element labels), a disk degree, and for
// glued cells the attaching matrix into degree n-1 of the current stage.
template <class F>
CellComplex<F> cells_from_json(F f, GroupPtr G, const nlohmann::json& j) {
  GModule<F> base = j.contains("base") && j.at("base").contains("complex")
                        ? gmodule_from_json(f, G, j.at("base"))
                        : trivial_gmodule(G, ChainComplex<F>::zero(f));
  CellComplex<F> X = cell_complex(base);
  if (j.contains("attach"))
    for (auto& block : j.at("attach")) {
      Subgroup H = block.contains("subgroup")
                       ? subgroup_from_json(G, block.at("subgroup"))
                       : full_subgroup(G);
      int n = block.at("degree").template get<int>();
      std::string kind = block.value("kind", std::string("free"));
      if (kind == "free") {
        attach_free(X, H, n);
      } else if (kind == "glued") {
        GModule<F> P = perm_module(f, coset_gset(H));
        ChainComplex<F> src = tensor_complex(P.cx, sphere(f, n - 1));
        ChainMap<F> phi{src, X.total.cx, {}};
        phi.set(n - 1, matrix_from_json(f, block.at("matrix"), X.total.cx.dim(n - 1),
                                        src.dim(n - 1), "attach matrix"));
        attach(X, H, n, phi);
      } else {
        throw std::runtime_error("attach kind must be 'free' or 'glued', got '" + kind + "'");
      }
    }
  return X;
}

// Presheaf files over a fixed-point orbit category: one complex per orbit
// object plus [[structure]] blocks giving, for a hom-basis element, the
// degreewise matrices of the induced map val[from] -> val[to].  Missing
// blocks default to zero except the identity components, which default to the
// identity.
template <class F>
Presheaf<F> presheaf_from_json(const OrbitCategory<F>& O, const nlohmann::json& j) {
  const F& f = O.cat.f;
  int m = O.cat.nobj;
  auto obj_index = [&](const std::string& lab) {
    for (int i = 0; i < m; ++i)
      if (O.cat.obj_labels[size_t(i)] == lab) return i;
    throw std::runtime_error("presheaf: unknown orbit object '" + lab + "'");
  };
  Presheaf<F> X{share(O.cat), {}, {}};
  X.val.assign(size_t(m), ChainComplex<F>::zero(f));
  if (j.contains("values"))
    for (auto& [lab, cxj] : j.at("values").items())
      X.val[size_t(obj_index(lab))] = complex_from_json(f, cxj);
  // per (to, from, basis label): degreewise matrices
  std::map<std::tuple<int, int, int>, std::map<int, Matrix<F>>> given;
  if (j.contains("structure"))
    for (auto& block : j.at("structure")) {
      int i = obj_index(block.at("to").template get<std::string>());
      int jj = obj_index(block.at("from").template get<std::string>());
      std::string wl = block.at("basis").template get<std::string>();
      int w = -1;
      for (size_t b = 0; b < O.labels[size_t(i)][size_t(jj)].size(); ++b)
        if (O.labels[size_t(i)][size_t(jj)][b] == wl) w = int(b);
      if (w < 0)
        throw std::runtime_error("presheaf structure: no hom basis element '" + wl + "' from " +
                                 block.at("from").template get<std::string>() + " to " +
                                 block.at("to").template get<std::string>());
      auto& degs = given[{i, jj, w}];
      for (auto& [dk, rows] : block.at("map").items()) {
        int n = std::stoi(dk);
        degs[n] = matrix_from_json(f, rows, X.val[size_t(i)].dim(n), X.val[size_t(jj)].dim(n),
                                   "structure " + wl + "@" + dk);
      }
    }
  X.act.assign(size_t(m), std::vector<ChainMap<F>>(size_t(m)));
  for (int i = 0; i < m; ++i)
    for (int jj = 0; jj < m; ++jj) {
      ChainComplex<F> src = tensor_complex(O.cat.hom[size_t(i)][size_t(jj)], X.val[size_t(jj)]);
      ChainMap<F> cm{src, X.val[size_t(i)], {}};
      for (int n = src.lo; n <= src.hi; ++n) {
        if (src.dim(n) == 0 || X.val[size_t(i)].dim(n) == 0) continue;
        Matrix<F> M(f, X.val[size_t(i)].dim(n), src.dim(n));
        for (int w = 0; w < O.dim(i, jj); ++w) {
          const Matrix<F>* comp = nullptr;
          Matrix<F> ident;
          if (auto it = given.find({i, jj, w}); it != given.end()) {
            if (auto dit = it->second.find(n); dit != it->second.end()) comp = &dit->second;
          } else if (i == jj && !f.is_zero(O.cat.iden[size_t(i)].at(w, 0))) {
            ident = scale(O.cat.iden[size_t(i)].at(w, 0),
                          Matrix<F>::identity(f, X.val[size_t(i)].dim(n)));
            comp = &ident;
          }
          if (!comp) continue;
          for (int c = 0; c < X.val[size_t(jj)].dim(n); ++c) {
            int col = tensor_pos(O.cat.hom[size_t(i)][size_t(jj)], X.val[size_t(jj)], n, 0, w, c);
            for (int r = 0; r < comp->nr; ++r) M.at(r, col) = comp->at(r, c);
          }
        }
        cm.set(n, std::move(M));
      }
      X.act[size_t(i)][size_t(jj)] = std::move(cm);
    }
  if (!presheaf_laws(X)) throw std::runtime_error("presheaf file violates the functor laws");
  return X;
}

}  // namespace eqha
