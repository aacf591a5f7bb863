#pragma once

#include <string>

#include <json.hpp>

#include "eqha/chain.hpp"
#include "eqha/group.hpp"

namespace eqha {

// "q" or "fp:<prime>"
struct FieldSpec {
  bool rational = true;
  long p = 0;

  static FieldSpec parse(const std::string& s);
  std::string str() const { return rational ? "q" : "fp:" + std::to_string(p); }
};

// Reads .toml (via the toml_lite subset) or .json, by file extension.
nlohmann::json load_structured_file(const std::string& path);

// Group files carry either a cayley table (with labels) or permutation
// generators closed by the loader.
GroupPtr group_from_json(const nlohmann::json& j);

// Builtin name (c2, c3, c4, s3) or a path to a group file.
GroupPtr load_group(const std::string& name_or_path);

// j: array of element labels
Subgroup subgroup_from_json(const GroupPtr& G, const nlohmann::json& j);

// "all" | "trivial" | "file:<path>" where the file holds [[subgroup]] blocks.
Family family_from_spec(const GroupPtr& G, const std::string& spec);

// Files may pin their own coefficient field with a "field" key.
FieldSpec field_from_json(const nlohmann::json& j, FieldSpec fallback);

template <class F>
Matrix<F> matrix_from_json(F f, const nlohmann::json& rows, int nr, int nc,
                           const std::string& what) {
  Matrix<F> m(f, nr, nc);
  if (int(rows.size()) != nr) throw std::runtime_error(what + ": expected " + std::to_string(nr) + " rows");
  for (int r = 0; r < nr; ++r) {
    if (int(rows[r].size()) != nc) throw std::runtime_error(what + ": expected " + std::to_string(nc) + " columns");
    for (int c = 0; c < nc; ++c) {
      const auto& cell = rows[r][c];
      m.at(r, c) = cell.is_string() ? f.parse(cell.template get<std::string>())
                                    : f.from_int(cell.template get<long>());
    }
  }
  return m;
}

// Degreewise data: {"degrees": {"<n>": dim}, "differentials": {"<n>": [[row]...]},
// "convention": "homological" (default) | "cohomological" (degrees negated)}.
template <class F>
ChainComplex<F> complex_from_json(F f, const nlohmann::json& j) {
  bool cohom = j.value("convention", std::string("homological")) == "cohomological";
  std::map<int, int> degs;
  for (auto& [k, v] : j.at("degrees").items()) {
    int n = std::stoi(k);
    degs[cohom ? -n : n] = v.template get<int>();
  }
  if (degs.empty()) return ChainComplex<F>::zero(f);
  int lo = degs.begin()->first, hi = degs.rbegin()->first;
  ChainComplex<F> C{f, lo, hi, {}, {}};
  for (int n = lo; n <= hi; ++n) C.dims.push_back(degs.count(n) ? degs.at(n) : 0);
  for (int n = lo; n <= hi; ++n) C.dif.push_back(Matrix<F>(f, C.dim(n - 1), C.dim(n)));
  if (j.contains("differentials")) {
    for (auto& [key, rows] : j.at("differentials").items()) {
      int n = std::stoi(key);
      if (cohom) n = -n;  // cohomological d^k raises degree; same matrix at -k
      if (n < C.lo || n > C.hi)
        throw std::runtime_error("complex: differential degree " + key + " outside support");
      C.dif[n - C.lo] = matrix_from_json(f, rows, C.dim(n - 1), C.dim(n), "complex d@" + key);
    }
  }
  C.validate();
  return C;
}

}  // namespace eqha
