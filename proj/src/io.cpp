#include "eqha/io.hpp"

#include <fstream>
#include <sstream>

#include "eqha/toml_lite.hpp"

namespace eqha {

FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "q") return FieldSpec{true, 0};
  if (s.rfind("fp:", 0) == 0) {
    FieldSpec fs{false, std::stol(s.substr(3))};
    FieldFp check(fs.p);  // validates primality
    return fs;
  }
  throw std::runtime_error("bad field spec '" + s + "' (want q or fp:<prime>)");
}

nlohmann::json load_structured_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return nlohmann::json::parse(ss.str());
  return toml_lite::parse(ss.str());
}

GroupPtr group_from_json(const nlohmann::json& j) {
  std::string name = j.value("name", "group");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("cayley")) {
    auto cayley = j.at("cayley").get<std::vector<std::vector<int>>>();
    return make_group_from_table(cayley, labels, name);
  }
  const char* genkey = j.contains("permutation_generators") ? "permutation_generators"
                       : j.contains("perm_generators")      ? "perm_generators"
                                                            : nullptr;
  if (genkey) {
    auto gens = j.at(genkey).get<std::vector<std::vector<int>>>();
    std::vector<std::string> gen_names;
    if (j.contains("generator_names"))
      gen_names = j.at("generator_names").get<std::vector<std::string>>();
    return make_group_from_perms(gens, gen_names, name);
  }
  throw std::runtime_error("group file needs 'cayley' or 'permutation_generators'");
}

GroupPtr load_group(const std::string& name_or_path) {
  if (name_or_path == "c2" || name_or_path == "c3" || name_or_path == "c4" ||
      name_or_path == "s3")
    return group_by_name(name_or_path);
  auto j = load_structured_file(name_or_path);
  if (j.contains("group")) return group_from_json(j.at("group"));
  return group_from_json(j);
}

Subgroup subgroup_from_json(const GroupPtr& G, const nlohmann::json& j) {
  std::vector<int> elems;
  for (const auto& item : j) {
    int idx = -1;
    if (item.is_string()) {
      idx = G->label_index(item.get<std::string>());
      if (idx < 0) throw std::runtime_error("unknown element label '" + item.get<std::string>() + "'");
    } else {
      idx = item.get<int>();
    }
    elems.push_back(idx);
  }
  return make_subgroup(G, elems);
}

FieldSpec field_from_json(const nlohmann::json& j, FieldSpec fallback) {
  if (j.is_object() && j.contains("field") && j.at("field").is_string())
    return FieldSpec::parse(j.at("field").get<std::string>());
  return fallback;
}

Family family_from_spec(const GroupPtr& G, const std::string& spec) {
  if (spec == "all") return all_family(G);
  if (spec == "trivial") return trivial_family(G);
  if (spec.rfind("file:", 0) == 0) {
    auto j = load_structured_file(spec.substr(5));
    std::vector<Subgroup> seeds;
    if (j.contains("subgroup"))
      for (const auto& block : j.at("subgroup"))
        seeds.push_back(subgroup_from_json(G, block.at("elements")));
    if (seeds.empty()) throw std::runtime_error("family file has no [[subgroup]] blocks");
    return family_closure(G, seeds);
  }
  throw std::runtime_error("bad family spec '" + spec + "' (want all, trivial, or file:<path>)");
}

}  // namespace eqha
