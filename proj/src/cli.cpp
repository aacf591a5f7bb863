#include "eqha/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "eqha/load.hpp"
#include "eqha/suites.hpp"

namespace eqha {
namespace {

struct Opts {
  std::string ring = "q";
  std::string group = "c2";
  std::string family = "all";
  std::uint64_t seed = 0;
  std::string out;
  std::string window = "-1:2";
  int trials = 20;
  int maxdim = 3;
  // command-specific inputs
  std::string complex_path, module_path, presheaf_path, script_path;
  std::string algebra = "exterior";
  std::string variant = "both";
  int complexes = 25, maxcells = 5, pairs = 30;
};

std::pair<int, int> parse_window(const std::string& w) {
  auto c = w.find(':', 1);  // a leading '-' belongs to lo
  if (c == std::string::npos)
    throw std::runtime_error("bad window '" + w + "' (want <lo>:<hi>)");
  int lo = std::stoi(w.substr(0, c)), hi = std::stoi(w.substr(c + 1));
  if (lo > hi) throw std::runtime_error("bad window '" + w + "': lo > hi");
  return {lo, hi};
}

template <class Fn>
auto with_field(const FieldSpec& fs, Fn&& fn) {
  return fs.rational ? fn(FieldQ{}) : fn(FieldFp(fs.p));
}

// Shared flags; each subcommand opts into the ones that matter for it.
void add_common(CLI::App* cmd, Opts& o, bool group = true, bool seeded = false) {
  cmd->add_option("--ring", o.ring, "coefficients: q or fp:<prime>");
  cmd->add_option("--out", o.out, "write the JSON report to this path");
  if (group) {
    cmd->add_option("--group", o.group, "builtin name (c2,c3,c4,s3) or a group file");
    cmd->add_option("--family", o.family, "all | trivial | file:<path>");
  }
  if (seeded) {
    cmd->add_option("--seed", o.seed, "master seed for all sampling");
    cmd->add_option("--window", o.window, "degree window <lo>:<hi> for sampled objects");
    cmd->add_option("--trials", o.trials, "sampled instances per check");
  }
}

json module_block(const json& j) { return j.contains("module") ? j.at("module") : j; }
json complex_block(const json& j) {
  if (j.contains("complex")) return j.at("complex");
  if (j.contains("module") && j.at("module").contains("complex"))
    return j.at("module").at("complex");
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"equivariant chain-level computations and verification suites"};
  app.require_subcommand(1);
  Opts o;
  std::function<SuiteReport()> runner;

  auto* group_cmd = app.add_subcommand("group", "group utilities");
  group_cmd->require_subcommand(1);
  auto* group_info = group_cmd->add_subcommand("info", "order, elements, subgroup lattice");
  add_common(group_info, o);
  group_info->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      return with_field(FieldSpec::parse(o.ring),
                        [&](auto f) { return group_info_report(f, G); });
    };
  });

  auto* orbit = app.add_subcommand("orbit-cat", "orbit-category hom ranks and composition");
  add_common(orbit, o);
  orbit->add_option("--variant", o.variant, "group-ring | fixed-point | both")
      ->check(CLI::IsMember({"group-ring", "fixed-point", "both"}));
  orbit->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      return with_field(FieldSpec::parse(o.ring),
                        [&](auto f) { return orbit_cat_report(f, fam, o.variant); });
    };
  });

  auto* hml = app.add_subcommand("homology", "homology ranks of a chain complex file");
  add_common(hml, o, /*group=*/false);
  hml->add_option("--complex", o.complex_path, "complex file (.toml or .json)")->required();
  hml->callback([&] {
    runner = [&] {
      json j = load_structured_file(o.complex_path);
      FieldSpec fs = field_from_json(j, FieldSpec::parse(o.ring));
      return with_field(fs, [&](auto f) {
        auto C = complex_from_json(f, complex_block(j));
        return homology_report(f, C, o.complex_path);
      });
    };
  });

  auto* fix = app.add_subcommand("fixed", "fixed-point complexes of a module, per subgroup");
  add_common(fix, o);
  fix->add_option("--module", o.module_path, "module file")->required();
  fix->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      json j = load_structured_file(o.module_path);
      FieldSpec fs = field_from_json(module_block(j), FieldSpec::parse(o.ring));
      return with_field(fs, [&](auto f) {
        auto M = gmodule_from_json(f, G, module_block(j));
        return fixed_report(f, M, fam, o.module_path);
      });
    };
  });

  auto* orb = app.add_subcommand("orbits", "orbit complexes of a module, per subgroup");
  add_common(orb, o);
  orb->add_option("--module", o.module_path, "module file")->required();
  orb->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      json j = load_structured_file(o.module_path);
      FieldSpec fs = field_from_json(module_block(j), FieldSpec::parse(o.ring));
      return with_field(fs, [&](auto f) {
        auto M = gmodule_from_json(f, G, module_block(j));
        return orbits_report(f, M, fam, o.module_path);
      });
    };
  });

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);

  auto* vadj = verify->add_subcommand("adjunctions",
                                      "key isomorphism, bitensor, induction/coinduction, "
                                      "double enrichment");
  add_common(vadj, o, true, true);
  vadj->add_option("--maxdim", o.maxdim, "max per-degree dimension of sampled objects");
  vadj->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      auto [lo, hi] = parse_window(o.window);
      return with_field(FieldSpec::parse(o.ring), [&, lo, hi](auto f) {
        return adjunction_suite(f, fam, o.seed, o.trials, lo, hi, o.maxdim);
      });
    };
  });

  auto* vq = verify->add_subcommand("quillen", "unit/counit identities and triangle checks");
  add_common(vq, o, true, true);
  vq->add_option("--maxdim", o.maxdim, "max per-degree dimension of sampled objects");
  vq->add_option("--presheaf", o.presheaf_path, "also check the unit on this presheaf file");
  vq->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      auto [lo, hi] = parse_window(o.window);
      return with_field(FieldSpec::parse(o.ring), [&, lo, hi](auto f) {
        SuiteReport rep = quillen_suite(f, fam, o.seed, o.trials, lo, hi, o.maxdim);
        if (!o.presheaf_path.empty()) {
          auto O = fixed_orbit_category(f, fam);
          json pj = load_structured_file(o.presheaf_path);
          auto X = presheaf_from_json(O, pj.contains("presheaf") ? pj.at("presheaf") : pj);
          quillen_check_presheaf(rep, O, X, o.presheaf_path);
        }
        return rep;
      });
    };
  });

  auto* vd = verify->add_subcommand("dreitoo",
                                    "algebra-coefficient adjunction and reindexing suites");
  add_common(vd, o, true, true);
  vd->add_option("--algebra", o.algebra, "ground | exterior | algebra file");
  vd->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      return with_field(FieldSpec::parse(o.ring), [&](auto f) {
        auto A = load_algebra(f, o.algebra);
        return dreitoo_suite(f, fam, A, o.algebra, o.seed, o.trials);
      });
    };
  });

  auto* rpt = app.add_subcommand("report", "informational reports");
  rpt->require_subcommand(1);
  auto* rtau = rpt->add_subcommand("tau", "base-change comparison per orbit pair");
  add_common(rtau, o);
  rtau->add_option("--algebra", o.algebra, "ground | exterior | algebra file");
  rtau->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      return with_field(FieldSpec::parse(o.ring), [&](auto f) {
        auto A = load_algebra(f, o.algebra);
        return tau_report(f, fam, A, o.algebra);
      });
    };
  });

  auto* cells = app.add_subcommand("cells", "cell-complex construction and model-category checks");
  cells->require_subcommand(1);

  auto* cb = cells->add_subcommand("build", "build a cell complex from a script");
  add_common(cb, o);
  cb->add_option("--script", o.script_path, "cell build script (.toml or .json)")->required();
  cb->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      json j = load_structured_file(o.script_path);
      FieldSpec fs = field_from_json(j, FieldSpec::parse(o.ring));
      return with_field(fs, [&](auto f) {
        auto X = cells_from_json(f, G, j);
        SuiteReport rep;
        rep.suite = "cells-build";
        rep.config = {{"ring", f.name()}, {"group", G->name}, {"script", o.script_path}};
        json stages = json::array();
        for (auto& s : X.stages) stages.push_back(dims_json(s.cx));
        json cl = json::array();
        for (auto& c : X.cells)
          cl.push_back(json{{"subgroup", c.H.key()},
                            {"degree", c.n},
                            {"kind", c.kind == CellKind::zero_to_disk ? "free" : "glued"}});
        rep.add("build", true,
                {{"cells", cl}, {"stage_dims", stages}, {"total_dims", dims_json(X.total.cx)}});
        for (auto& H : fam.members) {
          auto fx = fixed_points(X.total, H);
          rep.add("total-fixed/H=" + H.key(), true,
                  {{"dims", dims_json(fx.cx)}, {"homology", dims_json(homology_dims(fx.cx))}});
        }
        return rep;
      });
    };
  });

  auto* ca = cells->add_subcommand("check-acyclic",
                                   "fixed-point acyclicity of cell inclusions");
  add_common(ca, o, true, true);
  ca->add_option("--script", o.script_path, "check this script instead of sampling");
  ca->add_option("--complexes", o.complexes, "number of sampled complexes");
  ca->add_option("--maxcells", o.maxcells, "max cells per sampled complex");
  ca->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      if (!o.script_path.empty()) {
        json j = load_structured_file(o.script_path);
        FieldSpec fs = field_from_json(j, FieldSpec::parse(o.ring));
        return with_field(fs, [&](auto f) {
          auto X = cells_from_json(f, G, j);
          SuiteReport rep;
          rep.suite = "cells-check-acyclic";
          rep.config = {{"ring", f.name()}, {"group", G->name}, {"script", o.script_path}};
          try {
            FamilyVerdict v = acyclicity_check(X, fam);
            rep.add("inclusion-is-equivalence", v.all, {{"per_subgroup", verdict_json(v, fam)}});
          } catch (const std::invalid_argument& e) {
            rep.add("inclusion-is-equivalence", false, {{"reason", e.what()}});
          }
          return rep;
        });
      }
      auto [lo, hi] = parse_window(o.window);
      return with_field(FieldSpec::parse(o.ring), [&, lo, hi](auto f) {
        return cells_acyclicity_suite(f, fam, o.seed, o.complexes, o.maxcells, lo, hi);
      });
    };
  });

  auto* cs = cells->add_subcommand("sm7", "pullback-corner and lifting checks");
  add_common(cs, o, true, true);
  cs->add_option("--pairs", o.pairs, "number of sampled (generator, fibration) pairs");
  cs->callback([&] {
    runner = [&] {
      GroupPtr G = load_group(o.group);
      Family fam = family_from_spec(G, o.family);
      auto [lo, hi] = parse_window(o.window);
      return with_field(FieldSpec::parse(o.ring), [&, lo, hi](auto f) {
        return sm7_suite(f, fam, o.seed, o.pairs, lo, hi);
      });
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  try {
    rep = runner();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  json payload = rep.to_json();
  out << SuiteReport::report_markdown(payload);
  if (!o.out.empty()) {
    std::ofstream fo(o.out, std::ios::binary);
    if (!fo) {
      err << "error: cannot write " << o.out << "\n";
      return 2;
    }
    fo << payload.dump(2) << "\n";
  }
  err << "wall_time_ms " << ms << "\n";
  if (!rep.ok()) {
    err << "first counterexample:\n" << payload.at("first_failure").dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace eqha
