#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace eqha {

using json = nlohmann::json;

// One named verdict inside a suite.  `detail` carries whatever ranks or
// dimensions make the verdict auditable; it must be deterministic for a fixed
// (config, seed) so that reruns serialize identically.
struct CheckResult {
  std::string key;
  bool pass = true;
  json detail = json::object();
};

struct SuiteReport {
  std::string suite;
  json config = json::object();  // echo of ring/group/family/window/trials
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  void add(std::string key, bool pass, json detail = json::object()) {
    checks.push_back({std::move(key), pass, std::move(detail)});
  }

  bool ok() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const CheckResult* first_failure() const {
    for (auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  // Canonical serialization: checks sorted by key, object keys sorted by
  // nlohmann's ordering.  Wall time never enters the payload.
  json to_json() const {
    std::vector<const CheckResult*> order;
    for (auto& c : checks) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(),
                     [](const CheckResult* a, const CheckResult* b) { return a->key < b->key; });
    json arr = json::array();
    for (auto* c : order)
      arr.push_back(json{{"key", c->key}, {"pass", c->pass}, {"detail", c->detail}});
    json out{{"suite", suite}, {"seed", seed},     {"config", config},
             {"ok", ok()},     {"checks", arr}};
    if (auto* f = first_failure())
      out["first_failure"] = json{{"key", f->key}, {"detail", f->detail}};
    else
      out["first_failure"] = nullptr;
    return out;
  }

  std::string to_markdown() const { return report_markdown(to_json()); }

  static std::string report_markdown(const json& r);
};

// Markdown is a pure view over the JSON payload.
inline std::string SuiteReport::report_markdown(const json& r) {
  std::string md;
  md += "# " + r.at("suite").get<std::string>() + "\n\n";
  md += "- result: " + std::string(r.at("ok").get<bool>() ? "PASS" : "FAIL") + "\n";
  md += "- seed: " + std::to_string(r.at("seed").get<std::uint64_t>()) + "\n";
  for (auto& [k, v] : r.at("config").items())
    md += "- " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  md += "\n| check | verdict | detail |\n|---|---|---|\n";
  for (auto& c : r.at("checks")) {
    std::string d = c.at("detail").dump();
    std::string esc;
    for (char ch : d) {
      if (ch == '|') esc += "\\|";
      else esc += ch;
    }
    md += "| " + c.at("key").get<std::string>() + " | " +
          (c.at("pass").get<bool>() ? "pass" : "FAIL") + " | `" + esc + "` |\n";
  }
  return md;
}

}  // namespace eqha
