#include <cmath>

#include "json.hpp"
#include "xspectra/cli.hpp"

namespace xspectra::cli {

const Check& RunManifest::add_check(std::string name, double measured, double tolerance,
                                    std::string relation) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.relation = std::move(relation);
  if (std::isfinite(measured))
    c.pass = c.relation == ">=" ? measured >= tolerance : measured <= tolerance;
  checks.push_back(std::move(c));
  return checks.back();
}

bool RunManifest::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) j["parameters"][k] = v;
  j["tolerances"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : tolerances) j["tolerances"][k] = v;
  j["outputs"] = outputs;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass ? "pass" : "fail";
    // json has no inf/nan; keep the text form
    if (std::isfinite(c.measured))
      cj["measured"] = c.measured;
    else
      cj["measured"] = format_double(c.measured);
    cj["tolerance"] = c.tolerance;
    cj["relation"] = c.relation;
    j["checks"].push_back(cj);
  }
  j["all_pass"] = all_pass();
  if (!notes.empty()) {
    j["notes"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : notes) j["notes"][k] = v;
  }
  return j.dump(2) + "\n";
}

}  // namespace xspectra::cli
