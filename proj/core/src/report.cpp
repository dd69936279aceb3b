#include "feyncat/report.hpp"

#include <json.hpp>
#include <sstream>

namespace feyncat {

void Report::absorb(const Report& sub) {
  if (!sub.pass) pass = false;
  if (!sub.stabilized) stabilized = false;
  for (const auto& [k, v] : sub.facts) facts.emplace_back(sub.name + "." + k, v);
  for (const auto& f : sub.failures)
    if (failures.size() < 20) failures.push_back(sub.name + ": " + f);
}

std::string Report::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["pass"] = pass;
  j["stabilized"] = stabilized;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [k, v] : facts) f[k] = v;
  j["facts"] = f;
  j["failures"] = failures;
  return j.dump(indent);
}

std::string Report::to_table() const {
  std::ostringstream o;
  o << name << ": " << (pass ? (stabilized ? "pass" : "unstabilized") : "FAIL") << "\n";
  for (const auto& [k, v] : facts) o << "  " << k << " = " << v << "\n";
  for (const auto& f : failures) o << "  ! " << f << "\n";
  return o.str();
}

}  // namespace feyncat
