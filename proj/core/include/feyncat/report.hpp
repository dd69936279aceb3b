#ifndef FEYNCAT_REPORT_HPP_
#define FEYNCAT_REPORT_HPP_

#include <string>
#include <utility>
#include <vector>

namespace feyncat {

struct Report {
  std::string name;
  bool pass = true;
  bool stabilized = true;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<std::string> failures;  // counterexamples, JSON where possible

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
  void note(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void note(std::string key, long long value) { note(std::move(key), std::to_string(value)); }
  void absorb(const Report& sub);

  std::string to_json(int indent = 2) const;
  std::string to_table() const;
};

}  // namespace feyncat

#endif
