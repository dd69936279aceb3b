#include "feyncat/orders.hpp"

#include <set>

namespace feyncat {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t i = 0;
  while (true) {
    std::size_t j = s.find(sep, i);
    out.push_back(s.substr(i, j == std::string::npos ? std::string::npos : j - i));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::vector<std::vector<std::string>> linear_orders(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<std::string>> out;
  do out.push_back(items);
  while (std::next_permutation(items.begin(), items.end()));
  return out;
}

std::vector<std::vector<std::string>> cyclic_orders(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<std::string>> out;
  if (items.empty()) {
    out.emplace_back();
    return out;
  }
  // least rotation starts with the smallest label
  std::vector<std::string> rest(items.begin() + 1, items.end());
  do {
    std::vector<std::string> w{items[0]};
    w.insert(w.end(), rest.begin(), rest.end());
    out.push_back(std::move(w));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

std::vector<std::vector<std::string>> dihedral_orders(std::vector<std::string> items) {
  std::set<std::vector<std::string>> s;
  for (const auto& c : cyclic_orders(std::move(items))) s.insert(least_dihedral(c));
  return {s.begin(), s.end()};
}

}  // namespace feyncat
