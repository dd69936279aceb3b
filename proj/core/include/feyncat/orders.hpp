#ifndef FEYNCAT_ORDERS_HPP_
#define FEYNCAT_ORDERS_HPP_

#include <algorithm>
#include <string>
#include <vector>

namespace feyncat {

std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<std::string>& v, char sep);

template <class T>
std::vector<T> least_rotation(const std::vector<T>& w) {
  std::vector<T> best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::vector<T> cand(w.begin() + r, w.end());
    cand.insert(cand.end(), w.begin(), w.begin() + r);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

// Least word over rotations and reversals.
template <class T>
std::vector<T> least_dihedral(const std::vector<T>& w) {
  std::vector<T> r(w.rbegin(), w.rend());
  return std::min(least_rotation(w), least_rotation(r));
}

// All cyclic orders of `items` as least rotations, sorted.
std::vector<std::vector<std::string>> cyclic_orders(std::vector<std::string> items);
std::vector<std::vector<std::string>> linear_orders(std::vector<std::string> items);
// Cyclic orders up to reversal.
std::vector<std::vector<std::string>> dihedral_orders(std::vector<std::string> items);

}  // namespace feyncat

#endif
