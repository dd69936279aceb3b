#ifndef FEYNCAT_DESCRIPTOR_HPP_
#define FEYNCAT_DESCRIPTOR_HPP_

#include <string>
#include <vector>

#include "feyncat/graph.hpp"

namespace feyncat {

// "*{a,b,c}" corollas, optional "g=2" suffix, joined by "x" or "⊗".
Aggregate parse_aggregate(const std::string& text);
std::string format_aggregate(const Aggregate& x);

// Per-corolla element strings separated by ';' (the element encodings use ',').
std::vector<std::string> parse_decoration(const std::string& text);
std::string format_decoration(const std::vector<std::string>& d);

}  // namespace feyncat

#endif
