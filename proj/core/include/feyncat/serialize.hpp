#ifndef FEYNCAT_SERIALIZE_HPP_
#define FEYNCAT_SERIALIZE_HPP_

#include <string>
#include <vector>

#include "feyncat/graph.hpp"

namespace feyncat {

// JSON layout is documented in docs/json-schema.md.
std::string to_json(const Aggregate& x, int indent = -1);
std::string to_json(const GraphMorphism& phi, int indent = -1);
std::string to_json(const Aggregate& x, const std::vector<std::string>& decoration, int indent = -1);

Aggregate aggregate_from_json(const std::string& text);
GraphMorphism morphism_from_json(const std::string& text);
std::pair<Aggregate, std::vector<std::string>> decorated_from_json(const std::string& text);

// Half-edges are drawn as stubs ending in point nodes; decorations become
// vertex labels.
std::string to_dot(const Aggregate& x, const std::vector<std::string>& decoration = {});
// Source and target as clusters, ghost edges dashed, flag map as dotted arrows.
std::string to_dot(const GraphMorphism& phi, const std::vector<std::string>& source_dec = {},
                   const std::vector<std::string>& target_dec = {});

}  // namespace feyncat

#endif
