#ifndef FEYNCAT_CANONICAL_HPP_
#define FEYNCAT_CANONICAL_HPP_

#include <string>
#include <vector>

#include "feyncat/graph.hpp"

namespace feyncat {

// Vertex-colored simple graph handed to the labeling search.
struct ColoredGraph {
  std::vector<std::string> color;
  std::vector<std::vector<int>> adj;

  int add_node(std::string c) {
    color.push_back(std::move(c));
    adj.emplace_back();
    return static_cast<int>(color.size()) - 1;
  }
  void add_edge(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
};

struct Labeling {
  std::vector<int> order;     // canonical position -> node
  std::vector<int> position;  // node -> canonical position
  std::string certificate;
  // generators of the automorphism group (node permutations, first is the identity)
  std::vector<std::vector<int>> automorphisms;
};

// Individualization-refinement.  Twin nodes are branched on once; leaves
// tying with the best certificate give the remaining automorphisms.
Labeling canonical_labeling(const ColoredGraph& g);

struct CanonicalAggregate {
  Aggregate form;
  std::string certificate;
  std::map<Label, Label> witness;  // input label -> canonical label
  std::vector<int> vertex_witness; // input vertex -> canonical vertex
};

CanonicalAggregate canonical_form(const Aggregate& x);

struct CanonicalMorphism {
  GraphMorphism form;
  std::string certificate;
  std::map<Label, Label> source_witness;
  std::map<Label, Label> target_witness;
  std::vector<int> source_vertex_witness;
  std::vector<int> target_vertex_witness;
};

CanonicalMorphism canonical_form(const GraphMorphism& phi);

bool isomorphic(const Aggregate& a, const Aggregate& b);
bool isomorphic(const GraphMorphism& a, const GraphMorphism& b);

}  // namespace feyncat

#endif
