#ifndef FEYNCAT_GRAPH_HPP_
#define FEYNCAT_GRAPH_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feyncat/error.hpp"

namespace feyncat {

using Label = std::string;

// Labels are opaque, but a few characters are reserved by the descriptor
// grammar and by element encodings.
bool valid_label(const Label& l);

struct Corolla {
  std::string id;
  std::vector<Label> flags;
  std::optional<int> genus;

  int degree() const { return static_cast<int>(flags.size()); }
  friend bool operator==(const Corolla& a, const Corolla& b) {
    return a.flags == b.flags && a.genus == b.genus;
  }
};

// An ordered tensor word of corollas.  Flags get dense indices in corolla
// order; vertex ids are informational and do not take part in equality.
class Aggregate {
 public:
  Aggregate();
  explicit Aggregate(std::vector<Corolla> corollas);

  static Aggregate corolla(std::vector<Label> flags, std::optional<int> genus = {});

  const std::vector<Corolla>& corollas() const { return d_->corollas; }
  const Corolla& operator[](int v) const { return d_->corollas[v]; }
  int size() const { return static_cast<int>(d_->corollas.size()); }
  bool empty() const { return d_->corollas.empty(); }

  int flag_count() const { return static_cast<int>(d_->labels.size()); }
  const Label& label(int f) const { return d_->labels[f]; }
  int vertex_of(int f) const { return d_->vertex_of[f]; }
  int first_flag(int v) const { return d_->offset[v]; }
  int end_flag(int v) const { return d_->offset[v + 1]; }
  int degree(int v) const { return d_->offset[v + 1] - d_->offset[v]; }
  // -1 when absent
  int index_of(const Label& l) const;
  bool has_label(const Label& l) const { return index_of(l) >= 0; }
  const std::vector<Label>& labels() const { return d_->labels; }

  // All corollas carry a genus (vacuously true when empty).
  bool genus_marked() const { return d_->marked; }
  bool genus_free() const { return d_->unmarked; }
  // flags + flagless corollas; the truncation budget is measured in this unit
  int weight() const;

  Aggregate relabeled(const std::map<Label, Label>& m) const;
  Aggregate with_genus(std::optional<int> g) const;
  Aggregate sub(const std::vector<int>& vertices) const;

  friend bool operator==(const Aggregate& a, const Aggregate& b);
  friend bool operator!=(const Aggregate& a, const Aggregate& b) { return !(a == b); }

 private:
  struct Data {
    std::vector<Corolla> corollas;
    std::vector<Label> labels;
    std::vector<int> vertex_of;
    std::vector<int> offset;
    std::map<Label, int> index;
    bool marked = true;
    bool unmarked = true;
  };
  std::shared_ptr<const Data> d_;
};

Aggregate tensor(const Aggregate& a, const Aggregate& b);

struct GhostGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> flag_edges;    // source flag pairs, a < b
  std::vector<std::pair<int, int>> vertex_edges;  // parallel to flag_edges
  std::vector<int> external;                      // source flags in the image
};

// phi: X -> Y.  flag_map sends target flags to source flags (injective),
// vertex_map sends source vertices onto target vertices, ghost pairs the
// source flags outside the image (-1 on the image).  With genus marks on both
// sides, genus(v) = sum of fiber genera + 1 - chi(fiber).
class GraphMorphism {
 public:
  GraphMorphism(Aggregate source, Aggregate target, std::vector<int> flag_map,
                std::vector<int> vertex_map, std::vector<int> ghost);

  static GraphMorphism identity(const Aggregate& x);
  // Built from labels: flag_map gives target label -> source label.
  static GraphMorphism from_labels(Aggregate source, Aggregate target,
                                   const std::map<Label, Label>& flag_map,
                                   std::vector<int> vertex_map,
                                   const std::vector<std::pair<Label, Label>>& edges);
  // Isomorphism matching equal labels; corollas may be reordered.
  static GraphMorphism reorder(const Aggregate& from, const Aggregate& to);

  const Aggregate& source() const { return src_; }
  const Aggregate& target() const { return tgt_; }
  int flag_image(int target_flag) const { return flag_map_[target_flag]; }
  int vertex_image(int source_vertex) const { return vertex_map_[source_vertex]; }
  int partner(int source_flag) const { return ghost_[source_flag]; }
  // target flag hit by a source flag, -1 for ghost flags
  int preimage(int source_flag) const { return inverse_[source_flag]; }
  const std::vector<int>& flag_map() const { return flag_map_; }
  const std::vector<int>& vertex_map() const { return vertex_map_; }
  const std::vector<int>& ghost() const { return ghost_; }

  std::vector<std::pair<int, int>> ghost_edges() const;
  int ghost_edge_count() const;
  std::vector<int> fiber(int target_vertex) const;
  GhostGraph ghost_graph() const;
  bool is_isomorphism() const;

  friend bool operator==(const GraphMorphism& a, const GraphMorphism& b);
  friend bool operator!=(const GraphMorphism& a, const GraphMorphism& b) { return !(a == b); }

 private:
  Aggregate src_, tgt_;
  std::vector<int> flag_map_, vertex_map_, ghost_, inverse_;
};

GraphMorphism compose(const GraphMorphism& psi, const GraphMorphism& phi);
GraphMorphism tensor(const GraphMorphism& a, const GraphMorphism& b);
GraphMorphism relabel_source(const GraphMorphism& phi, const std::map<Label, Label>& m);
GraphMorphism relabel_target(const GraphMorphism& phi, const std::map<Label, Label>& m);
// Inverse of an isomorphism.
GraphMorphism inverse(const GraphMorphism& iso);

struct Decomposition {
  std::vector<GraphMorphism> factors;  // one per target vertex, target order
  std::vector<int> source_order;       // fibers concatenated: position -> source vertex
};

Decomposition decompose(const GraphMorphism& phi);
GraphMorphism recompose(const Decomposition& d, const Aggregate& source);

// Restriction of phi to the fiber over target vertex v.
GraphMorphism restrict_to(const GraphMorphism& phi, int target_vertex);

struct GhostInvariants {
  std::vector<int> b1;            // per target vertex
  std::vector<int> components;    // per target vertex
  std::vector<int> euler_defect;  // 1 - chi per target vertex
  int total_components = 0;
};

GhostInvariants ghost_invariants(const GraphMorphism& phi);

// E - V + C over an arbitrary small multigraph.
int betti_one(int vertices, const std::vector<std::pair<int, int>>& edges);
int count_components(int vertices, const std::vector<std::pair<int, int>>& edges);

}  // namespace feyncat

#endif
