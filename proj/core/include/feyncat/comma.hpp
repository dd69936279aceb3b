#ifndef FEYNCAT_COMMA_HPP_
#define FEYNCAT_COMMA_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "feyncat/functor.hpp"

namespace feyncat {

// The undecorated comma category <f | *_T>: objects (X, phi: f(X) -> *_T)
// with X in the source presentation, up to isomorphism.  Decorations are
// layered on top by the Kan engine.
struct CommaShape {
  FeynmanPresentation source, target;
  bool adds_genus = false;

  static CommaShape of(const FeynmanFunctor& f);
  std::string key() const;
};

struct CommaRep {
  Aggregate source;     // canonical labels: target labels outside, "%k" on ghost flags
  GraphMorphism arrow;  // f(source) -> target corolla
  int weight = 0;
  std::string certificate;
  std::string descriptor;
  std::vector<GraphMorphism> automorphisms;  // generators, source -> source
  struct Step {
    int target;
    GraphMorphism xi;  // source -> reps[target].source, arrow = target arrow o f(xi)
  };
  std::vector<Step> steps;  // elementary morphisms
};

class CommaCatalog {
 public:
  CommaCatalog(CommaShape shape, Corolla target, int bound);

  const CommaShape& shape() const { return shape_; }
  const Corolla& target() const { return target_; }
  const Aggregate& target_object() const { return target_obj_; }
  int bound() const { return bound_; }
  const std::vector<CommaRep>& reps() const { return reps_; }
  int find(const std::string& certificate) const;

  struct Located {
    int rep = -1;
    GraphMorphism iso;  // x -> reps[rep].source
  };
  // An arbitrary comma object (x, phi) over the target; rep = -1 when it is
  // heavier than the bound.
  Located locate(const Aggregate& x, const GraphMorphism& phi) const;

 private:
  void enumerate();
  void insert(const Aggregate& x, const GraphMorphism& phi);
  void build_steps(int r);
  GraphMorphism arrow_for(const Aggregate& x, const std::vector<std::pair<Label, Label>>& edges) const;

  CommaShape shape_;
  Corolla target_;
  Aggregate target_obj_;
  int bound_;
  std::vector<CommaRep> reps_;
  std::map<std::string, int> index_;
};

std::shared_ptr<const CommaCatalog> comma_catalog(const CommaShape& shape, const Corolla& target, int bound);

}  // namespace feyncat

#endif
