#ifndef FEYNCAT_CATEGORY_HPP_
#define FEYNCAT_CATEGORY_HPP_

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "feyncat/graph.hpp"
#include "feyncat/report.hpp"
#include "feyncat/setops.hpp"

namespace feyncat {

// Restrictions on the ghost graph of each fiber.
struct GraphConditions {
  bool connected = false;
  int max_b1 = -1;  // -1 means unbounded
  bool genus_marked = false;
  bool directed = false;
  bool rooted = false;
  bool no_parallel_edges = false;
  bool no_directed_loops = false;
};

// A subcategory of G given by a morphism predicate.  Directed and rooted rows
// carry a DirSet decoration on objects; morphisms then need the source
// decoration to be judged.
struct FeynmanPresentation {
  std::string name;
  GraphConditions cond;
  std::shared_ptr<const DirSetOp> decoration;

  bool decorated() const { return decoration != nullptr; }
  bool admits_object(const Aggregate& x, const Tuple& dec = {}) const;
  // Empty string when admitted, otherwise the violated condition.
  std::string rejection(const GraphMorphism& phi, const Tuple& source_dec = {}) const;
  bool admits(const GraphMorphism& phi, const Tuple& source_dec = {}) const {
    return rejection(phi, source_dec).empty();
  }
};

FeynmanPresentation builtin_category(const std::string& name);
std::vector<std::string> builtin_category_names();

// All morphisms X -> Y in F.  For decorated presentations the decorations are
// required and the morphism must carry dx to dy.
std::vector<GraphMorphism> hom_enumerate(const FeynmanPresentation& f, const Aggregate& x, const Aggregate& y,
                                         const Tuple& dx = {}, const Tuple& dy = {});
// Same, over G, without the predicate.
std::vector<GraphMorphism> hom_enumerate_all(const Aggregate& x, const Aggregate& y);

struct Sample {
  GraphMorphism phi;
  Tuple source_dec, target_dec;  // empty for undecorated presentations
};

// Random objects and morphisms of a presentation.  Candidates are built to
// satisfy the conditions and then filtered through the predicate.
class Sampler {
 public:
  Sampler(FeynmanPresentation f, std::uint64_t seed);

  std::pair<Aggregate, Tuple> random_object(int max_corollas = 3, int max_degree = 4);
  std::optional<Sample> random_from(const Aggregate& x, const Tuple& dec);
  Sample random_morphism();
  // phi: X -> Y then psi: Y -> Z
  std::pair<Sample, Sample> random_composable();
  Label fresh();
  Rng& rng() { return rng_; }
  const FeynmanPresentation& presentation() const { return f_; }

 private:
  FeynmanPresentation f_;
  Rng rng_;
  long long counter_ = 0;
};

Report check_axioms_sampled(const FeynmanPresentation& f, int samples, std::uint64_t seed);

}  // namespace feyncat

#endif
