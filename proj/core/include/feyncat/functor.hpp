#ifndef FEYNCAT_FUNCTOR_HPP_
#define FEYNCAT_FUNCTOR_HPP_

#include <string>

#include "feyncat/category.hpp"

namespace feyncat {

enum class FunctorKind {
  identity,
  inclusion,         // e.g. C -> M, marking genus 0 when the target needs it
  forget_direction,  // drops the DirSet decoration, e.g. O -> C
  forget,            // F_decO -> F
  decorated_inclusion,
};

// The functors the Kan engine knows about.  `source` and `target` are the
// underlying presentations; `op` is the decorating op for forget and for the
// decorated inclusion (whose base functor is `base`).
struct FeynmanFunctor {
  FunctorKind kind = FunctorKind::identity;
  std::string name;
  FeynmanPresentation source, target;
  OpPtr op;

  bool adds_genus() const { return target.cond.genus_marked && !source.cond.genus_marked; }
  Aggregate map_object(const Aggregate& x) const;
  GraphMorphism map_morphism(const GraphMorphism& phi) const;
};

FeynmanFunctor identity_functor(FeynmanPresentation f);
FeynmanFunctor inclusion_functor(FeynmanPresentation from, FeynmanPresentation to);
FeynmanFunctor forget_direction_functor(FeynmanPresentation from);
FeynmanFunctor forget_functor(FeynmanPresentation f, OpPtr o);
// i^O for an undecorated inclusion i
FeynmanFunctor decorated_inclusion(const FeynmanFunctor& i, OpPtr o);

// "id:C", "i:C->M", "forget:C/CycAss", "forget-dir:O", "i^CycAss:C->M"
FeynmanFunctor parse_functor(const std::string& spec);

}  // namespace feyncat

#endif
