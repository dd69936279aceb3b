#ifndef FEYNCAT_DECORATE_HPP_
#define FEYNCAT_DECORATE_HPP_

#include <string>
#include <vector>

#include "feyncat/category.hpp"
#include "feyncat/functor.hpp"
#include "feyncat/setops.hpp"

namespace feyncat {

// `direction` holds the presentation's own DirSet decoration (empty for
// undecorated presentations); ops that read a base see it.
struct DecoratedObject {
  Aggregate base;
  Tuple decoration;
  Tuple direction;

  friend bool operator==(const DecoratedObject& a, const DecoratedObject& b) {
    return a.base == b.base && a.decoration == b.decoration && a.direction == b.direction;
  }
};

struct DecoratedMorphism {
  GraphMorphism base;
  Tuple source_dec, target_dec;
  Tuple source_dir, target_dir;

  DecoratedObject source() const { return {base.source(), source_dec, source_dir}; }
  DecoratedObject target() const { return {base.target(), target_dec, target_dir}; }
  friend bool operator==(const DecoratedMorphism& a, const DecoratedMorphism& b) {
    return a.base == b.base && a.source_dec == b.source_dec && a.target_dec == b.target_dec &&
           a.source_dir == b.source_dir;
  }
};

struct DecoratedPresentation {
  FeynmanPresentation base;
  OpPtr op;

  std::string name() const { return base.name + "_dec" + op->name(); }
  Tuple op_base(const Tuple& direction) const { return op->uses_base() ? direction : Tuple{}; }
  bool admits_object(const DecoratedObject& x) const;
  std::string rejection(const DecoratedMorphism& m) const;
};

DecoratedPresentation decorate(FeynmanPresentation f, OpPtr o);

// Validates and throws invalid_object.
DecoratedObject make_object(const DecoratedPresentation& d, Aggregate x, Tuple dec, Tuple dir = {});
// Target decorations computed by the op; throws invalid_morphism if the
// presentation rejects the base.
DecoratedMorphism make_morphism(const DecoratedPresentation& d, GraphMorphism phi, Tuple source_dec,
                                Tuple source_dir = {});

std::vector<DecoratedMorphism> dec_hom(const DecoratedPresentation& d, const DecoratedObject& x,
                                       const DecoratedObject& y);
DecoratedMorphism dec_compose(const DecoratedMorphism& psi, const DecoratedMorphism& phi);
DecoratedObject dec_tensor(const DecoratedObject& a, const DecoratedObject& b);
DecoratedMorphism dec_tensor(const DecoratedMorphism& a, const DecoratedMorphism& b);
DecoratedObject dec_unit();
// Corollas sorted by their least label; decorations follow their corollas.
DecoratedObject dec_normalize(const DecoratedObject& x);

// f*(O') on the source of f, acting through f.
OpPtr pullback_op(const FeynmanFunctor& f, OpPtr target_op);

// (X, a) -> (X, sigma_X(a)) and likewise on morphisms.
DecoratedObject transport_sigma(const OpNatTrans& s, const DecoratedObject& x);
DecoratedMorphism transport_sigma(const OpNatTrans& s, const DecoratedMorphism& m);

std::string to_json(const DecoratedMorphism& m, int indent = -1);

}  // namespace feyncat

#endif
