#include "feyncat/functor.hpp"

#include "feyncat/orders.hpp"

namespace feyncat {

Aggregate FeynmanFunctor::map_object(const Aggregate& x) const {
  if (adds_genus()) return x.with_genus(0);
  return x;
}

GraphMorphism FeynmanFunctor::map_morphism(const GraphMorphism& phi) const {
  if (!adds_genus()) return phi;
  return GraphMorphism(phi.source().with_genus(0), phi.target().with_genus(0), phi.flag_map(), phi.vertex_map(),
                       phi.ghost());
}

FeynmanFunctor identity_functor(FeynmanPresentation f) {
  FeynmanFunctor r;
  r.kind = FunctorKind::identity;
  r.name = "id:" + f.name;
  r.source = f;
  r.target = std::move(f);
  return r;
}

FeynmanFunctor inclusion_functor(FeynmanPresentation from, FeynmanPresentation to) {
  if (from.decorated() || to.decorated())
    throw Error(ErrorKind::domain, "inclusions between decorated presentations are not supported");
  if (from.cond.genus_marked && !to.cond.genus_marked)
    throw Error(ErrorKind::domain, "cannot include a genus-marked presentation into an unmarked one");
  FeynmanFunctor r;
  r.kind = FunctorKind::inclusion;
  r.name = "i:" + from.name + "->" + to.name;
  r.source = std::move(from);
  r.target = std::move(to);
  return r;
}

FeynmanFunctor forget_direction_functor(FeynmanPresentation from) {
  if (!from.decorated()) throw Error(ErrorKind::domain, from.name + " carries no direction decoration");
  FeynmanFunctor r;
  r.kind = FunctorKind::forget_direction;
  r.name = "forget-dir:" + from.name;
  r.source = from;
  r.target = from;
  r.target.name = from.name + "/undirected";
  r.target.decoration = nullptr;
  r.target.cond.directed = r.target.cond.rooted = r.target.cond.no_directed_loops = false;
  return r;
}

FeynmanFunctor forget_functor(FeynmanPresentation f, OpPtr o) {
  FeynmanFunctor r;
  r.kind = FunctorKind::forget;
  r.name = "forget:" + f.name + "/" + o->name();
  r.source = f;
  r.target = std::move(f);
  r.op = std::move(o);
  return r;
}

FeynmanFunctor decorated_inclusion(const FeynmanFunctor& i, OpPtr o) {
  if (i.kind != FunctorKind::inclusion) throw Error(ErrorKind::domain, "decorated_inclusion needs an inclusion");
  FeynmanFunctor r = i;
  r.kind = FunctorKind::decorated_inclusion;
  r.name = "i^" + o->name() + ":" + i.source.name + "->" + i.target.name;
  r.op = std::move(o);
  return r;
}

FeynmanFunctor parse_functor(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::parse, "functor spec needs 'kind:...': " + spec);
  std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  auto arrow = rest.find("->");
  if (kind == "id") return identity_functor(builtin_category(rest));
  if (kind == "forget-dir") return forget_direction_functor(builtin_category(rest));
  if (kind == "forget") {
    auto slash = rest.find('/');
    if (slash == std::string::npos) throw Error(ErrorKind::parse, "forget needs 'forget:F/Op'");
    return forget_functor(builtin_category(rest.substr(0, slash)), builtin_op(rest.substr(slash + 1)));
  }
  if (arrow == std::string::npos) throw Error(ErrorKind::parse, "unknown functor spec: " + spec);
  auto i = inclusion_functor(builtin_category(rest.substr(0, arrow)), builtin_category(rest.substr(arrow + 2)));
  if (kind == "i") return i;
  if (kind.rfind("i^", 0) == 0) return decorated_inclusion(i, builtin_op(kind.substr(2)));
  throw Error(ErrorKind::parse, "unknown functor kind '" + kind + "'");
}

}  // namespace feyncat
