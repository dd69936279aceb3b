#include "feyncat/decorate.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>

#include "feyncat/serialize.hpp"

namespace feyncat {

bool DecoratedPresentation::admits_object(const DecoratedObject& x) const {
  if (!base.admits_object(x.base, x.direction)) return false;
  return in_eval_object(*op, x.base, x.decoration, op_base(x.direction));
}

std::string DecoratedPresentation::rejection(const DecoratedMorphism& m) const {
  if (!admits_object(m.source())) return "source decoration invalid";
  if (auto why = base.rejection(m.base, m.source_dir); !why.empty()) return why;
  if (base.decorated() && eval_morphism(*base.decoration, m.base, m.source_dir) != m.target_dir)
    return "direction not carried to the target";
  if (eval_morphism(*op, m.base, m.source_dec, op_base(m.source_dir)) != m.target_dec)
    return "decoration not carried to the target";
  return {};
}

DecoratedPresentation decorate(FeynmanPresentation f, OpPtr o) { return {std::move(f), std::move(o)}; }

DecoratedObject make_object(const DecoratedPresentation& d, Aggregate x, Tuple dec, Tuple dir) {
  DecoratedObject r{std::move(x), std::move(dec), std::move(dir)};
  bool ok = false;
  try {
    ok = d.admits_object(r);
  } catch (const Error&) {
  }
  if (!ok) throw Error(ErrorKind::invalid_object, "decoration is not an element of " + d.name());
  return r;
}

DecoratedMorphism make_morphism(const DecoratedPresentation& d, GraphMorphism phi, Tuple source_dec,
                                Tuple source_dir) {
  if (auto why = d.base.rejection(phi, source_dir); !why.empty())
    throw Error(ErrorKind::invalid_morphism, d.base.name + " rejects the base morphism: " + why);
  Tuple tdir = d.base.decorated() ? eval_morphism(*d.base.decoration, phi, source_dir) : Tuple{};
  Tuple tdec = eval_morphism(*d.op, phi, source_dec, d.op_base(source_dir));
  return {std::move(phi), std::move(source_dec), std::move(tdec), std::move(source_dir), std::move(tdir)};
}

std::vector<DecoratedMorphism> dec_hom(const DecoratedPresentation& d, const DecoratedObject& x,
                                       const DecoratedObject& y) {
  if (!d.admits_object(x) || !d.admits_object(y))
    throw Error(ErrorKind::invalid_object, "dec_hom needs valid decorations");
  std::vector<DecoratedMorphism> out;
  for (auto& phi : hom_enumerate(d.base, x.base, y.base, x.direction, y.direction))
    if (eval_morphism(*d.op, phi, x.decoration, d.op_base(x.direction)) == y.decoration)
      out.push_back({std::move(phi), x.decoration, y.decoration, x.direction, y.direction});
  return out;
}

DecoratedMorphism dec_compose(const DecoratedMorphism& psi, const DecoratedMorphism& phi) {
  if (psi.source_dec != phi.target_dec || psi.source_dir != phi.target_dir)
    throw Error(ErrorKind::composition_mismatch, "decorations do not match at the middle object");
  return {compose(psi.base, phi.base), phi.source_dec, psi.target_dec, phi.source_dir, psi.target_dir};
}

namespace {

Tuple cat(Tuple a, const Tuple& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

DecoratedObject dec_tensor(const DecoratedObject& a, const DecoratedObject& b) {
  return {tensor(a.base, b.base), cat(a.decoration, b.decoration), cat(a.direction, b.direction)};
}

DecoratedMorphism dec_tensor(const DecoratedMorphism& a, const DecoratedMorphism& b) {
  return {tensor(a.base, b.base), cat(a.source_dec, b.source_dec), cat(a.target_dec, b.target_dec),
          cat(a.source_dir, b.source_dir), cat(a.target_dir, b.target_dir)};
}

DecoratedObject dec_unit() { return {Aggregate(), {}, {}}; }

DecoratedObject dec_normalize(const DecoratedObject& x) {
  std::vector<int> order(x.base.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int v) {
    const auto& f = x.base[v].flags;
    return f.empty() ? std::string() : *std::min_element(f.begin(), f.end());
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  DecoratedObject r;
  std::vector<Corolla> cs;
  for (int v : order) {
    cs.push_back(x.base[v]);
    if (!x.decoration.empty()) r.decoration.push_back(x.decoration[v]);
    if (!x.direction.empty()) r.direction.push_back(x.direction[v]);
  }
  r.base = Aggregate(std::move(cs));
  return r;
}

namespace {

class PullbackOp : public SetOp {
 public:
  PullbackOp(FeynmanFunctor f, OpPtr o) : f_(std::move(f)), o_(std::move(o)) {
    if (o_->uses_base()) throw Error(ErrorKind::domain, "cannot pull back " + o_->name() + ": it reads a base");
  }
  std::string name() const override { return "pullback(" + o_->name() + ")"; }
  std::string domain() const override { return f_.source.name; }
  std::vector<Element> elements(const Corolla& c, const Element&) const override {
    return o_->elements(map(c));
  }
  bool contains(const Corolla& c, const Element& e, const Element&) const override {
    return o_->contains(map(c), e);
  }
  Element random_element(const Corolla& c, Rng& rng, const Element&) const override {
    return o_->random_element(map(c), rng);
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const override {
    return o_->act(f_.map_morphism(phi), inputs);
  }

 private:
  Corolla map(const Corolla& c) const {
    Corolla r = c;
    if (f_.adds_genus()) r.genus = 0;
    return r;
  }
  FeynmanFunctor f_;
  OpPtr o_;
};

}  // namespace

OpPtr pullback_op(const FeynmanFunctor& f, OpPtr target_op) {
  if (f.kind == FunctorKind::identity) return target_op;
  return std::make_shared<PullbackOp>(f, std::move(target_op));
}

DecoratedObject transport_sigma(const OpNatTrans& s, const DecoratedObject& x) {
  return {x.base, s.apply(x.base, x.decoration), x.direction};
}

DecoratedMorphism transport_sigma(const OpNatTrans& s, const DecoratedMorphism& m) {
  return {m.base, s.apply(m.base.source(), m.source_dec), s.apply(m.base.target(), m.target_dec), m.source_dir,
          m.target_dir};
}

std::string to_json(const DecoratedMorphism& m, int indent) {
  using nlohmann::json;
  json j;
  j["base"] = json::parse(to_json(m.base));
  j["source_decoration"] = m.source_dec;
  j["target_decoration"] = m.target_dec;
  if (!m.source_dir.empty()) {
    j["source_direction"] = m.source_dir;
    j["target_direction"] = m.target_dir;
  }
  return j.dump(indent);
}

}  // namespace feyncat
