#ifndef FEYNCAT_SETOPS_HPP_
#define FEYNCAT_SETOPS_HPP_

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "feyncat/graph.hpp"
#include "feyncat/report.hpp"

namespace feyncat {

using Element = std::string;
using Tuple = std::vector<Element>;  // one element per corolla
using Rng = std::mt19937_64;

// A set-valued op: per-corolla sets and actions of one-target morphisms.
// Relabelings are the one-target isomorphisms, so they go through act too.
// `base` carries the decoration a corolla already has in a decorated
// presentation; ops that do not read it ignore it.
class SetOp {
 public:
  virtual ~SetOp() = default;
  virtual std::string name() const = 0;
  // Presentation whose morphisms the op is functorial on.
  virtual std::string domain() const { return "G"; }
  virtual bool uses_base() const { return false; }

  virtual std::vector<Element> elements(const Corolla& c, const Element& base = {}) const = 0;
  virtual bool contains(const Corolla& c, const Element& e, const Element& base = {}) const;
  virtual Element random_element(const Corolla& c, Rng& rng, const Element& base = {}) const;
  // phi has exactly one target corolla; inputs follow the source corollas.
  virtual Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base = {}) const = 0;
};

using OpPtr = std::shared_ptr<const SetOp>;

// "Triv", "Ass", "CycAss", "CycDihed", "GenusN(cap=3)", "Rooted",
// "DirSet(values=0/1,involution=1/0,basepoint=0)"
OpPtr builtin_op(const std::string& spec);
OpPtr terminal_op();
std::vector<std::string> builtin_op_names();

// N with sum plus (1 - chi), saturating at cap.
class GenusOp : public SetOp {
 public:
  explicit GenusOp(int cap);
  std::string name() const override { return "GenusN(cap=" + std::to_string(cap_) + ")"; }
  std::string domain() const override { return "G_ctd"; }
  std::vector<Element> elements(const Corolla& c, const Element& base = {}) const override;
  bool contains(const Corolla& c, const Element& e, const Element& base = {}) const override;
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base = {}) const override;
  int cap() const { return cap_; }
  long long saturations() const { return saturated_.load(); }

 private:
  int cap_;
  mutable std::atomic<long long> saturated_{0};
};

OpPtr genus_op(int cap);

struct DirSetSpec {
  std::vector<std::string> values;
  std::map<std::string, std::string> involution;
  std::optional<std::string> basepoint;
};

class DirSetOp : public SetOp {
 public:
  explicit DirSetOp(DirSetSpec spec, std::string name = "DirSet");
  std::string name() const override { return name_; }
  std::string domain() const override { return spec_.basepoint ? "O" : "G"; }
  std::vector<Element> elements(const Corolla& c, const Element& base = {}) const override;
  bool contains(const Corolla& c, const Element& e, const Element& base = {}) const override;
  Element random_element(const Corolla& c, Rng& rng, const Element& base = {}) const override;
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base = {}) const override;

  const DirSetSpec& spec() const { return spec_; }
  std::string bar(const std::string& x) const;
  // value of each flag, keyed by label
  static std::map<Label, std::string> parse(const Element& e);

 private:
  DirSetSpec spec_;
  std::string name_;
};

// The ops used for directed and rooted presentations.
std::shared_ptr<const DirSetOp> direction_op();
std::shared_ptr<const DirSetOp> rooted_op();

// Elements are pairs; the second factor sees the first as its base.
OpPtr dependent_product(OpPtr first, OpPtr second);
Element encode_pair(const Element& a, const Element& b);
std::pair<Element, Element> decode_pair(const Element& e);

// User-defined op from the JSON table format (docs/json-schema.md).
OpPtr table_op_from_json(const std::string& text);

// Product over corollas.  Throws on an element outside a component set.
std::vector<Tuple> eval_object(const SetOp& o, const Aggregate& x, const Tuple& base = {});
long long eval_object_size(const SetOp& o, const Aggregate& x, const Tuple& base = {});
bool in_eval_object(const SetOp& o, const Aggregate& x, const Tuple& a, const Tuple& base = {});
Tuple eval_morphism(const SetOp& o, const GraphMorphism& phi, const Tuple& a, const Tuple& base = {});
Element relabel(const SetOp& o, const Corolla& from, const Element& e, const std::map<Label, Label>& m,
                const Element& base = {});

struct OpNatTrans {
  std::string name;
  OpPtr source, target;
  std::function<Element(const Corolla&, const Element&)> component;

  Tuple apply(const Aggregate& x, const Tuple& a) const;
};

OpNatTrans identity_nat(OpPtr o);
OpNatTrans to_terminal(OpPtr o);
// c -> [(c, all signs +)]
OpNatTrans cycass_to_cycdihed();

// Helpers exposed for tests and the surface module.
struct SignedCyclic {
  std::vector<Label> order;
  std::vector<int> sign;  // 0 or 1 per position
};
SignedCyclic parse_signed(const Element& e);
Element canonical_signed(const SignedCyclic& s);

// Sampled functor laws on the op's domain presentation.
Report check_functor(const SetOp& o, int samples, std::uint64_t seed);
Report check_naturality(const OpNatTrans& s, int samples, std::uint64_t seed);

}  // namespace feyncat

#endif
