#ifndef FEYNCAT_KAN_HPP_
#define FEYNCAT_KAN_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "feyncat/comma.hpp"
#include "feyncat/decorate.hpp"
#include "feyncat/functor.hpp"
#include "feyncat/report.hpp"
#include "feyncat/setops.hpp"

namespace feyncat {

// Class id per node for the equivalence relation generated by `merges`.
// Ids are numbered by least member, so the result does not depend on the
// order of the merge list.
std::vector<int> partition(int nodes, const std::vector<std::pair<int, int>>& merges);

// What a comma object carries on top of its shape.  Which parts are present
// depends on the functor: `direction` for DirSet-decorated sources, `decoration`
// for forget and decorated inclusions, `element` is the value of the op being
// pushed forward.
struct NodeParts {
  Element direction, decoration, element;
};

struct CommaObject {
  Aggregate source;
  GraphMorphism arrow;  // f(source) -> X'
  std::vector<NodeParts> parts;
  int weight = 0;
};

struct ColimitClass {
  std::string key;
  int rep = -1;   // catalog index of the least member
  Tuple element;  // its (encoded) element tuple
  long long size = 0;
};

struct TerminalResult {
  bool weak = false;    // every object of the class maps to it
  bool strict = false;  // ... by exactly one morphism
  int rep = -1;
  Tuple element;
  std::string note;
};

// f_*(P) at one target corolla: the colimit of P over <f | c> truncated at
// `bound`, with the class counts at bound-2, bound-1 and bound.
class CorollaPushforward {
 public:
  struct Spec {
    FeynmanFunctor f;
    OpPtr op;
    Corolla target;
    int bound = 0;
    Element target_dir;  // DirSet-decorated targets
    Element target_dec;  // decorated inclusion: the class of i_*(O) below
  };
  explicit CorollaPushforward(Spec spec);

  const Spec& spec() const { return spec_; }
  const CommaCatalog& catalog() const { return *catalog_; }
  const OpPtr& element_op() const { return eop_; }
  int bound() const { return spec_.bound; }
  bool stabilized() const { return stabilized_; }
  // class counts at bound-2, bound-1, bound
  const std::vector<long long>& level_counts() const { return levels_; }
  const std::vector<ColimitClass>& classes() const { return classes_; }
  int class_index(const std::string& key) const;
  long long node_count() const { return static_cast<long long>(node_rep_.size()); }
  long long merge_count() const { return static_cast<long long>(merges_.size()); }
  // transported elements that fell outside the node set (always 0 when the
  // filters are functorial)
  long long dangling() const { return dangling_; }

  const std::vector<std::string>& encoded(int rep) const { return elements_[rep]; }
  long long node_id(int rep, const Tuple& element) const;
  int class_of_node(long long node) const { return node_class_[node]; }
  int class_of(int rep, const Tuple& element) const;
  // class of an arbitrary comma object over this corolla; -1 if too heavy
  int class_of(const Aggregate& x, const GraphMorphism& phi, const Tuple& element) const;
  std::pair<int, Tuple> node(long long id) const;
  CommaObject comma_object(long long id) const;

  TerminalResult terminal(int cls) const;
  // all merge edges (node pairs), for confluence tests
  const std::vector<std::pair<int, int>>& merges() const { return merges_; }

 private:
  bool keep(int rep, const Tuple& e) const;
  Tuple directions(const Tuple& e) const;
  long long count_morphisms(int from_rep, const Tuple& e, int to_rep, const Tuple& t) const;

  Spec spec_;
  std::shared_ptr<const CommaCatalog> catalog_;
  OpPtr eop_;
  std::shared_ptr<const CorollaPushforward> inner_;
  int inner_class_ = -1;
  std::vector<std::vector<std::string>> elements_;
  std::vector<long long> offset_;
  std::vector<int> node_rep_;
  std::vector<std::pair<int, int>> merges_;
  std::vector<int> merge_level_;
  std::vector<int> node_class_;
  std::vector<ColimitClass> classes_;
  std::map<std::string, int> class_index_;
  std::vector<long long> levels_;
  bool stabilized_ = false;
  long long dangling_ = 0;
};

// Element of the layered op for the given parts.
Element encode_node(const FeynmanFunctor& f, const NodeParts& p);
NodeParts decode_node(const FeynmanFunctor& f, const Element& e);

// Least weight of a comma object over c plus `slack`.
int default_bound(const FeynmanFunctor& f, const Corolla& c, int slack);

std::shared_ptr<const CorollaPushforward> pushforward_corolla(const FeynmanFunctor& f, OpPtr op, const Corolla& c,
                                                              int bound, const Element& target_dir = {},
                                                              const Element& target_dec = {});

// Product of the per-corolla values; every corolla gets the same slack
// bound - weight(X').
struct PushforwardValue {
  Aggregate target;
  int bound = 0;
  bool stabilized = true;
  std::vector<std::shared_ptr<const CorollaPushforward>> factors;

  long long class_count() const;
  std::vector<Tuple> classes() const;
  // class keys of a comma object (x, phi: f(x) -> X', element tuple)
  Tuple class_of(const Aggregate& x, const GraphMorphism& phi, const Tuple& element) const;
  Report report() const;
};

PushforwardValue pushforward_at(const FeynmanFunctor& f, OpPtr op, const Aggregate& target, int bound,
                                const Tuple& target_dir = {}, const Tuple& target_dec = {});

struct CommaListing {
  std::vector<CommaObject> objects;
  std::vector<TerminalResult> terminal;  // per colimit class
  bool terminal_found = false;           // some class has a weakly terminal object
};

// Comma objects over a corolla up to the bound, in canonical order.  For
// undecorated sources the op is Triv, so there is one object per shape.
CommaListing comma_objects(const FeynmanFunctor& f, const Corolla& target, int bound, OpPtr op = nullptr,
                           const Element& target_dir = {}, const Element& target_dec = {});

// f_*(P) as an op on the target presentation; values are class keys.
class PushforwardOp : public SetOp {
 public:
  PushforwardOp(FeynmanFunctor f, OpPtr op, int slack);
  std::string name() const override;
  std::string domain() const override { return f_.target.name; }
  std::vector<Element> elements(const Corolla& c, const Element& base = {}) const override;
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base = {}) const override;

  std::shared_ptr<const CorollaPushforward> at(const Corolla& c, int bound = -1) const;
  const FeynmanFunctor& functor() const { return f_; }
  const OpPtr& op() const { return op_; }
  int slack() const { return slack_; }
  // the comma object (x, id, a) for a source corolla x; this is mu
  Element mu(const Corolla& x, const Element& a) const;
  // [(X, phi, a)] |-> [(X, phi, sigma(a))] for sigma: op -> other
  Element induced(const Element& cls, const Corolla& c, const OpNatTrans& sigma, const PushforwardOp& other) const;

 private:
  FeynmanFunctor f_;
  OpPtr op_;
  int slack_;
};

std::shared_ptr<const PushforwardOp> pushforward_op(const FeynmanFunctor& f, OpPtr op, int slack = 4);

// f^O on decorated objects and morphisms.  Throws unstable_colimit when a
// needed value did not stabilize.
DecoratedObject apply_fO(const PushforwardOp& fo, const DecoratedObject& x);
DecoratedMorphism apply_fO(const PushforwardOp& fo, const DecoratedMorphism& m);

struct TerminalCheck {
  bool terminal = true;
  std::string witness;  // first corolla with more than one element
};

TerminalCheck is_terminal(const SetOp& o, const FeynmanPresentation& f, int max_flags, int max_genus = 0);

struct MinimalExtensionOptions {
  int max_flags = 6;
  int max_genus = 2;
  int slack = 4;
  // decorated variant: i^op, targets with |S| + 2g <= max_weight
  OpPtr op;
  int max_weight = 6;
};

Report minimal_extension_check(const FeynmanFunctor& i, const MinimalExtensionOptions& opt);

struct DecothmOptions {
  int max_flags = 6;
  int slack = 2;
  bool aggregates = true;  // also tensor words, not only corollas
  std::uint64_t seed = 1;
};

Report verify_decothm(const FeynmanPresentation& f, OpPtr o, const DecothmOptions& opt);

struct SquareOptions {
  int samples = 100;
  int slack = 4;
  int max_degree = 4;
  std::uint64_t seed = 1;
};

// f = i, sigma: O -> P.  Both squares, plus the pointwise triangle identity
// of the pushforward-pullback adjunction.
Report verify_square(const FeynmanFunctor& i, const OpNatTrans& sigma, const SquareOptions& opt);

}  // namespace feyncat

#endif
