#include "feyncat/setops.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <set>

#include "feyncat/canonical.hpp"
#include "feyncat/orders.hpp"

namespace feyncat {

namespace {

[[noreturn]] void domain_error(const std::string& what) { throw Error(ErrorKind::domain, what); }

std::vector<Element> sorted(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool same_set(std::vector<Label> a, std::vector<Label> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Cyclic successor of every source flag, given per-vertex orders by label.
std::vector<int> successor_map(const Aggregate& x, const std::vector<std::vector<Label>>& orders) {
  std::vector<int> next(x.flag_count(), -1);
  for (int u = 0; u < x.size(); ++u) {
    const auto& o = orders[u];
    if (static_cast<int>(o.size()) != x.degree(u)) domain_error("order does not cover corolla " + x[u].id);
    for (std::size_t i = 0; i < o.size(); ++i) {
      int a = x.index_of(o[i]), b = x.index_of(o[(i + 1) % o.size()]);
      if (a < 0 || x.vertex_of(a) != u) domain_error("order mentions foreign flag '" + o[i] + "'");
      next[a] = b;
    }
  }
  return next;
}

void require_tree(const GraphMorphism& phi, const std::string& who) {
  auto inv = ghost_invariants(phi);
  if (inv.b1[0] != 0 || inv.components[0] != 1) domain_error(who + " acts on trees only");
}

// Boundary walk of a tree fiber; returns the external source flags in order.
std::vector<int> tree_walk(const GraphMorphism& phi, const std::vector<int>& next) {
  std::vector<int> out;
  const Aggregate& x = phi.source();
  int start = -1;
  for (int f = 0; f < x.flag_count(); ++f)
    if (phi.partner(f) < 0) { start = f; break; }
  if (start < 0) return out;
  int h = start;
  int guard = 0;
  do {
    out.push_back(h);
    h = next[h];
    while (phi.partner(h) >= 0) {
      h = next[phi.partner(h)];
      if (++guard > 4 * x.flag_count() + 4) domain_error("boundary walk does not close");
    }
  } while (h != start);
  if (static_cast<int>(out.size()) != phi.target().flag_count()) domain_error("boundary walk misses flags");
  return out;
}

class TrivOp : public SetOp {
 public:
  std::string name() const override { return "Triv"; }
  std::vector<Element> elements(const Corolla&, const Element&) const override { return {"*"}; }
  bool contains(const Corolla&, const Element& e, const Element&) const override { return e == "*"; }
  Element act(const GraphMorphism&, const Tuple&, const Tuple&) const override { return "*"; }
};

class AssOp : public SetOp {
 public:
  std::string name() const override { return "Ass"; }
  std::string domain() const override { return "O"; }
  bool uses_base() const override { return true; }

  std::vector<Label> inputs_of(const Corolla& c, const Element& base) const {
    if (base.empty()) return c.flags;
    auto vals = DirSetOp::parse(base);
    std::vector<Label> in;
    for (const auto& l : c.flags) {
      auto it = vals.find(l);
      if (it == vals.end()) domain_error("root decoration misses flag '" + l + "'");
      if (it->second != "0") in.push_back(l);
    }
    return in;
  }
  std::vector<Element> elements(const Corolla& c, const Element& base) const override {
    std::vector<Element> out;
    for (const auto& o : linear_orders(inputs_of(c, base))) out.push_back(join(o, ','));
    return sorted(out);
  }
  bool contains(const Corolla& c, const Element& e, const Element& base) const override {
    return same_set(split(e, ','), inputs_of(c, base));
  }
  Element random_element(const Corolla& c, Rng& rng, const Element& base) const override {
    auto in = inputs_of(c, base);
    std::shuffle(in.begin(), in.end(), rng);
    return join(in, ',');
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base) const override {
    const Aggregate& x = phi.source();
    if (static_cast<int>(base.size()) != x.size()) domain_error("Ass needs root decorations");
    require_tree(phi, "Ass");
    std::vector<int> root(x.size(), -1);
    for (int u = 0; u < x.size(); ++u) {
      auto vals = DirSetOp::parse(base[u]);
      for (int f = x.first_flag(u); f < x.end_flag(u); ++f)
        if (vals.at(x.label(f)) == "0") {
          if (root[u] >= 0) domain_error("two roots at " + x[u].id);
          root[u] = f;
        }
      if (root[u] < 0) domain_error("no root at " + x[u].id);
    }
    int top = -1;
    for (int u = 0; u < x.size(); ++u)
      if (phi.partner(root[u]) < 0) {
        if (top >= 0) domain_error("fiber has two free roots");
        top = u;
      }
    if (top < 0) domain_error("fiber has no free root");
    std::vector<char> seen(x.size(), 0);
    std::vector<Label> out;
    std::function<void(int)> visit = [&](int u) {
      if (seen[u]) domain_error("cyclic grafting");
      seen[u] = 1;
      for (const auto& l : split(inputs[u], ',')) {
        int f = x.index_of(l);
        if (f < 0 || x.vertex_of(f) != u || f == root[u]) domain_error("bad linear order at " + x[u].id);
        int p = phi.partner(f);
        if (p < 0) {
          out.push_back(phi.target().label(phi.preimage(f)));
        } else {
          int w = x.vertex_of(p);
          if (p != root[w]) domain_error("input glued to a non-root flag");
          visit(w);
        }
      }
    };
    visit(top);
    return join(out, ',');
  }
};

class CycAssOp : public SetOp {
 public:
  std::string name() const override { return "CycAss"; }
  std::string domain() const override { return "C"; }
  std::vector<Element> elements(const Corolla& c, const Element&) const override {
    std::vector<Element> out;
    for (const auto& o : cyclic_orders(c.flags)) out.push_back(join(o, ','));
    return sorted(out);
  }
  bool contains(const Corolla& c, const Element& e, const Element&) const override {
    auto w = split(e, ',');
    return same_set(w, c.flags) && least_rotation(w) == w;
  }
  Element random_element(const Corolla& c, Rng& rng, const Element&) const override {
    auto w = c.flags;
    std::shuffle(w.begin(), w.end(), rng);
    return join(least_rotation(w), ',');
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const override {
    require_tree(phi, "CycAss");
    std::vector<std::vector<Label>> orders;
    for (const auto& e : inputs) orders.push_back(split(e, ','));
    auto walk = tree_walk(phi, successor_map(phi.source(), orders));
    std::vector<Label> out;
    for (int f : walk) out.push_back(phi.target().label(phi.preimage(f)));
    return join(least_rotation(out), ',');
  }
};

}  // namespace

SignedCyclic parse_signed(const Element& e) {
  SignedCyclic s;
  for (const auto& tok : split(e, ',')) {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) domain_error("bad signed token '" + tok + "'");
    s.order.push_back(tok.substr(0, tok.size() - 1));
    s.sign.push_back(tok.back() == '-');
  }
  return s;
}

Element canonical_signed(const SignedCyclic& s) {
  const std::size_t n = s.order.size();
  std::vector<std::string> w(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = s.order[i] + (s.sign[i] ? "-" : "+");
    r[n - 1 - i] = s.order[i] + (s.sign[i] ? "+" : "-");
  }
  return join(std::min(least_rotation(w), least_rotation(r)), ',');
}

namespace {

class CycDihedOp : public SetOp {
 public:
  std::string name() const override { return "CycDihed"; }
  std::string domain() const override { return "C"; }
  std::vector<Element> elements(const Corolla& c, const Element&) const override {
    std::vector<Element> out;
    const std::size_t n = c.flags.size();
    for (const auto& o : cyclic_orders(c.flags))
      for (unsigned m = 0; m < (1u << n); ++m) {
        // fixing the first sign picks one of the two reversal partners
        if (n > 0 && (m & 1u)) continue;
        SignedCyclic s{o, std::vector<int>(n)};
        for (std::size_t i = 0; i < n; ++i) s.sign[i] = (m >> i) & 1u;
        out.push_back(canonical_signed(s));
      }
    if (n == 0) out.push_back("");
    return sorted(out);
  }
  bool contains(const Corolla& c, const Element& e, const Element&) const override {
    try {
      auto s = parse_signed(e);
      return same_set(s.order, c.flags) && canonical_signed(s) == e;
    } catch (const Error&) {
      return false;
    }
  }
  Element random_element(const Corolla& c, Rng& rng, const Element&) const override {
    SignedCyclic s{c.flags, std::vector<int>(c.flags.size())};
    std::shuffle(s.order.begin(), s.order.end(), rng);
    for (auto& b : s.sign) b = static_cast<int>(rng() & 1u);
    return canonical_signed(s);
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const override {
    require_tree(phi, "CycDihed");
    const Aggregate& x = phi.source();
    std::vector<SignedCyclic> in;
    std::vector<int> sign(x.flag_count(), 0);
    for (int u = 0; u < x.size(); ++u) {
      in.push_back(parse_signed(inputs[u]));
      for (std::size_t i = 0; i < in[u].order.size(); ++i) {
        int f = x.index_of(in[u].order[i]);
        if (f < 0 || x.vertex_of(f) != u) domain_error("signed order mentions foreign flag");
        sign[f] = in[u].sign[i];
      }
    }
    // orientation per vertex so that glued flags carry equal effective signs
    std::vector<int> o(x.size(), -1);
    std::vector<int> stack{0};
    if (x.size()) o[0] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int f = x.first_flag(u); f < x.end_flag(u); ++f) {
        int p = phi.partner(f);
        if (p < 0) continue;
        int w = x.vertex_of(p);
        int want = sign[f] ^ o[u] ^ sign[p];
        if (o[w] < 0) {
          o[w] = want;
          stack.push_back(w);
        }
      }
    }
    std::vector<std::vector<Label>> orders;
    for (int u = 0; u < x.size(); ++u) {
      auto ord = in[u].order;
      if (o[u]) std::reverse(ord.begin(), ord.end());
      orders.push_back(std::move(ord));
    }
    auto walk = tree_walk(phi, successor_map(x, orders));
    SignedCyclic out;
    for (int f : walk) {
      out.order.push_back(phi.target().label(phi.preimage(f)));
      out.sign.push_back(sign[f] ^ o[x.vertex_of(f)]);
    }
    return canonical_signed(out);
  }
};

}  // namespace

GenusOp::GenusOp(int cap) : cap_(cap) {
  if (cap < 0) throw Error(ErrorKind::domain, "GenusN cap must be nonnegative");
}

std::vector<Element> GenusOp::elements(const Corolla&, const Element&) const {
  std::vector<Element> out;
  for (int g = 0; g <= cap_; ++g) out.push_back(std::to_string(g));
  return sorted(out);
}

bool GenusOp::contains(const Corolla&, const Element& e, const Element&) const {
  if (e.empty() || e.size() > 9 || !std::all_of(e.begin(), e.end(), ::isdigit)) return false;
  return std::stoi(e) <= cap_ && std::to_string(std::stoi(e)) == e;
}

Element GenusOp::act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const {
  long long g = 0;
  for (const auto& e : inputs) g += std::stoll(e);
  int chi = phi.source().size() - phi.ghost_edge_count();
  g += 1 - chi;
  if (g < 0) domain_error("genus sum plus (1 - chi) is negative on a disconnected fiber");
  if (g > cap_) {
    ++saturated_;
    g = cap_;
  }
  return std::to_string(g);
}

OpPtr genus_op(int cap) { return std::make_shared<GenusOp>(cap); }

DirSetOp::DirSetOp(DirSetSpec spec, std::string name) : spec_(std::move(spec)), name_(std::move(name)) {
  std::sort(spec_.values.begin(), spec_.values.end());
  for (const auto& v : spec_.values) {
    if (v.empty() || v.find_first_of(",;=") != std::string::npos) throw Error(ErrorKind::domain, "bad DirSet value");
    if (!spec_.involution.count(v)) spec_.involution[v] = v;
  }
  for (const auto& [a, b] : spec_.involution)
    if (spec_.involution.count(b) == 0 || spec_.involution.at(b) != a)
      throw Error(ErrorKind::domain, "DirSet map is not an involution");
  if (spec_.basepoint && !spec_.involution.count(*spec_.basepoint))
    throw Error(ErrorKind::domain, "DirSet basepoint not among values");
}

std::string DirSetOp::bar(const std::string& x) const { return spec_.involution.at(x); }

std::map<Label, std::string> DirSetOp::parse(const Element& e) {
  std::map<Label, std::string> out;
  for (const auto& tok : split(e, ',')) {
    auto k = tok.find('=');
    if (k == std::string::npos) domain_error("bad DirSet token '" + tok + "'");
    out[tok.substr(0, k)] = tok.substr(k + 1);
  }
  return out;
}

std::vector<Element> DirSetOp::elements(const Corolla& c, const Element&) const {
  std::vector<Element> out;
  const std::size_t n = c.flags.size(), k = spec_.values.size();
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    int points = 0;
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = spec_.values[digit[i]];
      points += spec_.basepoint && v == *spec_.basepoint;
      toks.push_back(c.flags[i] + "=" + v);
    }
    if (!spec_.basepoint || points == 1) out.push_back(join(toks, ','));
    std::size_t i = 0;
    while (i < n && ++digit[i] == k) digit[i++] = 0;
    if (i == n) break;
  }
  return sorted(out);
}

bool DirSetOp::contains(const Corolla& c, const Element& e, const Element&) const {
  std::vector<std::string> toks = split(e, ',');
  if (toks.size() != c.flags.size()) return false;
  int points = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto k = toks[i].find('=');
    if (k == std::string::npos || toks[i].substr(0, k) != c.flags[i]) return false;
    std::string v = toks[i].substr(k + 1);
    if (!spec_.involution.count(v)) return false;
    points += spec_.basepoint && v == *spec_.basepoint;
  }
  return !spec_.basepoint || points == 1;
}

Element DirSetOp::random_element(const Corolla& c, Rng& rng, const Element&) const {
  std::vector<std::string> toks;
  std::size_t root = c.flags.empty() ? 0 : rng() % c.flags.size();
  for (std::size_t i = 0; i < c.flags.size(); ++i) {
    std::string v = spec_.values[rng() % spec_.values.size()];
    if (spec_.basepoint) {
      if (i == root) v = *spec_.basepoint;
      else
        while (v == *spec_.basepoint) v = spec_.values[rng() % spec_.values.size()];
    }
    toks.push_back(c.flags[i] + "=" + v);
  }
  return join(toks, ',');
}

Element DirSetOp::act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const {
  const Aggregate& x = phi.source();
  std::vector<std::map<Label, std::string>> vals;
  for (const auto& e : inputs) vals.push_back(parse(e));
  std::vector<std::string> toks;
  const Aggregate& y = phi.target();
  for (int t = 0; t < y.flag_count(); ++t) {
    int s = phi.flag_image(t);
    toks.push_back(y.label(t) + "=" + vals[x.vertex_of(s)].at(x.label(s)));
  }
  return join(toks, ',');
}

std::shared_ptr<const DirSetOp> direction_op() {
  static auto op = std::make_shared<DirSetOp>(DirSetSpec{{"0", "1"}, {{"0", "1"}, {"1", "0"}}, {}}, "Dir");
  return op;
}

std::shared_ptr<const DirSetOp> rooted_op() {
  static auto op = std::make_shared<DirSetOp>(DirSetSpec{{"0", "1"}, {{"0", "1"}, {"1", "0"}}, "0"}, "Rooted");
  return op;
}

Element encode_pair(const Element& a, const Element& b) { return std::to_string(a.size()) + ":" + a + b; }

std::pair<Element, Element> decode_pair(const Element& e) {
  auto k = e.find(':');
  if (k == std::string::npos) domain_error("bad pair encoding");
  std::size_t n = std::stoul(e.substr(0, k));
  if (k + 1 + n > e.size()) domain_error("bad pair encoding");
  return {e.substr(k + 1, n), e.substr(k + 1 + n)};
}

namespace {

class DependentProduct : public SetOp {
 public:
  DependentProduct(OpPtr a, OpPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return a_->name() + "*" + b_->name(); }
  std::string domain() const override { return b_->domain(); }
  bool uses_base() const override { return a_->uses_base(); }
  std::vector<Element> elements(const Corolla& c, const Element& base) const override {
    std::vector<Element> out;
    for (const auto& x : a_->elements(c, base))
      for (const auto& y : b_->elements(c, x)) out.push_back(encode_pair(x, y));
    return sorted(out);
  }
  bool contains(const Corolla& c, const Element& e, const Element& base) const override {
    try {
      auto [x, y] = decode_pair(e);
      return a_->contains(c, x, base) && b_->contains(c, y, x);
    } catch (const Error&) {
      return false;
    }
  }
  Element random_element(const Corolla& c, Rng& rng, const Element& base) const override {
    Element x = a_->random_element(c, rng, base);
    return encode_pair(x, b_->random_element(c, rng, x));
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base) const override {
    Tuple xs, ys;
    for (const auto& e : inputs) {
      auto [x, y] = decode_pair(e);
      xs.push_back(std::move(x));
      ys.push_back(std::move(y));
    }
    return encode_pair(a_->act(phi, xs, base), b_->act(phi, ys, xs));
  }

 private:
  OpPtr a_, b_;
};

// Sets indexed by flag count; generator actions looked up by the canonical
// certificate of the one-target morphism with inputs in canonical order.
class TableOp : public SetOp {
 public:
  std::string name_;
  std::string domain_ = "G";
  std::map<int, std::vector<Element>> sets;
  std::map<std::pair<std::string, Tuple>, Element> table;

  std::string name() const override { return name_; }
  std::string domain() const override { return domain_; }
  std::vector<Element> elements(const Corolla& c, const Element&) const override {
    auto it = sets.find(c.degree());
    return it == sets.end() ? std::vector<Element>{} : it->second;
  }
  static std::pair<std::string, Tuple> key(const GraphMorphism& phi, const Tuple& inputs) {
    auto cf = canonical_form(phi);
    Tuple in(inputs.size());
    for (int u = 0; u < phi.source().size(); ++u) {
      // canonical source vertex of u: the corolla holding u's first flag, or
      // flagless corollas in order
      in[cf.source_vertex_witness[u]] = inputs[u];
    }
    return {cf.certificate, in};
  }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const override {
    if (phi.source().size() == 1 && phi.ghost_edge_count() == 0) return inputs[0];
    auto it = table.find(key(phi, inputs));
    if (it == table.end()) domain_error(name_ + ": no table entry for this morphism");
    return it->second;
  }
};

}  // namespace

OpPtr dependent_product(OpPtr first, OpPtr second) {
  return std::make_shared<DependentProduct>(std::move(first), std::move(second));
}

OpPtr table_op_from_json(const std::string& text) {
  using nlohmann::json;
  auto op = std::make_shared<TableOp>();
  try {
    json j = json::parse(text);
    op->name_ = j.value("name", "Table");
    op->domain_ = j.value("domain", "G");
    for (auto& [k, v] : j.at("sets").items()) op->sets[std::stoi(k)] = sorted(v.get<std::vector<std::string>>());
    if (j.contains("actions"))
      for (const auto& a : j.at("actions")) {
        std::map<Label, Label> fm = a.at("morphism").at("flag_map").get<std::map<std::string, std::string>>();
        std::vector<std::pair<Label, Label>> edges;
        for (const auto& e : a.at("morphism").at("ghost_edges"))
          edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        auto agg = [](const json& x) {
          std::vector<Corolla> cs;
          for (const auto& c : x.at("corollas")) {
            Corolla k;
            k.flags = c.at("flags").get<std::vector<std::string>>();
            if (c.contains("genus")) k.genus = c.at("genus").get<int>();
            cs.push_back(std::move(k));
          }
          return Aggregate(std::move(cs));
        };
        GraphMorphism phi = GraphMorphism::from_labels(agg(a.at("morphism").at("source")),
                                                       agg(a.at("morphism").at("target")), fm,
                                                       a.at("morphism").at("vertex_map").get<std::vector<int>>(), edges);
        op->table[TableOp::key(phi, a.at("inputs").get<Tuple>())] = a.at("output").get<std::string>();
      }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  return op;
}

bool SetOp::contains(const Corolla& c, const Element& e, const Element& base) const {
  auto els = elements(c, base);
  return std::binary_search(els.begin(), els.end(), e);
}

Element SetOp::random_element(const Corolla& c, Rng& rng, const Element& base) const {
  auto els = elements(c, base);
  if (els.empty()) domain_error(name() + " has no elements on corolla " + c.id);
  return els[rng() % els.size()];
}

OpPtr terminal_op() {
  static OpPtr op = std::make_shared<TrivOp>();
  return op;
}

std::vector<std::string> builtin_op_names() {
  return {"Triv", "Ass", "CycAss", "CycDihed", "GenusN", "DirSet", "Rooted"};
}

OpPtr builtin_op(const std::string& spec) {
  std::string name = spec, args;
  auto k = spec.find('(');
  if (k != std::string::npos) {
    if (spec.back() != ')') throw Error(ErrorKind::parse, "bad op spec '" + spec + "'");
    name = spec.substr(0, k);
    args = spec.substr(k + 1, spec.size() - k - 2);
  }
  std::map<std::string, std::string> kv;
  for (const auto& tok : split(args, ',')) {
    auto e = tok.find('=');
    if (e == std::string::npos) throw Error(ErrorKind::parse, "bad op parameter '" + tok + "'");
    kv[tok.substr(0, e)] = tok.substr(e + 1);
  }
  if (name == "Triv") return terminal_op();
  if (name == "Ass") return std::make_shared<AssOp>();
  if (name == "CycAss") return std::make_shared<CycAssOp>();
  if (name == "CycDihed") return std::make_shared<CycDihedOp>();
  if (name == "GenusN") {
    if (!kv.count("cap")) throw Error(ErrorKind::domain, "GenusN needs an explicit cap");
    return genus_op(std::stoi(kv["cap"]));
  }
  if (name == "Rooted") return rooted_op();
  if (name == "DirSet") {
    if (kv.empty()) return direction_op();
    DirSetSpec s;
    s.values = split(kv.count("values") ? kv["values"] : "0/1", '/');
    if (kv.count("involution")) {
      auto img = split(kv["involution"], '/');
      if (img.size() != s.values.size()) throw Error(ErrorKind::domain, "involution length mismatch");
      for (std::size_t i = 0; i < img.size(); ++i) s.involution[s.values[i]] = img[i];
    }
    if (kv.count("basepoint")) s.basepoint = kv["basepoint"];
    return std::make_shared<DirSetOp>(std::move(s));
  }
  throw Error(ErrorKind::unknown_name, "no built-in op '" + name + "'");
}

std::vector<Tuple> eval_object(const SetOp& o, const Aggregate& x, const Tuple& base) {
  std::vector<Tuple> out{Tuple{}};
  for (int v = 0; v < x.size(); ++v) {
    auto els = o.elements(x[v], base.empty() ? Element{} : base[v]);
    std::vector<Tuple> next;
    next.reserve(out.size() * els.size());
    for (const auto& t : out)
      for (const auto& e : els) {
        next.push_back(t);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

long long eval_object_size(const SetOp& o, const Aggregate& x, const Tuple& base) {
  long long n = 1;
  for (int v = 0; v < x.size(); ++v) n *= static_cast<long long>(o.elements(x[v], base.empty() ? Element{} : base[v]).size());
  return n;
}

bool in_eval_object(const SetOp& o, const Aggregate& x, const Tuple& a, const Tuple& base) {
  if (static_cast<int>(a.size()) != x.size()) return false;
  for (int v = 0; v < x.size(); ++v)
    if (!o.contains(x[v], a[v], base.empty() ? Element{} : base[v])) return false;
  return true;
}

Tuple eval_morphism(const SetOp& o, const GraphMorphism& phi, const Tuple& a, const Tuple& base) {
  if (!in_eval_object(o, phi.source(), a, base))
    throw Error(ErrorKind::domain, "decoration not in " + o.name() + "(source)");
  Tuple out;
  for (int v = 0; v < phi.target().size(); ++v) {
    GraphMorphism f = restrict_to(phi, v);
    Tuple in, b;
    for (int u : phi.fiber(v)) {
      in.push_back(a[u]);
      if (!base.empty()) b.push_back(base[u]);
    }
    out.push_back(o.act(f, in, b));
  }
  return out;
}

Element relabel(const SetOp& o, const Corolla& from, const Element& e, const std::map<Label, Label>& m,
                const Element& base) {
  Aggregate x({from});
  Aggregate y = x.relabeled(m);
  std::map<Label, Label> fm;
  for (const auto& l : from.flags) fm[y.label(x.index_of(l))] = l;
  GraphMorphism iso = GraphMorphism::from_labels(x, y, fm, {0}, {});
  return o.act(iso, {e}, base.empty() ? Tuple{} : Tuple{base});
}

Tuple OpNatTrans::apply(const Aggregate& x, const Tuple& a) const {
  Tuple out;
  for (int v = 0; v < x.size(); ++v) out.push_back(component(x[v], a[v]));
  return out;
}

OpNatTrans identity_nat(OpPtr o) {
  return OpNatTrans{"id", o, o, [](const Corolla&, const Element& e) { return e; }};
}

OpNatTrans to_terminal(OpPtr o) {
  return OpNatTrans{"to-terminal", o, terminal_op(), [](const Corolla&, const Element&) { return Element("*"); }};
}

OpNatTrans cycass_to_cycdihed() {
  return OpNatTrans{"CycAss->CycDihed", builtin_op("CycAss"), builtin_op("CycDihed"),
                    [](const Corolla&, const Element& e) {
                      SignedCyclic s{split(e, ','), {}};
                      s.sign.assign(s.order.size(), 0);
                      return canonical_signed(s);
                    }};
}

}  // namespace feyncat
