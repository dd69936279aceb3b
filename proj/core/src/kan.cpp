#include "feyncat/kan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "feyncat/descriptor.hpp"
#include "feyncat/orders.hpp"

namespace feyncat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

std::string encode_tuple(const Tuple& t) { return join(t, '\n'); }

Tuple decode_tuple(const std::string& s, int n) {
  if (n == 0) return {};
  if (n == 1) return {s};
  return split(s, '\n');
}

std::string corolla_key(const Corolla& c) {
  return join(c.flags, ',') + "|" + (c.genus ? std::to_string(*c.genus) : "-");
}

OpPtr layered_op(const FeynmanFunctor& f, const OpPtr& p) {
  OpPtr dir = f.source.decorated() ? OpPtr(f.source.decoration) : nullptr;
  switch (f.kind) {
    case FunctorKind::identity:
      return dir ? dependent_product(dir, p) : p;
    case FunctorKind::inclusion:
      return p;
    case FunctorKind::forget_direction:
      return dependent_product(dir, p);
    case FunctorKind::forget: {
      OpPtr inner = dependent_product(f.op, p);
      return dir ? dependent_product(dir, inner) : inner;
    }
    case FunctorKind::decorated_inclusion:
      return dependent_product(f.op, p);
  }
  return p;
}

FeynmanFunctor underlying_inclusion(const FeynmanFunctor& f) {
  FeynmanFunctor i = f;
  i.kind = FunctorKind::inclusion;
  i.name = "i:" + f.source.name + "->" + f.target.name;
  i.op = nullptr;
  return i;
}

// A morphism split once into its one-target pieces; pieces that are
// identities are skipped when acting.
struct Prepared {
  std::vector<GraphMorphism> parts;
  std::vector<std::vector<int>> fibers;
  std::vector<char> identity;
  mutable std::vector<std::unordered_map<std::string, Element>> memo;

  explicit Prepared(const GraphMorphism& m) {
    for (int v = 0; v < m.target().size(); ++v) {
      parts.push_back(restrict_to(m, v));
      fibers.push_back(m.fiber(v));
      const GraphMorphism& p = parts.back();
      bool id = p.source().size() == 1 && p.ghost_edge_count() == 0;
      for (int t = 0; id && t < p.target().flag_count(); ++t)
        id = p.source().label(p.flag_image(t)) == p.target().label(t) && p.flag_image(t) == t;
      identity.push_back(id);
    }
    memo.resize(parts.size());
  }
  Tuple apply(const SetOp& o, const Tuple& a) const {
    Tuple out;
    out.reserve(parts.size());
    for (std::size_t v = 0; v < parts.size(); ++v) {
      if (identity[v]) {
        out.push_back(a[fibers[v][0]]);
        continue;
      }
      Tuple in;
      for (int u : fibers[v]) in.push_back(a[u]);
      std::string key = join(in, '\n');
      auto [it, fresh] = memo[v].try_emplace(std::move(key));
      if (fresh) it->second = o.act(parts[v], in, {});
      out.push_back(it->second);
    }
    return out;
  }
};

bool same_dir(const Element& a, const Element& b) { return DirSetOp::parse(a) == DirSetOp::parse(b); }

}  // namespace

std::vector<int> partition(int nodes, const std::vector<std::pair<int, int>>& merges) {
  UnionFind uf(nodes);
  for (auto [a, b] : merges) uf.unite(a, b);
  std::vector<int> id(nodes, -1), out(nodes);
  int next = 0;
  for (int v = 0; v < nodes; ++v) {
    int r = uf.find(v);
    if (id[r] < 0) id[r] = next++;
    out[v] = id[r];
  }
  return out;
}

Element encode_node(const FeynmanFunctor& f, const NodeParts& p) {
  const bool dir = f.source.decorated();
  switch (f.kind) {
    case FunctorKind::identity:
      return dir ? encode_pair(p.direction, p.element) : p.element;
    case FunctorKind::inclusion:
      return p.element;
    case FunctorKind::forget_direction:
      return encode_pair(p.direction, p.element);
    case FunctorKind::forget: {
      Element inner = encode_pair(p.decoration, p.element);
      return dir ? encode_pair(p.direction, inner) : inner;
    }
    case FunctorKind::decorated_inclusion:
      return encode_pair(p.decoration, p.element);
  }
  return p.element;
}

NodeParts decode_node(const FeynmanFunctor& f, const Element& e) {
  NodeParts p;
  const bool dir = f.source.decorated();
  Element rest = e;
  if (dir && f.kind != FunctorKind::inclusion && f.kind != FunctorKind::decorated_inclusion) {
    std::tie(p.direction, rest) = decode_pair(e);
  }
  if (f.kind == FunctorKind::forget || f.kind == FunctorKind::decorated_inclusion) {
    std::tie(p.decoration, p.element) = decode_pair(rest);
  } else {
    p.element = rest;
  }
  return p;
}

int default_bound(const FeynmanFunctor& f, const Corolla& c, int slack) {
  int w = c.degree();
  if (f.adds_genus() && c.genus) w += 2 * *c.genus;
  return std::max(w, 1) + slack;
}

CorollaPushforward::CorollaPushforward(Spec spec) : spec_(std::move(spec)) {
  const FeynmanFunctor& f = spec_.f;
  if (spec_.bound < default_bound(f, spec_.target, 0))
    throw Error(ErrorKind::truncation, "bound below the least comma object weight");
  catalog_ = comma_catalog(CommaShape::of(f), spec_.target, spec_.bound);
  eop_ = layered_op(f, spec_.op);
  if (f.kind == FunctorKind::decorated_inclusion) {
    inner_ = pushforward_corolla(underlying_inclusion(f), f.op, spec_.target, spec_.bound);
    inner_class_ = inner_->class_index(spec_.target_dec);
    if (inner_class_ < 0)
      throw Error(ErrorKind::invalid_object, "'" + spec_.target_dec + "' is not a class of the pushforward");
  }
  if (f.target.decorated() && !f.target.decoration->contains(spec_.target, spec_.target_dir))
    throw Error(ErrorKind::invalid_object, "target needs a valid " + f.target.decoration->name() + " decoration");

  const auto& reps = catalog_->reps();
  const int nr = static_cast<int>(reps.size());
  elements_.resize(nr);
  offset_.assign(nr + 1, 0);
  for (int r = 0; r < nr; ++r) {
    for (const auto& t : eval_object(*eop_, reps[r].source))
      if (keep(r, t)) elements_[r].push_back(encode_tuple(t));
    std::sort(elements_[r].begin(), elements_[r].end());
    offset_[r + 1] = offset_[r] + static_cast<long long>(elements_[r].size());
  }
  if (offset_[nr] > 50'000'000) throw Error(ErrorKind::truncation, "comma category too large for the bound");
  node_rep_.resize(offset_[nr]);
  for (int r = 0; r < nr; ++r)
    for (long long i = offset_[r]; i < offset_[r + 1]; ++i) node_rep_[i] = r;

  const bool directed_source = f.source.decorated();
  for (int r = 0; r < nr; ++r) {
    const CommaRep& rep = reps[r];
    std::vector<Prepared> autos, steps;
    for (const auto& a : rep.automorphisms) autos.emplace_back(a);
    for (const auto& st : rep.steps) steps.emplace_back(st.xi);
    const int n = rep.source.size();
    for (long long i = 0; i < static_cast<long long>(elements_[r].size()); ++i) {
      Tuple t = decode_tuple(elements_[r][i], n);
      const int from = static_cast<int>(offset_[r] + i);
      auto link = [&](int r2, const Prepared& m) {
        long long to = node_id(r2, m.apply(*eop_, t));
        if (to < 0) {
          ++dangling_;
          return;
        }
        merges_.emplace_back(from, static_cast<int>(to));
        merge_level_.push_back(rep.weight);
      };
      for (const auto& a : autos) link(r, a);
      Tuple dirs = directed_source ? directions(t) : Tuple{};
      for (std::size_t k = 0; k < steps.size(); ++k) {
        if (directed_source && !f.source.rejection(rep.steps[k].xi, dirs).empty()) continue;
        link(rep.steps[k].target, steps[k]);
      }
    }
  }

  const int nn = static_cast<int>(node_rep_.size());
  node_class_ = partition(nn, merges_);
  int nc = nn ? *std::max_element(node_class_.begin(), node_class_.end()) + 1 : 0;
  classes_.assign(nc, {});
  for (int v = nn - 1; v >= 0; --v) {
    auto& c = classes_[node_class_[v]];
    ++c.size;
    c.rep = node_rep_[v];
    c.element = decode_tuple(elements_[c.rep][v - offset_[c.rep]], reps[c.rep].source.size());
  }
  for (int c = 0; c < nc; ++c) {
    auto& k = classes_[c];
    k.key = reps[k.rep].descriptor + " @ " + join(k.element, ';');
    class_index_[k.key] = c;
  }

  // three-point stabilization: classes at B-2 -> B-1 -> B must be bijections
  const int b = spec_.bound;
  auto weight_of = [&](int v) { return reps[node_rep_[v]].weight; };
  std::vector<UnionFind> ufs;
  for (int level : {b - 2, b - 1, b}) {
    UnionFind uf(nn);
    for (std::size_t k = 0; k < merges_.size(); ++k)
      if (merge_level_[k] <= level) uf.unite(merges_[k].first, merges_[k].second);
    long long count = 0;
    for (int v = 0; v < nn; ++v) count += weight_of(v) <= level && uf.find(v) == v;
    levels_.push_back(count);
    ufs.push_back(std::move(uf));
  }
  stabilized_ = true;
  for (int step = 0; step < 2; ++step) {
    const int level = b - 2 + step;
    std::map<int, int> image;
    std::set<int> hit;
    for (int v = 0; v < nn; ++v) {
      if (weight_of(v) > level) continue;
      int lo = ufs[step].find(v), hi = ufs[step + 1].find(v);
      auto [it, fresh] = image.emplace(lo, hi);
      if (fresh && !hit.insert(hi).second) stabilized_ = false;
    }
    if (static_cast<long long>(hit.size()) != levels_[step + 1]) stabilized_ = false;
  }
}

Tuple CorollaPushforward::directions(const Tuple& e) const {
  Tuple out;
  for (const auto& x : e) out.push_back(decode_node(spec_.f, x).direction);
  return out;
}

bool CorollaPushforward::keep(int r, const Tuple& e) const {
  const FeynmanFunctor& f = spec_.f;
  const CommaRep& rep = catalog_->reps()[r];
  if (f.target.decorated() && f.kind != FunctorKind::forget_direction) {
    Tuple dirs = directions(e);
    if (!f.target.rejection(rep.arrow, dirs).empty()) return false;
    Tuple td = eval_morphism(*f.target.decoration, rep.arrow, dirs);
    return td.size() == 1 && same_dir(td[0], spec_.target_dir);
  }
  if (f.kind == FunctorKind::decorated_inclusion) {
    Tuple o;
    for (const auto& x : e) o.push_back(decode_node(f, x).decoration);
    return inner_->class_of(r, o) == inner_class_;
  }
  return true;
}

int CorollaPushforward::class_index(const std::string& key) const {
  auto it = class_index_.find(key);
  return it == class_index_.end() ? -1 : it->second;
}

long long CorollaPushforward::node_id(int rep, const Tuple& element) const {
  const auto& v = elements_[rep];
  std::string k = encode_tuple(element);
  auto it = std::lower_bound(v.begin(), v.end(), k);
  if (it == v.end() || *it != k) return -1;
  return offset_[rep] + (it - v.begin());
}

int CorollaPushforward::class_of(int rep, const Tuple& element) const {
  long long id = node_id(rep, element);
  return id < 0 ? -1 : node_class_[id];
}

int CorollaPushforward::class_of(const Aggregate& x, const GraphMorphism& phi, const Tuple& element) const {
  auto loc = catalog_->locate(x, phi);
  if (loc.rep < 0) return -1;
  return class_of(loc.rep, eval_morphism(*eop_, loc.iso, element));
}

std::pair<int, Tuple> CorollaPushforward::node(long long id) const {
  int r = node_rep_[id];
  return {r, decode_tuple(elements_[r][id - offset_[r]], catalog_->reps()[r].source.size())};
}

CommaObject CorollaPushforward::comma_object(long long id) const {
  auto [r, t] = node(id);
  const CommaRep& rep = catalog_->reps()[r];
  CommaObject o{rep.source, rep.arrow, {}, rep.weight};
  for (const auto& e : t) o.parts.push_back(decode_node(spec_.f, e));
  return o;
}

long long CorollaPushforward::count_morphisms(int from_rep, const Tuple& e, int to_rep, const Tuple& t) const {
  const CommaRep& rep = catalog_->reps()[from_rep];
  const Aggregate& x = rep.source;
  auto edges = rep.arrow.ghost_edges();
  const int ne = static_cast<int>(edges.size());
  const FeynmanFunctor& f = spec_.f;
  Tuple dirs = f.source.decorated() ? directions(e) : Tuple{};
  // the orbit of t under Aut(target rep) and the size of that group
  const CommaRep& trep = catalog_->reps()[to_rep];
  std::set<std::string> orbit{encode_tuple(t)};
  std::deque<Tuple> todo{t};
  while (!todo.empty()) {
    Tuple cur = todo.front();
    todo.pop_front();
    for (const auto& s : trep.automorphisms) {
      Tuple nx = eval_morphism(*eop_, s, cur);
      if (orbit.insert(encode_tuple(nx)).second) todo.push_back(nx);
    }
  }
  const int nv = trep.source.size(), nf = trep.source.flag_count();
  std::set<std::vector<int>> group;
  std::vector<int> id(nv + nf);
  std::iota(id.begin(), id.end(), 0);
  group.insert(id);
  std::deque<std::vector<int>> q{id};
  std::vector<std::vector<int>> gens;
  for (const auto& s : trep.automorphisms) {
    std::vector<int> p(nv + nf);
    for (int u = 0; u < nv; ++u) p[u] = s.vertex_image(u);
    for (int tf = 0; tf < nf; ++tf) p[nv + s.flag_image(tf)] = nv + tf;
    gens.push_back(std::move(p));
  }
  while (!q.empty() && group.size() < 100000) {
    auto g = q.front();
    q.pop_front();
    for (const auto& h : gens) {
      std::vector<int> c(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) c[i] = h[g[i]];
      if (group.insert(c).second) q.push_back(std::move(c));
    }
  }
  const long long stabilizer = static_cast<long long>(group.size()) / static_cast<long long>(orbit.size());

  long long count = 0;
  const FeynmanPresentation& src = f.source;
  for (unsigned mask = 0; mask < (1u << ne); ++mask) {
    UnionFind uf(x.size());
    std::vector<std::pair<Label, Label>> glued, rest;
    for (int k = 0; k < ne; ++k) {
      auto [a, b] = edges[k];
      if (mask >> k & 1u) {
        uf.unite(x.vertex_of(a), x.vertex_of(b));
        glued.emplace_back(x.label(a), x.label(b));
      } else {
        rest.emplace_back(x.label(a), x.label(b));
      }
    }
    std::map<int, int> block;
    std::vector<int> vm(x.size());
    for (int u = 0; u < x.size(); ++u) {
      int root = uf.find(u);
      auto it = block.emplace(root, static_cast<int>(block.size())).first;
      vm[u] = it->second;
    }
    std::vector<Corolla> cs(block.size());
    std::vector<int> vcount(block.size(), 0), ecount(block.size(), 0), gsum(block.size(), 0);
    for (int u = 0; u < x.size(); ++u) {
      ++vcount[vm[u]];
      gsum[vm[u]] += x[u].genus.value_or(0);
    }
    for (int k = 0; k < ne; ++k)
      if (mask >> k & 1u) ++ecount[vm[x.vertex_of(edges[k].first)]];
    for (int fl = 0; fl < x.flag_count(); ++fl) {
      bool ghost = false;
      for (int k = 0; k < ne; ++k)
        if ((mask >> k & 1u) && (edges[k].first == fl || edges[k].second == fl)) ghost = true;
      if (!ghost) cs[vm[x.vertex_of(fl)]].flags.push_back(x.label(fl));
    }
    for (std::size_t b = 0; b < cs.size(); ++b) {
      cs[b].id = "q" + std::to_string(b);
      if (x.genus_marked() && x.size()) cs[b].genus = gsum[b] + 1 - (vcount[b] - ecount[b]);
    }
    Aggregate y(std::move(cs));
    std::map<Label, Label> fm;
    for (const auto& l : y.labels()) fm[l] = l;
    GraphMorphism xi = GraphMorphism::from_labels(x, y, fm, vm, glued);
    if (!src.rejection(xi, dirs).empty()) continue;
    std::map<Label, Label> tm;
    for (const auto& l : spec_.target.flags) tm[l] = l;
    GraphMorphism psi = GraphMorphism::from_labels(f.adds_genus() ? y.with_genus(0) : y, catalog_->target_object(),
                                                   tm, std::vector<int>(y.size(), 0), rest);
    auto loc = catalog_->locate(y, psi);
    if (loc.rep != to_rep) continue;
    Tuple moved = eval_morphism(*eop_, compose(loc.iso, xi), e);
    if (orbit.count(encode_tuple(moved))) count += stabilizer;
  }
  return count;
}

TerminalResult CorollaPushforward::terminal(int cls) const {
  TerminalResult res;
  const auto& reps = catalog_->reps();
  const FeynmanFunctor& f = spec_.f;
  const bool directed = f.source.decorated();
  // nodes with no elementary morphism out are only reached by isomorphisms,
  // so a weakly terminal object exists iff those sinks form one Aut-orbit
  std::vector<char> has_step(node_rep_.size(), 0);
  for (long long v = 0; v < node_count(); ++v) {
    if (node_class_[v] != cls) continue;
    auto [r, t] = node(v);
    Tuple dirs = directed ? directions(t) : Tuple{};
    for (const auto& st : reps[r].steps)
      if (!directed || f.source.rejection(st.xi, dirs).empty()) has_step[v] = 1;
  }
  std::vector<long long> sinks;
  for (long long v = 0; v < node_count(); ++v)
    if (node_class_[v] == cls && !has_step[v]) sinks.push_back(v);
  if (sinks.empty()) {
    res.note = "no sink inside the bound";
    return res;
  }
  // Aut-orbit of the first sink
  UnionFind uf(static_cast<int>(node_count()));
  for (std::size_t k = 0; k < merges_.size(); ++k)
    if (node_rep_[merges_[k].first] == node_rep_[merges_[k].second]) uf.unite(merges_[k].first, merges_[k].second);
  int orbit = uf.find(static_cast<int>(sinks[0]));
  std::set<int> orbits;
  for (long long s : sinks) orbits.insert(uf.find(static_cast<int>(s)));
  auto [tr, tt] = node(sinks[0]);
  res.rep = tr;
  res.element = tt;
  if (orbits.size() != 1 || uf.find(static_cast<int>(sinks.back())) != orbit) {
    res.note = std::to_string(orbits.size()) + " non-isomorphic sink objects";
    return res;
  }
  res.weak = true;
  if (!f.source.cond.connected) {
    res.note = "strictness not evaluated for disconnected fibers";
    return res;
  }
  res.strict = true;
  for (long long v = 0; v < node_count() && res.strict; ++v) {
    if (node_class_[v] != cls) continue;
    auto [r, t] = node(v);
    if (reps[r].arrow.ghost_edge_count() > 12) {
      res.strict = false;
      res.note = "strictness not evaluated (too many ghost edges)";
      break;
    }
    long long m = count_morphisms(r, t, tr, tt);
    if (m != 1) {
      res.strict = false;
      res.note = std::to_string(m) + " morphisms from " + reps[r].descriptor + " @ " + join(t, ';');
    }
  }
  return res;
}

std::shared_ptr<const CorollaPushforward> pushforward_corolla(const FeynmanFunctor& f, OpPtr op, const Corolla& c,
                                                              int bound, const Element& target_dir,
                                                              const Element& target_dec) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CorollaPushforward>> cache;
  if (!op) op = terminal_op();
  Corolla tc = c;
  tc.id = "t";
  std::string key = f.name + "#" + op->name() + "@" + std::to_string(reinterpret_cast<std::uintptr_t>(op.get())) +
                    "#" + (f.op ? std::to_string(reinterpret_cast<std::uintptr_t>(f.op.get())) : "") + "#" +
                    corolla_key(tc) + "#" + std::to_string(bound) + "#" + target_dir + "#" + target_dec;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto value = std::make_shared<const CorollaPushforward>(
      CorollaPushforward::Spec{f, std::move(op), tc, bound, target_dir, target_dec});
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, value).first->second;
}

long long PushforwardValue::class_count() const {
  long long n = 1;
  for (const auto& f : factors) n *= static_cast<long long>(f->classes().size());
  return n;
}

std::vector<Tuple> PushforwardValue::classes() const {
  std::vector<Tuple> out{{}};
  for (const auto& f : factors) {
    std::vector<Tuple> next;
    for (const auto& t : out)
      for (const auto& c : f->classes()) {
        Tuple u = t;
        u.push_back(c.key);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

Tuple PushforwardValue::class_of(const Aggregate& x, const GraphMorphism& phi, const Tuple& element) const {
  Tuple out;
  for (int v = 0; v < phi.target().size(); ++v) {
    GraphMorphism part = restrict_to(phi, v);
    Tuple e;
    std::vector<int> fib = phi.fiber(v);
    for (int u : fib) e.push_back(element[u]);
    int c = factors[v]->class_of(x.sub(fib), part, e);
    out.push_back(c < 0 ? std::string() : factors[v]->classes()[c].key);
  }
  return out;
}

Report PushforwardValue::report() const {
  Report r;
  r.name = "pushforward";
  r.stabilized = stabilized;
  r.note("target", format_aggregate(target));
  r.note("bound", bound);
  r.note("classes", class_count());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = *factors[j];
    std::string p = "corolla" + std::to_string(j) + ".";
    r.note(p + "comma_objects", static_cast<long long>(f.catalog().reps().size()));
    r.note(p + "nodes", f.node_count());
    const auto& lv = f.level_counts();
    r.note(p + "classes_by_bound", std::to_string(lv[0]) + "," + std::to_string(lv[1]) + "," + std::to_string(lv[2]));
    r.note(p + "stabilized", f.stabilized() ? "true" : "false");
    for (const auto& c : f.classes()) r.note(p + "class", c.key);
  }
  return r;
}

PushforwardValue pushforward_at(const FeynmanFunctor& f, OpPtr op, const Aggregate& target, int bound,
                                const Tuple& target_dir, const Tuple& target_dec) {
  PushforwardValue v;
  v.target = target;
  v.bound = bound;
  int least = 0;
  for (const auto& c : target.corollas()) least += default_bound(f, c, 0);
  if (bound < least) throw Error(ErrorKind::truncation, "bound below the weight of the target");
  const int slack = bound - least;
  for (int j = 0; j < target.size(); ++j) {
    auto p = pushforward_corolla(f, op, target[j], default_bound(f, target[j], slack),
                                 target_dir.empty() ? Element{} : target_dir[j],
                                 target_dec.empty() ? Element{} : target_dec[j]);
    v.stabilized = v.stabilized && p->stabilized();
    v.factors.push_back(std::move(p));
  }
  return v;
}

CommaListing comma_objects(const FeynmanFunctor& f, const Corolla& target, int bound, OpPtr op,
                           const Element& target_dir, const Element& target_dec) {
  auto p = pushforward_corolla(f, std::move(op), target, bound, target_dir, target_dec);
  CommaListing out;
  for (long long v = 0; v < p->node_count(); ++v) out.objects.push_back(p->comma_object(v));
  for (int c = 0; c < static_cast<int>(p->classes().size()); ++c) {
    out.terminal.push_back(p->terminal(c));
    out.terminal_found = out.terminal_found || out.terminal.back().weak;
  }
  return out;
}

PushforwardOp::PushforwardOp(FeynmanFunctor f, OpPtr op, int slack)
    : f_(std::move(f)), op_(std::move(op)), slack_(slack) {
  if (f_.target.decorated())
    throw Error(ErrorKind::domain, "pushforward ops are only exposed on undecorated targets");
  if (!op_) op_ = terminal_op();
}

std::string PushforwardOp::name() const { return "Push(" + f_.name + "," + op_->name() + ")"; }

std::shared_ptr<const CorollaPushforward> PushforwardOp::at(const Corolla& c, int bound) const {
  return pushforward_corolla(f_, op_, c, bound < 0 ? default_bound(f_, c, slack_) : bound);
}

std::vector<Element> PushforwardOp::elements(const Corolla& c, const Element&) const {
  std::vector<Element> out;
  for (const auto& k : at(c)->classes()) out.push_back(k.key);
  std::sort(out.begin(), out.end());
  return out;
}

Element PushforwardOp::act(const GraphMorphism& phi, const Tuple& inputs, const Tuple&) const {
  const Aggregate& y = phi.source();
  if (phi.target().size() != 1) throw Error(ErrorKind::domain, "act needs a one-target morphism");
  Aggregate x;
  GraphMorphism glued = GraphMorphism::identity(Aggregate());
  Tuple element;
  std::set<Label> taken;
  for (const auto& l : y.labels()) taken.insert(l);
  int serial = 0;
  for (int v = 0; v < y.size(); ++v) {
    auto pv = at(y[v]);
    int ci = pv->class_index(inputs[v]);
    if (ci < 0) throw Error(ErrorKind::domain, "'" + inputs[v] + "' is not a class at " + format_aggregate(y.sub({v})));
    const auto& cls = pv->classes()[ci];
    const CommaRep& rep = pv->catalog().reps()[cls.rep];
    std::set<Label> outer(y[v].flags.begin(), y[v].flags.end());
    std::map<Label, Label> m;
    for (const auto& l : rep.source.labels()) {
      if (outer.count(l)) {
        m[l] = l;
        continue;
      }
      Label fresh;
      do fresh = "%" + std::to_string(v) + "." + std::to_string(serial++);
      while (taken.count(fresh));
      m[l] = fresh;
    }
    for (int u = 0; u < rep.source.size(); ++u)
      element.push_back(relabel(*pv->element_op(), rep.source[u], cls.element[u], m));
    x = tensor(x, rep.source.relabeled(m));
    glued = tensor(glued, relabel_source(rep.arrow, m));
  }
  GraphMorphism total = compose(phi, glued);
  const Corolla& tc = phi.target()[0];
  auto pt = at(tc, std::max(default_bound(f_, tc, slack_), x.weight()));
  int c = pt->class_of(x, total, element);
  if (c < 0) throw Error(ErrorKind::truncation, "composite comma object outside the bound");
  return pt->classes()[c].key;
}

Element PushforwardOp::mu(const Corolla& x, const Element& a) const {
  Aggregate xs({x});
  Aggregate fx = f_.map_object(xs);
  auto p = at(fx[0]);
  if (!p->stabilized())
    throw Error(ErrorKind::unstable_colimit, "pushforward at " + format_aggregate(fx) + " did not stabilize");
  NodeParts parts;
  parts.element = a;
  int c = p->class_of(xs, GraphMorphism::identity(fx), {encode_node(f_, parts)});
  if (c < 0) throw Error(ErrorKind::truncation, "identity comma object outside the bound");
  return p->classes()[c].key;
}

Element PushforwardOp::induced(const Element& cls, const Corolla& c, const OpNatTrans& sigma,
                               const PushforwardOp& other) const {
  auto p = at(c);
  int ci = p->class_index(cls);
  if (ci < 0) throw Error(ErrorKind::domain, "'" + cls + "' is not a class");
  const auto& k = p->classes()[ci];
  const CommaRep& rep = p->catalog().reps()[k.rep];
  Tuple moved;
  for (int u = 0; u < rep.source.size(); ++u) {
    NodeParts parts = decode_node(f_, k.element[u]);
    parts.element = sigma.component(rep.source[u], parts.element);
    moved.push_back(encode_node(other.f_, parts));
  }
  auto q = other.at(c, p->bound());
  int cj = q->class_of(k.rep, moved);
  if (cj < 0) throw Error(ErrorKind::domain, "induced element missing from the other pushforward");
  return q->classes()[cj].key;
}

std::shared_ptr<const PushforwardOp> pushforward_op(const FeynmanFunctor& f, OpPtr op, int slack) {
  return std::make_shared<PushforwardOp>(f, std::move(op), slack);
}

DecoratedObject apply_fO(const PushforwardOp& fo, const DecoratedObject& x) {
  DecoratedObject out{fo.functor().map_object(x.base), {}, {}};
  for (int v = 0; v < x.base.size(); ++v) out.decoration.push_back(fo.mu(x.base[v], x.decoration[v]));
  return out;
}

DecoratedMorphism apply_fO(const PushforwardOp& fo, const DecoratedMorphism& m) {
  DecoratedObject s = apply_fO(fo, m.source()), t = apply_fO(fo, m.target());
  return {fo.functor().map_morphism(m.base), s.decoration, t.decoration, {}, {}};
}

TerminalCheck is_terminal(const SetOp& o, const FeynmanPresentation& f, int max_flags, int max_genus) {
  TerminalCheck r;
  for (int n = 0; n <= max_flags && r.terminal; ++n) {
    Corolla c;
    c.id = "v";
    for (int i = 1; i <= n; ++i) c.flags.push_back(std::to_string(i));
    for (int g = 0; g <= (f.cond.genus_marked ? max_genus : 0) && r.terminal; ++g) {
      if (f.cond.genus_marked) c.genus = g;
      std::vector<Element> bases{Element{}};
      if (f.decorated()) bases = f.decoration->elements(c);
      for (const auto& b : bases) {
        auto els = o.elements(c, o.uses_base() ? b : Element{});
        if (els.size() != 1) {
          r.terminal = false;
          r.witness = format_aggregate(Aggregate({c})) + (b.empty() ? "" : " [" + b + "]") + " has " +
                      std::to_string(els.size()) + " elements";
          break;
        }
      }
    }
  }
  return r;
}

}  // namespace feyncat
