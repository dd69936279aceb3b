#include "feyncat/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace feyncat {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_object: return "invalid-object";
    case ErrorKind::invalid_morphism: return "invalid-morphism";
    case ErrorKind::composition_mismatch: return "composition-mismatch";
    case ErrorKind::relabel_required: return "relabel-required";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::domain: return "domain-error";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::unstable_colimit: return "unstable-colimit";
  }
  return "error";
}

bool valid_label(const Label& l) {
  if (l.empty()) return false;
  for (char c : l) {
    if (static_cast<unsigned char>(c) <= ' ') return false;
    switch (c) {
      case ',': case ';': case '{': case '}': case '(': case ')': case '[': case ']':
      case '=': case '|': case '+': case '-': case ':': case '*': case '"': case '\\':
        return false;
      default: break;
    }
  }
  return true;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { while (p[x] != x) x = p[x] = p[p[x]]; return x; }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

int count_components(int vertices, const std::vector<std::pair<int, int>>& edges) {
  Dsu d(vertices);
  int c = vertices;
  for (auto [a, b] : edges) c -= d.unite(a, b);
  return c;
}

int betti_one(int vertices, const std::vector<std::pair<int, int>>& edges) {
  return static_cast<int>(edges.size()) - vertices + count_components(vertices, edges);
}

Aggregate::Aggregate() : Aggregate(std::vector<Corolla>{}) {}

Aggregate::Aggregate(std::vector<Corolla> corollas) {
  auto d = std::make_shared<Data>();
  d->corollas = std::move(corollas);
  d->offset.push_back(0);
  for (std::size_t v = 0; v < d->corollas.size(); ++v) {
    auto& c = d->corollas[v];
    if (c.id.empty()) c.id = "v" + std::to_string(v);
    if (c.genus) {
      if (*c.genus < 0) throw Error(ErrorKind::invalid_object, "negative genus at " + c.id);
      d->unmarked = false;
    } else {
      d->marked = false;
    }
    for (const auto& l : c.flags) {
      if (!valid_label(l)) throw Error(ErrorKind::invalid_object, "bad flag label '" + l + "'");
      if (!d->index.emplace(l, static_cast<int>(d->labels.size())).second)
        throw Error(ErrorKind::invalid_object, "duplicate flag label '" + l + "'");
      d->labels.push_back(l);
      d->vertex_of.push_back(static_cast<int>(v));
    }
    d->offset.push_back(static_cast<int>(d->labels.size()));
  }
  if (!d->marked && !d->unmarked)
    throw Error(ErrorKind::invalid_object, "genus marks must be all present or all absent");
  d_ = std::move(d);
}

Aggregate Aggregate::corolla(std::vector<Label> flags, std::optional<int> genus) {
  return Aggregate({Corolla{"", std::move(flags), genus}});
}

int Aggregate::index_of(const Label& l) const {
  auto it = d_->index.find(l);
  return it == d_->index.end() ? -1 : it->second;
}

int Aggregate::weight() const {
  int w = flag_count();
  for (const auto& c : d_->corollas) w += c.flags.empty();
  return w;
}

Aggregate Aggregate::relabeled(const std::map<Label, Label>& m) const {
  std::vector<Corolla> cs = d_->corollas;
  for (auto& c : cs)
    for (auto& l : c.flags) {
      auto it = m.find(l);
      if (it != m.end()) l = it->second;
    }
  return Aggregate(std::move(cs));
}

Aggregate Aggregate::with_genus(std::optional<int> g) const {
  std::vector<Corolla> cs = d_->corollas;
  for (auto& c : cs) c.genus = g;
  return Aggregate(std::move(cs));
}

Aggregate Aggregate::sub(const std::vector<int>& vertices) const {
  std::vector<Corolla> cs;
  for (int v : vertices) cs.push_back(d_->corollas[v]);
  return Aggregate(std::move(cs));
}

bool operator==(const Aggregate& a, const Aggregate& b) {
  return a.d_ == b.d_ || a.d_->corollas == b.d_->corollas;
}

Aggregate tensor(const Aggregate& a, const Aggregate& b) {
  std::vector<Corolla> cs = a.corollas();
  for (const auto& l : b.labels())
    if (a.has_label(l)) throw Error(ErrorKind::relabel_required, "flag '" + l + "' on both sides");
  std::set<std::string> ids;
  for (const auto& c : cs) ids.insert(c.id);
  for (auto c : b.corollas()) {
    while (ids.count(c.id)) c.id += "'";
    ids.insert(c.id);
    cs.push_back(std::move(c));
  }
  return Aggregate(std::move(cs));
}

GraphMorphism::GraphMorphism(Aggregate source, Aggregate target, std::vector<int> flag_map,
                             std::vector<int> vertex_map, std::vector<int> ghost)
    : src_(std::move(source)), tgt_(std::move(target)), flag_map_(std::move(flag_map)),
      vertex_map_(std::move(vertex_map)), ghost_(std::move(ghost)) {
  auto bad = [](const std::string& s) { return Error(ErrorKind::invalid_morphism, s); };
  const int nx = src_.flag_count(), ny = tgt_.flag_count();
  if (static_cast<int>(flag_map_.size()) != ny) throw bad("flag map has wrong length");
  if (static_cast<int>(vertex_map_.size()) != src_.size()) throw bad("vertex map has wrong length");
  if (static_cast<int>(ghost_.size()) != nx) throw bad("ghost involution has wrong length");
  inverse_.assign(nx, -1);
  for (int t = 0; t < ny; ++t) {
    int s = flag_map_[t];
    if (s < 0 || s >= nx) throw bad("flag map out of range");
    if (inverse_[s] >= 0) throw bad("flag map not injective");
    inverse_[s] = t;
  }
  std::vector<char> hit(tgt_.size(), 0);
  for (int v : vertex_map_) {
    if (v < 0 || v >= tgt_.size()) throw bad("vertex map out of range");
    hit[v] = 1;
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw bad("vertex map not surjective");
  for (int t = 0; t < ny; ++t)
    if (vertex_map_[src_.vertex_of(flag_map_[t])] != tgt_.vertex_of(t))
      throw bad("flag '" + tgt_.label(t) + "' maps outside its fiber");
  for (int s = 0; s < nx; ++s) {
    int p = ghost_[s];
    if (inverse_[s] >= 0) {
      if (p != -1) throw bad("external flag '" + src_.label(s) + "' is paired");
      continue;
    }
    if (p < 0 || p >= nx || p == s || ghost_[p] != s || inverse_[p] >= 0)
      throw bad("ghost involution broken at '" + src_.label(s) + "'");
    if (vertex_map_[src_.vertex_of(s)] != vertex_map_[src_.vertex_of(p)])
      throw bad("ghost edge crosses fibers at '" + src_.label(s) + "'");
  }
  const bool sm = src_.size() > 0 && src_.genus_marked();
  const bool tm = tgt_.size() > 0 && tgt_.genus_marked();
  if (src_.size() > 0 && tgt_.size() > 0 && sm != tm)
    throw bad("genus marks present on only one side");
  if (sm && tm) {
    auto inv = ghost_invariants(*this);
    for (int v = 0; v < tgt_.size(); ++v) {
      int g = inv.euler_defect[v];
      for (int u = 0; u < src_.size(); ++u)
        if (vertex_map_[u] == v) g += *src_[u].genus;
      if (g != *tgt_[v].genus) throw bad("genus rule fails at target vertex " + tgt_[v].id);
    }
  }
}

GraphMorphism GraphMorphism::identity(const Aggregate& x) {
  std::vector<int> fm(x.flag_count()), vm(x.size());
  std::iota(fm.begin(), fm.end(), 0);
  std::iota(vm.begin(), vm.end(), 0);
  return GraphMorphism(x, x, std::move(fm), std::move(vm), std::vector<int>(x.flag_count(), -1));
}

GraphMorphism GraphMorphism::from_labels(Aggregate source, Aggregate target,
                                         const std::map<Label, Label>& flag_map,
                                         std::vector<int> vertex_map,
                                         const std::vector<std::pair<Label, Label>>& edges) {
  std::vector<int> fm(target.flag_count(), -1), gh(source.flag_count(), -1);
  auto find = [](const Aggregate& a, const Label& l) {
    int i = a.index_of(l);
    if (i < 0) throw Error(ErrorKind::invalid_morphism, "unknown flag '" + l + "'");
    return i;
  };
  for (const auto& [t, s] : flag_map) fm[find(target, t)] = find(source, s);
  for (const auto& [a, b] : edges) {
    int i = find(source, a), j = find(source, b);
    gh[i] = j;
    gh[j] = i;
  }
  return GraphMorphism(std::move(source), std::move(target), std::move(fm), std::move(vertex_map),
                       std::move(gh));
}

GraphMorphism GraphMorphism::reorder(const Aggregate& from, const Aggregate& to) {
  std::vector<int> fm(to.flag_count()), vm(from.size(), -1);
  for (int t = 0; t < to.flag_count(); ++t) {
    int s = from.index_of(to.label(t));
    if (s < 0) throw Error(ErrorKind::invalid_morphism, "reorder: label sets differ");
    fm[t] = s;
    vm[from.vertex_of(s)] = to.vertex_of(t);
  }
  // flagless corollas pair up in order of appearance
  std::vector<int> empty_to;
  for (int v = 0; v < to.size(); ++v)
    if (to.degree(v) == 0) empty_to.push_back(v);
  std::size_t k = 0;
  for (int u = 0; u < from.size(); ++u)
    if (from.degree(u) == 0) {
      if (k >= empty_to.size()) throw Error(ErrorKind::invalid_morphism, "reorder: shapes differ");
      vm[u] = empty_to[k++];
    }
  return GraphMorphism(from, to, std::move(fm), std::move(vm),
                       std::vector<int>(from.flag_count(), -1));
}

std::vector<std::pair<int, int>> GraphMorphism::ghost_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < static_cast<int>(ghost_.size()); ++s)
    if (ghost_[s] > s) out.emplace_back(s, ghost_[s]);
  return out;
}

int GraphMorphism::ghost_edge_count() const {
  return (src_.flag_count() - tgt_.flag_count()) / 2;
}

std::vector<int> GraphMorphism::fiber(int target_vertex) const {
  std::vector<int> out;
  for (int u = 0; u < src_.size(); ++u)
    if (vertex_map_[u] == target_vertex) out.push_back(u);
  return out;
}

GhostGraph GraphMorphism::ghost_graph() const {
  GhostGraph g;
  g.vertices = src_.size();
  g.flag_edges = ghost_edges();
  for (auto [a, b] : g.flag_edges) g.vertex_edges.emplace_back(src_.vertex_of(a), src_.vertex_of(b));
  for (int t = 0; t < tgt_.flag_count(); ++t) g.external.push_back(flag_map_[t]);
  return g;
}

bool GraphMorphism::is_isomorphism() const {
  return src_.size() == tgt_.size() && src_.flag_count() == tgt_.flag_count();
}

bool operator==(const GraphMorphism& a, const GraphMorphism& b) {
  return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.flag_map_ == b.flag_map_ &&
         a.vertex_map_ == b.vertex_map_ && a.ghost_ == b.ghost_;
}

GraphMorphism compose(const GraphMorphism& psi, const GraphMorphism& phi) {
  if (phi.target() != psi.source())
    throw Error(ErrorKind::composition_mismatch, "target of first map differs from source of second");
  const Aggregate& x = phi.source();
  std::vector<int> fm(psi.target().flag_count()), vm(x.size());
  for (int t = 0; t < psi.target().flag_count(); ++t) fm[t] = phi.flag_image(psi.flag_image(t));
  for (int u = 0; u < x.size(); ++u) vm[u] = psi.vertex_image(phi.vertex_image(u));
  std::vector<int> gh = phi.ghost();
  for (auto [a, b] : psi.ghost_edges()) {
    int sa = phi.flag_image(a), sb = phi.flag_image(b);
    gh[sa] = sb;
    gh[sb] = sa;
  }
  return GraphMorphism(x, psi.target(), std::move(fm), std::move(vm), std::move(gh));
}

GraphMorphism tensor(const GraphMorphism& a, const GraphMorphism& b) {
  Aggregate src = tensor(a.source(), b.source());
  Aggregate tgt = tensor(a.target(), b.target());
  const int sx = a.source().flag_count(), sv = a.source().size(), tv = a.target().size();
  std::vector<int> fm = a.flag_map(), vm = a.vertex_map(), gh = a.ghost();
  for (int s : b.flag_map()) fm.push_back(s + sx);
  for (int v : b.vertex_map()) vm.push_back(v + tv);
  for (int p : b.ghost()) gh.push_back(p < 0 ? -1 : p + sx);
  (void)sv;
  return GraphMorphism(std::move(src), std::move(tgt), std::move(fm), std::move(vm), std::move(gh));
}

GraphMorphism relabel_source(const GraphMorphism& phi, const std::map<Label, Label>& m) {
  return GraphMorphism(phi.source().relabeled(m), phi.target(), phi.flag_map(), phi.vertex_map(),
                       phi.ghost());
}

GraphMorphism relabel_target(const GraphMorphism& phi, const std::map<Label, Label>& m) {
  return GraphMorphism(phi.source(), phi.target().relabeled(m), phi.flag_map(), phi.vertex_map(),
                       phi.ghost());
}

GraphMorphism inverse(const GraphMorphism& iso) {
  if (!iso.is_isomorphism()) throw Error(ErrorKind::invalid_morphism, "not an isomorphism");
  const Aggregate& x = iso.source();
  const Aggregate& y = iso.target();
  std::vector<int> fm(x.flag_count()), vm(y.size());
  for (int t = 0; t < y.flag_count(); ++t) fm[iso.flag_image(t)] = t;
  for (int u = 0; u < x.size(); ++u) vm[iso.vertex_image(u)] = u;
  return GraphMorphism(y, x, std::move(fm), std::move(vm), std::vector<int>(y.flag_count(), -1));
}

GraphMorphism restrict_to(const GraphMorphism& phi, int v) {
  const Aggregate& x = phi.source();
  std::vector<int> fib = phi.fiber(v);
  Aggregate sub = x.sub(fib);
  Aggregate tv = phi.target().sub({v});
  std::vector<int> local(x.flag_count(), -1);
  for (std::size_t i = 0; i < fib.size(); ++i)
    for (int f = x.first_flag(fib[i]); f < x.end_flag(fib[i]); ++f)
      local[f] = sub.index_of(x.label(f));
  std::vector<int> fm(tv.flag_count()), gh(sub.flag_count(), -1);
  for (int t = 0; t < tv.flag_count(); ++t)
    fm[t] = local[phi.flag_image(phi.target().first_flag(v) + t)];
  for (int f = 0; f < x.flag_count(); ++f)
    if (local[f] >= 0 && phi.partner(f) >= 0) gh[local[f]] = local[phi.partner(f)];
  return GraphMorphism(std::move(sub), std::move(tv), std::move(fm),
                       std::vector<int>(fib.size(), 0), std::move(gh));
}

Decomposition decompose(const GraphMorphism& phi) {
  Decomposition d;
  for (int v = 0; v < phi.target().size(); ++v) {
    d.factors.push_back(restrict_to(phi, v));
    for (int u : phi.fiber(v)) d.source_order.push_back(u);
  }
  return d;
}

GraphMorphism recompose(const Decomposition& d, const Aggregate& source) {
  GraphMorphism acc = GraphMorphism::identity(Aggregate());
  for (const auto& f : d.factors) acc = tensor(acc, f);
  // acc: (fibers concatenated) -> target; precompose with the reordering
  std::vector<Corolla> cs;
  for (int u : d.source_order) cs.push_back(source[u]);
  Aggregate permuted(std::move(cs));
  if (permuted != acc.source()) throw Error(ErrorKind::invalid_morphism, "recompose: fibers do not cover source");
  GraphMorphism perm = GraphMorphism::reorder(source, permuted);
  // reorder matches flagless corollas by order of appearance; fix them from source_order
  std::vector<int> vm = perm.vertex_map();
  for (std::size_t i = 0; i < d.source_order.size(); ++i) vm[d.source_order[i]] = static_cast<int>(i);
  perm = GraphMorphism(source, permuted, perm.flag_map(), std::move(vm), perm.ghost());
  return compose(acc, perm);
}

GhostInvariants ghost_invariants(const GraphMorphism& phi) {
  const Aggregate& x = phi.source();
  const int ny = phi.target().size();
  GhostInvariants r;
  r.b1.assign(ny, 0);
  r.components.assign(ny, 0);
  r.euler_defect.assign(ny, 0);
  std::vector<int> nv(ny, 0), ne(ny, 0);
  for (int u = 0; u < x.size(); ++u) ++nv[phi.vertex_image(u)];
  std::vector<std::pair<int, int>> all;
  for (auto [a, b] : phi.ghost_edges()) {
    int u = x.vertex_of(a), w = x.vertex_of(b);
    ++ne[phi.vertex_image(u)];
    all.emplace_back(u, w);
  }
  Dsu d(x.size());
  for (auto [u, w] : all) d.unite(u, w);
  for (int u = 0; u < x.size(); ++u)
    if (d.find(u) == u) ++r.components[phi.vertex_image(u)];
  for (int v = 0; v < ny; ++v) {
    r.b1[v] = ne[v] - nv[v] + r.components[v];
    r.euler_defect[v] = 1 - (nv[v] - ne[v]);
    r.total_components += r.components[v];
  }
  return r;
}

}  // namespace feyncat
