#include "feyncat/surface.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "feyncat/category.hpp"
#include "feyncat/error.hpp"
#include "feyncat/functor.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/orders.hpp"

namespace feyncat {

namespace {

// Flat view: flag ids in vertex order, successor and predecessor around the
// vertex, partner across an edge (-1 external) and edge index.
struct Flat {
  std::vector<Label> label;
  std::vector<int> vertex, next, prev, partner, edge;
  std::map<Label, int> id;

  explicit Flat(const RibbonGraph& g) {
    for (int v = 0; v < static_cast<int>(g.orders.size()); ++v) {
      const auto& o = g.orders[v];
      const int base = static_cast<int>(label.size());
      const int n = static_cast<int>(o.size());
      for (int i = 0; i < n; ++i) {
        id[o[i]] = base + i;
        label.push_back(o[i]);
        vertex.push_back(v);
        next.push_back(base + (i + 1) % n);
        prev.push_back(base + (i + n - 1) % n);
      }
    }
    partner.assign(label.size(), -1);
    edge.assign(label.size(), -1);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      int a = id.at(g.edges[e].first), b = id.at(g.edges[e].second);
      partner[a] = b;
      partner[b] = a;
      edge[a] = edge[b] = e;
    }
  }
  int size() const { return static_cast<int>(label.size()); }
};

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

}  // namespace

int RibbonGraph::flag_count() const {
  int n = 0;
  for (const auto& o : orders) n += static_cast<int>(o.size());
  return n;
}

std::vector<Label> RibbonGraph::external() const {
  std::set<Label> glued;
  for (const auto& [a, b] : edges) {
    glued.insert(a);
    glued.insert(b);
  }
  std::vector<Label> out;
  for (const auto& o : orders)
    for (const auto& l : o)
      if (!glued.count(l)) out.push_back(l);
  return out;
}

void RibbonGraph::validate() const {
  std::set<Label> seen, used;
  for (const auto& o : orders)
    for (const auto& l : o)
      if (!seen.insert(l).second) throw Error(ErrorKind::invalid_object, "flag '" + l + "' appears twice");
  if (!signs.empty() && signs.size() != edges.size())
    throw Error(ErrorKind::invalid_object, "one sign per edge expected");
  for (int s : signs)
    if (s != 0 && s != 1) throw Error(ErrorKind::invalid_object, "edge signs are 0 or 1");
  for (const auto& [l, m] : marks)
    if (!seen.count(l) || (m != 0 && m != 1)) throw Error(ErrorKind::invalid_object, "bad mark on '" + l + "'");
  for (const auto& [a, b] : edges) {
    if (a == b) throw Error(ErrorKind::invalid_object, "edge joins flag '" + a + "' to itself");
    for (const auto& l : {a, b}) {
      if (!seen.count(l)) throw Error(ErrorKind::invalid_object, "edge uses unknown flag '" + l + "'");
      if (!used.insert(l).second) throw Error(ErrorKind::invalid_object, "flag '" + l + "' on two edges");
    }
  }
}

std::string SurfaceType::to_string() const {
  std::ostringstream o;
  o << (orientable ? "orientable" : "non-orientable") << " genus " << genus << " boundary " << boundary
    << " euler " << euler;
  return o.str();
}

std::string to_json(const SurfaceType& s, int indent) {
  nlohmann::json j;
  j["orientable"] = s.orientable;
  j["genus"] = s.genus;
  j["boundary"] = s.boundary;
  j["euler"] = s.euler;
  return j.dump(indent);
}

std::vector<std::vector<Side>> boundary_sides(const RibbonGraph& g) {
  g.validate();
  Flat f(g);
  const int n = f.size();
  // state 2h+s is side s of flag h
  auto alpha = [&](int st) {
    int h = st / 2, s = st % 2, p = f.partner[h];
    if (p < 0) return 2 * h + (1 - s);
    return 2 * p + (g.sign(f.edge[h]) ? s : 1 - s);
  };
  auto beta = [&](int st) {
    int h = st / 2, s = st % 2;
    return s ? 2 * f.next[h] : 2 * f.prev[h] + 1;
  };
  std::vector<char> seen(2 * n, 0);
  std::vector<std::vector<Side>> out;
  // every orbit has a side-0 state; starting there walks along the orders
  for (int start = 0; start < 2 * n; start += 2) {
    if (seen[start]) continue;
    std::vector<Side> cycle;
    int cur = start;
    do {
      int a = alpha(cur);
      seen[cur] = seen[a] = 1;
      cycle.emplace_back(f.label[cur / 2], cur % 2);
      cycle.emplace_back(f.label[a / 2], a % 2);
      cur = beta(a);
    } while (cur != start);
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<std::vector<Label>> boundary_cycles(const RibbonGraph& g) {
  std::set<Label> ext;
  for (const auto& l : g.external()) ext.insert(l);
  std::vector<std::vector<Label>> out;
  for (const auto& sides : boundary_sides(g)) {
    std::vector<Label> c;
    // an external flag is passed as side 0 then side 1 of the same flag
    for (std::size_t i = 0; i + 1 < sides.size(); i += 2)
      if (ext.count(sides[i].first) && sides[i].first == sides[i + 1].first) c.push_back(sides[i].first);
    out.push_back(std::move(c));
  }
  for (const auto& o : g.orders)
    if (o.empty()) out.emplace_back();
  return out;
}

bool is_orientable(const RibbonGraph& g) {
  g.validate();
  Flat f(g);
  const int nv = static_cast<int>(g.orders.size());
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    int u = f.vertex[f.id.at(g.edges[e].first)], w = f.vertex[f.id.at(g.edges[e].second)];
    adj[u].emplace_back(w, g.sign(e));
    adj[w].emplace_back(u, g.sign(e));
  }
  std::vector<int> o(nv, -1);
  for (int root = 0; root < nv; ++root) {
    if (o[root] >= 0) continue;
    o[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, s] : adj[u]) {
        if (o[w] < 0) {
          o[w] = o[u] ^ s;
          stack.push_back(w);
        } else if (o[w] != (o[u] ^ s)) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<RibbonGraph> components(const RibbonGraph& g) {
  g.validate();
  Flat f(g);
  const int nv = static_cast<int>(g.orders.size());
  std::vector<int> p(nv);
  for (int v = 0; v < nv; ++v) p[v] = v;
  for (const auto& [a, b] : g.edges) p[find(p, f.vertex[f.id.at(a)])] = find(p, f.vertex[f.id.at(b)]);
  std::map<int, int> slot;
  std::vector<RibbonGraph> out;
  for (int v = 0; v < nv; ++v) {
    auto [it, fresh] = slot.try_emplace(find(p, v), static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    out[it->second].orders.push_back(g.orders[v]);
  }
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    RibbonGraph& c = out[slot.at(find(p, f.vertex[f.id.at(g.edges[e].first)]))];
    c.edges.push_back(g.edges[e]);
    c.signs.push_back(g.sign(e));
  }
  return out;
}

SurfaceType classify_surface(const RibbonGraph& g, bool cap_unmarked) {
  if (components(g).size() > 1)
    throw Error(ErrorKind::domain, "disconnected ribbon graph; classify each component");
  SurfaceType s;
  s.orientable = is_orientable(g);
  int capped = 0;
  for (const auto& c : boundary_cycles(g)) {
    if (cap_unmarked && c.empty())
      ++capped;
    else
      ++s.boundary;
  }
  s.euler = static_cast<int>(g.orders.size()) - static_cast<int>(g.edges.size()) + capped;
  s.genus = 2 - s.euler - s.boundary;
  if (s.orientable) s.genus /= 2;
  return s;
}

std::vector<SurfaceType> classify_components(const RibbonGraph& g, bool cap_unmarked) {
  std::vector<SurfaceType> out;
  for (const auto& c : components(g)) out.push_back(classify_surface(c, cap_unmarked));
  return out;
}

RibbonGraph subdivide(const RibbonGraph& g, int e) {
  g.validate();
  if (e < 0 || e >= static_cast<int>(g.edges.size())) throw Error(ErrorKind::domain, "no such edge");
  std::set<Label> taken;
  for (const auto& o : g.orders) taken.insert(o.begin(), o.end());
  auto fresh = [&](const Label& base) {
    Label l = base;
    while (taken.count(l)) l += "'";
    taken.insert(l);
    return l;
  };
  RibbonGraph out = g;
  out.signs.resize(g.edges.size(), 0);
  auto [a, b] = g.edges[e];
  Label a2 = fresh(a + "'"), b2 = fresh(b + "'");
  out.orders.push_back({a2, b2});
  out.edges[e] = {a, a2};
  out.edges.emplace_back(b2, b);
  out.signs.push_back(0);
  return out;
}

RibbonGraph normalize_gauge(const RibbonGraph& g) {
  g.validate();
  Flat f(g);
  const int nv = static_cast<int>(g.orders.size());
  const int ne = static_cast<int>(g.edges.size());
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge)
  for (int e = 0; e < ne; ++e) {
    int u = f.vertex[f.id.at(g.edges[e].first)], w = f.vertex[f.id.at(g.edges[e].second)];
    adj[u].emplace_back(w, e);
    adj[w].emplace_back(u, e);
  }
  std::vector<int> flip(nv, -1);
  for (int root = 0; root < nv; ++root) {
    if (flip[root] >= 0) continue;
    flip[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[u])
        if (flip[w] < 0) {
          flip[w] = flip[u] ^ g.sign(e);
          stack.push_back(w);
        }
    }
  }
  RibbonGraph out;
  for (int v = 0; v < nv; ++v) {
    auto o = g.orders[v];
    if (flip[v]) std::reverse(o.begin(), o.end());
    for (const auto& l : o) {
      auto it = g.marks.find(l);
      int m = (it == g.marks.end() ? 0 : it->second) ^ flip[v];
      if (m && f.partner[f.id.at(l)] < 0) out.marks[l] = 1;
    }
    out.orders.push_back(least_rotation(o));
  }
  std::vector<std::tuple<Label, Label, int>> es;
  for (int e = 0; e < ne; ++e) {
    auto [a, b] = g.edges[e];
    int u = f.vertex[f.id.at(a)], w = f.vertex[f.id.at(b)];
    if (b < a) std::swap(a, b);
    es.emplace_back(a, b, g.sign(e) ^ flip[u] ^ flip[w]);
  }
  std::sort(es.begin(), es.end());
  for (const auto& [a, b, s] : es) {
    out.edges.emplace_back(a, b);
    out.signs.push_back(s);
  }
  return out;
}

std::string surface_key(const RibbonGraph& g, bool unoriented) {
  RibbonGraph n = normalize_gauge(g);
  SurfaceType s = classify_surface(n);
  std::set<Label> ext;
  for (const auto& l : n.external()) ext.insert(l);
  // per circle: label plus mark xor the side the walk enters from
  std::vector<std::vector<std::pair<Label, int>>> cycles;
  for (const auto& sides : boundary_sides(n)) {
    std::vector<std::pair<Label, int>> c;
    for (std::size_t i = 0; i + 1 < sides.size(); i += 2)
      if (ext.count(sides[i].first) && sides[i].first == sides[i + 1].first) {
        auto it = n.marks.find(sides[i].first);
        c.emplace_back(sides[i].first, (it == n.marks.end() ? 0 : it->second) ^ sides[i].second);
      }
    cycles.push_back(std::move(c));
  }
  for (const auto& o : n.orders)
    if (o.empty()) cycles.emplace_back();
  auto word = [](const std::vector<std::pair<Label, int>>& c, bool reversed) {
    std::vector<std::string> w;
    for (const auto& [l, m] : c) w.push_back(l + ((m ^ reversed) ? "-" : "+"));
    if (reversed) std::reverse(w.begin(), w.end());
    return least_rotation(w);
  };
  auto render = [&](bool reversed, bool per_circle) {
    std::vector<std::string> parts;
    for (const auto& c : cycles) {
      auto w = per_circle ? std::min(word(c, false), word(c, true)) : word(c, reversed);
      parts.push_back("(" + join(w, ',') + ")");
    }
    std::sort(parts.begin(), parts.end());
    return join(parts, ' ');
  };
  std::string body;
  if (!s.orientable)
    body = render(false, true);
  else if (unoriented)
    body = std::min(render(false, false), render(true, false));
  else
    body = render(false, false);
  return s.to_string() + " | " + body;
}

std::vector<Letter> parse_word(const std::string& text) {
  std::vector<Letter> w;
  std::map<std::string, int> uses;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    Letter l;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      l.inverse = true;
      tok.resize(tok.size() - 3);
    } else if (tok.size() > 1 && tok.back() == '\'') {
      l.inverse = true;
      tok.pop_back();
    }
    if (tok.empty() || !std::isalpha(static_cast<unsigned char>(tok[0])) ||
        !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; }))
      throw Error(ErrorKind::parse, "bad letter '" + tok + "' in word");
    if (++uses[tok] > 2) throw Error(ErrorKind::parse, "letter '" + tok + "' used more than twice");
    l.name = tok;
    w.push_back(l);
  }
  if (w.empty()) throw Error(ErrorKind::parse, "empty word");
  return w;
}

std::string format_word(const std::vector<Letter>& w) {
  std::vector<std::string> parts;
  for (const auto& l : w) parts.push_back(l.name + (l.inverse ? "^-1" : ""));
  return join(parts, ' ');
}

RibbonGraph word_ribbon(const std::vector<Letter>& w) {
  RibbonGraph g;
  g.orders.emplace_back();
  std::map<std::string, int> first;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    auto [it, fresh] = first.try_emplace(w[i].name, i);
    Label l = w[i].name + (fresh ? ".1" : ".2");
    g.orders[0].push_back(l);
    if (!fresh) {
      g.edges.emplace_back(w[it->second].name + ".1", l);
      g.signs.push_back(w[it->second].inverse == w[i].inverse);
    }
  }
  return g;
}

SurfaceType classify_word(const std::vector<Letter>& w) { return classify_surface(word_ribbon(w), true); }

SurfaceType classify_word(const std::string& text) { return classify_word(parse_word(text)); }

RibbonGraph ribbon_of(const CorollaPushforward& p, const CommaObject& x) {
  const std::string op = p.spec().op ? p.spec().op->name() : "";
  const bool dihedral = op == "CycDihed";
  if (!dihedral && op != "CycAss") throw Error(ErrorKind::domain, "ribbon graphs need CycAss or CycDihed, got " + op);
  RibbonGraph g;
  std::map<Label, int> sign;
  for (int u = 0; u < x.source.size(); ++u) {
    const Element& e = x.parts[u].element;
    if (e.empty()) {
      g.orders.emplace_back();
    } else if (dihedral) {
      SignedCyclic s = parse_signed(e);
      for (std::size_t i = 0; i < s.order.size(); ++i) {
        sign[s.order[i]] = s.sign[i];
        if (s.sign[i]) g.marks[s.order[i]] = 1;
      }
      g.orders.push_back(s.order);
    } else {
      g.orders.push_back(split(e, ','));
    }
  }
  for (auto [a, b] : x.arrow.ghost_edges()) {
    const Label& la = x.source.label(a);
    const Label& lb = x.source.label(b);
    g.edges.emplace_back(la, lb);
    g.signs.push_back(dihedral ? sign[la] ^ sign[lb] : 0);
    g.marks.erase(la);
    g.marks.erase(lb);
  }
  return g;
}

RibbonGraph class_ribbon(const CorollaPushforward& p, int cls) {
  const auto& k = p.classes().at(cls);
  return ribbon_of(p, p.comma_object(p.node_id(k.rep, k.element)));
}

Report envelope_cross_check(Corolla c, int bound, OpPtr op) {
  if (!op) op = builtin_op("CycAss");
  if (!c.genus) c.genus = 0;
  FeynmanFunctor i = inclusion_functor(builtin_category("C"), builtin_category("M"));
  if (bound < 0) bound = default_bound(i, c, 4);
  Report r;
  r.name = "envelope(" + op->name() + "," + format_aggregate(Aggregate({c})) + ")";
  auto p = pushforward_corolla(i, op, c, bound);
  r.stabilized = p->stabilized();
  if (!p->stabilized()) r.fail("pushforward did not stabilize at bound " + std::to_string(bound));
  const bool unoriented = op->name() == "CycDihed";
  std::vector<std::string> keys;
  for (int k = 0; k < static_cast<int>(p->classes().size()); ++k)
    keys.push_back(surface_key(class_ribbon(*p, k), unoriented));
  for (long long n = 0; n < p->node_count(); ++n) {
    int k = p->class_of_node(n);
    std::string key = surface_key(ribbon_of(*p, p->comma_object(n)), unoriented);
    if (key != keys[k]) {
      r.fail("surface changes inside class " + p->classes()[k].key + ": " + key + " vs " + keys[k]);
      break;
    }
  }
  std::map<std::string, int> owner;
  std::map<std::string, int> types;
  int non_orientable = 0;
  for (int k = 0; k < static_cast<int>(keys.size()); ++k) {
    auto [it, fresh] = owner.try_emplace(keys[k], k);
    if (!fresh)
      r.fail("classes " + p->classes()[it->second].key + " and " + p->classes()[k].key +
             " share surface data (possible truncation artifact): " + keys[k]);
    SurfaceType s = classify_surface(class_ribbon(*p, k));
    ++types[s.to_string()];
    if (!s.orientable) ++non_orientable;
  }
  r.note("classes", static_cast<long long>(keys.size()));
  r.note("nodes", p->node_count());
  r.note("non_orientable_classes", non_orientable);
  for (const auto& [t, n] : types) r.note(t, n);
  return r;
}

std::string to_dot(const RibbonGraph& g) {
  std::ostringstream o;
  o << "graph ribbon {\n";
  auto cycles = boundary_cycles(g);
  for (std::size_t k = 0; k < cycles.size(); ++k) o << "  // boundary " << k << ": " << join(cycles[k], ' ') << "\n";
  Flat f(g);
  for (std::size_t v = 0; v < g.orders.size(); ++v)
    o << "  v" << v << " [shape=circle,label=\"(" << join(g.orders[v], ' ') << ")\"];\n";
  for (int h = 0; h < f.size(); ++h) {
    if (f.partner[h] >= 0) continue;
    o << "  f" << h << " [shape=point];\n";
    o << "  v" << f.vertex[h] << " -- f" << h << " [label=\"" << f.label[h] << "\"];\n";
  }
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto& [a, b] = g.edges[e];
    o << "  v" << f.vertex[f.id.at(a)] << " -- v" << f.vertex[f.id.at(b)] << " [label=\"" << a << "~" << b << "\"";
    if (g.sign(e)) o << ",color=red,style=bold";
    o << "];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace feyncat
