#include "feyncat/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace feyncat {

namespace {

struct Search {
  const ColoredGraph& g;
  int n;
  std::vector<int> base_rank;  // rank of the initial color
  std::vector<int> twin;       // twin class id; twins are freely interchangeable
  std::string best;
  std::vector<std::vector<int>> best_orders;

  explicit Search(const ColoredGraph& graph) : g(graph), n(static_cast<int>(graph.color.size())) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return g.color[a] < g.color[b]; });
    base_rank.assign(n, 0);
    for (int i = 1; i < n; ++i)
      base_rank[idx[i]] = base_rank[idx[i - 1]] + (g.color[idx[i]] != g.color[idx[i - 1]]);
    twin.resize(n);
    std::iota(twin.begin(), twin.end(), 0);
    std::map<std::pair<std::string, std::vector<int>>, int> open, closed;
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb = g.adj[v];
      std::sort(nb.begin(), nb.end());
      auto [it, fresh] = open.emplace(std::make_pair(g.color[v], nb), v);
      if (!fresh) { twin[v] = twin[it->second]; continue; }
      nb.insert(std::upper_bound(nb.begin(), nb.end(), v), v);
      auto [jt, fresh2] = closed.emplace(std::make_pair(g.color[v], nb), v);
      if (!fresh2) twin[v] = twin[jt->second];
    }
  }

  std::vector<std::vector<int>> twin_generators() const {
    std::vector<std::vector<int>> out;
    std::vector<int> first(n, -1);
    for (int v = 0; v < n; ++v) {
      int& f = first[twin[v]];
      if (f < 0) { f = v; continue; }
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[f], p[v]);
      out.push_back(std::move(p));
    }
    return out;
  }

  // Equitable refinement; cell ids are ordered so the result is label-free.
  void refine(std::vector<int>& cell) const {
    int cells = *std::max_element(cell.begin(), cell.end()) + 1;
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    while (true) {
      for (int v = 0; v < n; ++v) {
        auto& s = sig[v].first;
        s.clear();
        s.push_back(cell[v]);
        for (int w : g.adj[v]) s.push_back(cell[w]);
        std::sort(s.begin() + 1, s.end());
        sig[v].second = v;
      }
      std::vector<int> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a].first < sig[b].first; });
      std::vector<int> next(n);
      next[idx[0]] = 0;
      for (int i = 1; i < n; ++i)
        next[idx[i]] = next[idx[i - 1]] + (sig[idx[i]].first != sig[idx[i - 1]].first);
      int nc = next[idx[n - 1]] + 1;
      cell = std::move(next);
      if (nc == cells) return;
      cells = nc;
    }
  }

  std::string certificate(const std::vector<int>& order) const {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::string s;
    for (int v : order) {
      s += g.color[v];
      s += '|';
    }
    s += '#';
    for (int v : order) {
      std::vector<int> nb;
      for (int w : g.adj[v]) nb.push_back(pos[w]);
      std::sort(nb.begin(), nb.end());
      for (int w : nb) {
        s += std::to_string(w);
        s += ',';
      }
      s += ';';
    }
    return s;
  }

  void run(std::vector<int> cell) {
    refine(cell);
    std::vector<int> count(n, 0);
    for (int c : cell) ++count[c];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (count[c] > 1) { target = c; break; }
    if (target < 0) {
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[cell[v]] = v;
      std::string cert = certificate(order);
      if (best_orders.empty() || cert < best) {
        best = std::move(cert);
        best_orders.clear();
        best_orders.push_back(std::move(order));
      } else if (cert == best) {
        best_orders.push_back(std::move(order));
      }
      return;
    }
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
      if (cell[v] != target || seen[twin[v]]) continue;
      seen[twin[v]] = 1;
      // v goes first inside its cell; everything after shifts by one
      std::vector<int> next(n);
      for (int w = 0; w < n; ++w) next[w] = cell[w] > target || (cell[w] == target && w != v) ? cell[w] + 1 : cell[w];
      run(std::move(next));
    }
  }
};

}  // namespace

Labeling canonical_labeling(const ColoredGraph& g) {
  Labeling out;
  const int n = static_cast<int>(g.color.size());
  if (n == 0) {
    out.automorphisms.emplace_back();
    return out;
  }
  Search s(g);
  s.run(s.base_rank);
  out.order = s.best_orders.front();
  out.position.assign(n, 0);
  for (int i = 0; i < n; ++i) out.position[out.order[i]] = i;
  out.certificate = s.best;
  for (const auto& o : s.best_orders) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[out.order[i]] = o[i];
    bool trivial = true;
    for (int i = 0; i < n; ++i) trivial = trivial && perm[i] == i;
    if (!trivial || out.automorphisms.empty()) out.automorphisms.push_back(std::move(perm));
  }
  for (auto& p : s.twin_generators()) out.automorphisms.push_back(std::move(p));
  return out;
}

namespace {

std::string genus_tag(const std::optional<int>& g) { return g ? std::to_string(*g) : "-"; }

}  // namespace

CanonicalAggregate canonical_form(const Aggregate& x) {
  // Flags are unlabeled here, so corollas are determined by (genus, degree).
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int v) { return std::make_pair(x[v].genus.value_or(-1), x.degree(v)); };
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
  CanonicalAggregate out;
  out.vertex_witness.assign(x.size(), -1);
  std::vector<Corolla> cs;
  int flag_no = 0;
  for (int v : idx) {
    out.vertex_witness[v] = static_cast<int>(cs.size());
    Corolla c;
    c.genus = x[v].genus;
    for (int f = x.first_flag(v); f < x.end_flag(v); ++f) {
      Label l = "h" + std::to_string(flag_no++);
      out.witness[x.label(f)] = l;
      c.flags.push_back(l);
    }
    out.certificate += genus_tag(c.genus) + ":" + std::to_string(c.flags.size()) + ";";
    cs.push_back(std::move(c));
  }
  out.form = Aggregate(std::move(cs));
  return out;
}

CanonicalMorphism canonical_form(const GraphMorphism& phi) {
  const Aggregate& x = phi.source();
  const Aggregate& y = phi.target();
  ColoredGraph g;
  const int xv = 0, xf = x.size(), yv = xf + x.flag_count(), yf = yv + y.size();
  for (int v = 0; v < x.size(); ++v) g.add_node("S" + genus_tag(x[v].genus));
  for (int f = 0; f < x.flag_count(); ++f) g.add_node("s");
  for (int v = 0; v < y.size(); ++v) g.add_node("T" + genus_tag(y[v].genus));
  for (int f = 0; f < y.flag_count(); ++f) g.add_node("t");
  for (int f = 0; f < x.flag_count(); ++f) g.add_edge(xf + f, xv + x.vertex_of(f));
  for (int f = 0; f < y.flag_count(); ++f) {
    g.add_edge(yf + f, yv + y.vertex_of(f));
    g.add_edge(yf + f, xf + phi.flag_image(f));
  }
  for (int u = 0; u < x.size(); ++u) g.add_edge(xv + u, yv + phi.vertex_image(u));
  for (auto [a, b] : phi.ghost_edges()) g.add_edge(xf + a, xf + b);
  Labeling lab = canonical_labeling(g);

  auto build = [&](const Aggregate& a, int vbase, int fbase, const std::string& prefix,
                   std::map<Label, Label>& wit, std::vector<int>& vw) {
    std::vector<Corolla> cs;
    vw.assign(a.size(), -1);
    int k = 0;
    for (int node : lab.order) {
      if (node < vbase || node >= vbase + a.size()) continue;
      int v = node - vbase;
      vw[v] = static_cast<int>(cs.size());
      Corolla c;
      c.genus = a[v].genus;
      std::vector<int> fl;
      for (int f = a.first_flag(v); f < a.end_flag(v); ++f) fl.push_back(f);
      std::sort(fl.begin(), fl.end(), [&](int p, int q) {
        return lab.position[fbase + p] < lab.position[fbase + q];
      });
      for (int f : fl) {
        Label l = prefix + std::to_string(k++);
        wit[a.label(f)] = l;
        c.flags.push_back(l);
      }
      cs.push_back(std::move(c));
    }
    return Aggregate(std::move(cs));
  };
  std::map<Label, Label> sw, tw;
  std::vector<int> svw, tvw;
  Aggregate cx = build(x, xv, xf, "s", sw, svw);
  Aggregate cy = build(y, yv, yf, "t", tw, tvw);
  std::vector<int> fm(y.flag_count()), vm(x.size()), gh(x.flag_count(), -1);
  for (int f = 0; f < y.flag_count(); ++f)
    fm[cy.index_of(tw[y.label(f)])] = cx.index_of(sw[x.label(phi.flag_image(f))]);
  for (int u = 0; u < x.size(); ++u) vm[svw[u]] = tvw[phi.vertex_image(u)];
  for (auto [a, b] : phi.ghost_edges()) {
    int ca = cx.index_of(sw[x.label(a)]), cb = cx.index_of(sw[x.label(b)]);
    gh[ca] = cb;
    gh[cb] = ca;
  }
  return CanonicalMorphism{GraphMorphism(cx, cy, std::move(fm), std::move(vm), std::move(gh)),
                           lab.certificate, std::move(sw), std::move(tw), std::move(svw), std::move(tvw)};
}

bool isomorphic(const Aggregate& a, const Aggregate& b) {
  return canonical_form(a).certificate == canonical_form(b).certificate;
}

bool isomorphic(const GraphMorphism& a, const GraphMorphism& b) {
  return canonical_form(a).certificate == canonical_form(b).certificate;
}

}  // namespace feyncat
