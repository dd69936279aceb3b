#include "feyncat/comma.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "feyncat/canonical.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/orders.hpp"

namespace feyncat {

namespace {

std::string genus_tag(const std::optional<int>& g) { return g ? std::to_string(*g) : "-"; }

ColoredGraph comma_graph(const Aggregate& x, const GraphMorphism& phi) {
  ColoredGraph g;
  const Aggregate& t = phi.target();
  for (int v = 0; v < x.size(); ++v) g.add_node("v" + genus_tag(x[v].genus));
  for (int f = 0; f < x.flag_count(); ++f) {
    int p = phi.preimage(f);
    g.add_node(p >= 0 ? "x" + t.label(p) : "g");
  }
  const int base = x.size();
  for (int f = 0; f < x.flag_count(); ++f) {
    g.add_edge(base + f, x.vertex_of(f));
    int q = phi.partner(f);
    if (q > f) g.add_edge(base + f, base + q);
  }
  return g;
}

struct Canon {
  Aggregate form;
  std::vector<std::pair<Label, Label>> edges;
  std::string certificate;
  std::map<Label, Label> witness;
  std::vector<int> vertex_witness;
};

Canon canonicalize(const Aggregate& x, const GraphMorphism& phi) {
  Labeling lab = canonical_labeling(comma_graph(x, phi));
  Canon c;
  c.certificate = std::move(lab.certificate);
  c.vertex_witness.assign(x.size(), -1);
  std::vector<Corolla> cs;
  int k = 0;
  std::string ghost = "%";
  for (const auto& l : phi.target().labels())
    while (l.compare(0, ghost.size(), ghost) == 0) ghost += '%';
  for (int node : lab.order) {
    if (node >= x.size()) continue;
    c.vertex_witness[node] = static_cast<int>(cs.size());
    Corolla co;
    co.genus = x[node].genus;
    std::vector<int> fl;
    for (int f = x.first_flag(node); f < x.end_flag(node); ++f) fl.push_back(f);
    std::sort(fl.begin(), fl.end(),
              [&](int p, int q) { return lab.position[x.size() + p] < lab.position[x.size() + q]; });
    for (int f : fl) {
      int p = phi.preimage(f);
      Label l = p >= 0 ? phi.target().label(p) : ghost + std::to_string(k++);
      c.witness[x.label(f)] = l;
      co.flags.push_back(l);
    }
    cs.push_back(std::move(co));
  }
  c.form = Aggregate(std::move(cs));
  for (auto [a, b] : phi.ghost_edges()) {
    Label la = c.witness[x.label(a)], lb = c.witness[x.label(b)];
    if (c.form.index_of(lb) < c.form.index_of(la)) std::swap(la, lb);
    c.edges.emplace_back(la, lb);
  }
  std::sort(c.edges.begin(), c.edges.end(), [&](const auto& p, const auto& q) {
    return c.form.index_of(p.first) < c.form.index_of(q.first);
  });
  return c;
}

FeynmanPresentation undirected(FeynmanPresentation f) {
  f.decoration = nullptr;
  f.cond.directed = f.cond.rooted = f.cond.no_directed_loops = false;
  f.cond.no_parallel_edges = false;
  return f;
}

std::string corolla_key(const Corolla& c) { return join(c.flags, ',') + "|" + genus_tag(c.genus); }

}  // namespace

CommaShape CommaShape::of(const FeynmanFunctor& f) {
  CommaShape s;
  s.source = f.source;
  s.target = f.target;
  s.adds_genus = f.adds_genus();
  return s;
}

std::string CommaShape::key() const { return source.name + ">" + target.name + (adds_genus ? "+g" : ""); }

CommaCatalog::CommaCatalog(CommaShape shape, Corolla target, int bound)
    : shape_(std::move(shape)), target_(std::move(target)), bound_(bound) {
  target_.id = "t";
  target_obj_ = Aggregate({target_});
  if (target_.genus.has_value() != shape_.target.cond.genus_marked)
    throw Error(ErrorKind::invalid_object, "target corolla does not match the genus marking of " + shape_.target.name);
  enumerate();
  std::vector<int> order(reps_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (reps_[a].weight != reps_[b].weight) return reps_[a].weight < reps_[b].weight;
    return reps_[a].certificate < reps_[b].certificate;
  });
  std::vector<CommaRep> sorted;
  for (int i : order) sorted.push_back(std::move(reps_[i]));
  reps_ = std::move(sorted);
  index_.clear();
  for (int r = 0; r < static_cast<int>(reps_.size()); ++r) index_[reps_[r].certificate] = r;
  for (int r = 0; r < static_cast<int>(reps_.size()); ++r) build_steps(r);
}

int CommaCatalog::find(const std::string& certificate) const {
  auto it = index_.find(certificate);
  return it == index_.end() ? -1 : it->second;
}

GraphMorphism CommaCatalog::arrow_for(const Aggregate& x, const std::vector<std::pair<Label, Label>>& edges) const {
  std::map<Label, Label> fm;
  for (const auto& l : target_.flags) fm[l] = l;
  return GraphMorphism::from_labels(shape_.adds_genus ? x.with_genus(0) : x, target_obj_, fm,
                                    std::vector<int>(x.size(), 0), edges);
}

void CommaCatalog::insert(const Aggregate& x, const GraphMorphism& phi) {
  Canon c = canonicalize(x, phi);
  if (index_.count(c.certificate)) return;
  index_[c.certificate] = static_cast<int>(reps_.size());
  CommaRep r{c.form, arrow_for(c.form, c.edges), c.form.weight(), c.certificate, {}, {}, {}};
  std::vector<std::string> es;
  for (const auto& [a, b] : c.edges) es.push_back(a + "~" + b);
  r.descriptor = format_aggregate(c.form) + " / " + join(es, ',');
  reps_.push_back(std::move(r));
}

void CommaCatalog::enumerate() {
  const auto& labels = target_.flags;
  const int n = static_cast<int>(labels.size());
  const auto& tc = shape_.target.cond;
  const bool marked = target_.genus.has_value();
  const int gt = target_.genus.value_or(0);
  const bool src_marked = shape_.source.cond.genus_marked;
  const bool check_full = !shape_.target.decorated();

  for (int e = 0; n + 2 * e <= bound_; ++e) {
    for (int nv = 1; nv <= bound_; ++nv) {
      if (tc.connected && nv > e + 1) break;
      const int defect = e - nv + 1;
      if (marked && shape_.adds_genus && defect != gt) continue;
      if (marked && src_marked && defect > gt) continue;
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) pairs.emplace_back(i, j);
      std::vector<int> pick(e, 0);
      std::function<void(int, int)> choose = [&](int k, int from) {
        if (k < e) {
          for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
            pick[k] = p;
            choose(k + 1, p);
          }
          return;
        }
        std::vector<std::pair<int, int>> edges;
        for (int p : pick) edges.push_back(pairs[p]);
        int comps = count_components(nv, edges);
        if (tc.connected && comps != 1) return;
        if (tc.max_b1 >= 0 && betti_one(nv, edges) > tc.max_b1) return;
        std::vector<int> deg(nv, 0);
        for (auto [a, b] : edges) ++deg[a], ++deg[b];
        std::vector<int> assign(n, 0);
        while (true) {
          std::vector<int> load = deg;
          for (int v : assign) ++load[v];
          int weight = n + 2 * e;
          for (int v = 0; v < nv; ++v) weight += load[v] == 0;
          if (weight <= bound_) {
            std::vector<Corolla> cs(nv);
            for (int i = 0; i < n; ++i) cs[assign[i]].flags.push_back(labels[i]);
            std::vector<std::pair<Label, Label>> named;
            for (int k2 = 0; k2 < e; ++k2) {
              Label a = "%e" + std::to_string(k2) + "a", b = "%e" + std::to_string(k2) + "b";
              cs[edges[k2].first].flags.push_back(a);
              cs[edges[k2].second].flags.push_back(b);
              named.emplace_back(a, b);
            }
            for (int v = 0; v < nv; ++v) cs[v].id = "v" + std::to_string(v);
            auto emit = [&](const std::vector<Corolla>& cc) {
              Aggregate x(cc);
              GraphMorphism phi = arrow_for(x, named);
              if (check_full && !shape_.target.admits(phi)) return;
              insert(x, phi);
            };
            if (marked && src_marked) {
              std::vector<int> g(nv, 0);
              std::function<void(int, int)> spread = [&](int v, int left) {
                if (v == nv - 1) {
                  g[v] = left;
                  for (int w = 0; w < nv; ++w) cs[w].genus = g[w];
                  emit(cs);
                  return;
                }
                for (int k3 = 0; k3 <= left; ++k3) {
                  g[v] = k3;
                  spread(v + 1, left - k3);
                }
              };
              spread(0, gt - defect);
            } else {
              emit(cs);
            }
          }
          int i = 0;
          while (i < n && ++assign[i] == nv) assign[i++] = 0;
          if (i == n) break;
        }
      };
      choose(0, 0);
    }
  }
}

CommaCatalog::Located CommaCatalog::locate(const Aggregate& x, const GraphMorphism& phi) const {
  if (x.weight() > bound_) return {-1, GraphMorphism::identity(x)};
  Canon c = canonicalize(x, phi);
  int r = find(c.certificate);
  if (r < 0) return {-1, GraphMorphism::identity(x)};
  std::map<Label, Label> fm;
  for (const auto& [from, to] : c.witness) fm[to] = from;
  return {r, GraphMorphism::from_labels(x, reps_[r].source, fm, c.vertex_witness, {})};
}

void CommaCatalog::build_steps(int r) {
  CommaRep& rep = reps_[r];
  const Aggregate& x = rep.source;
  Labeling lab = canonical_labeling(comma_graph(x, rep.arrow));
  const int nv = x.size();
  for (const auto& p : lab.automorphisms) {
    bool trivial = true;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) trivial = trivial && p[i] == i;
    if (trivial) continue;
    std::vector<int> fm(x.flag_count()), vm(nv);
    for (int u = 0; u < nv; ++u) vm[u] = p[u];
    for (int f = 0; f < x.flag_count(); ++f) fm[p[nv + f] - nv] = f;
    rep.automorphisms.emplace_back(x, x, std::move(fm), std::move(vm), std::vector<int>(x.flag_count(), -1));
  }

  const FeynmanPresentation src = undirected(shape_.source);
  const bool src_marked = src.cond.genus_marked;
  auto edges = rep.arrow.ghost_edges();
  auto quotient = [&](int u, int w, int ea, int eb) {
    // merge u and w (u may equal w), gluing flags ea/eb when given
    std::vector<Corolla> cs;
    std::vector<int> vm(nv);
    Corolla merged;
    merged.id = "m";
    for (int v : {u, w}) {
      for (int f = x.first_flag(v); f < x.end_flag(v); ++f)
        if (f != ea && f != eb) merged.flags.push_back(x.label(f));
      if (u == w) break;
    }
    if (src_marked) {
      int g = u == w ? *x[u].genus + 1 : *x[u].genus + *x[w].genus + (ea >= 0 ? 0 : -1);
      if (g < 0) return;
      merged.genus = g;
    }
    for (int v = 0; v < nv; ++v) {
      if (v == u || v == w) continue;
      vm[v] = static_cast<int>(cs.size());
      cs.push_back(x[v]);
    }
    vm[u] = vm[w] = static_cast<int>(cs.size());
    cs.push_back(std::move(merged));
    Aggregate y(std::move(cs));
    std::map<Label, Label> fm;
    for (const auto& l : y.labels()) fm[l] = l;
    std::vector<std::pair<Label, Label>> glued, rest;
    if (ea >= 0) glued.emplace_back(x.label(ea), x.label(eb));
    for (auto [a, b] : edges)
      if (a != ea) rest.emplace_back(x.label(a), x.label(b));
    GraphMorphism xi = GraphMorphism::from_labels(x, y, fm, vm, glued);
    if (!src.admits(xi)) return;
    GraphMorphism psi = arrow_for(y, rest);
    Located loc = locate(y, psi);
    if (loc.rep < 0) throw Error(ErrorKind::truncation, "quotient of a comma object left the catalog");
    rep.steps.push_back({loc.rep, compose(loc.iso, xi)});
  };
  for (auto [a, b] : edges) quotient(x.vertex_of(a), x.vertex_of(b), a, b);
  if (!src.cond.connected)
    for (int u = 0; u < nv; ++u)
      for (int w = u + 1; w < nv; ++w) quotient(u, w, -1, -1);
}

std::shared_ptr<const CommaCatalog> comma_catalog(const CommaShape& shape, const Corolla& target, int bound) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CommaCatalog>> cache;
  std::string key = shape.key() + "#" + corolla_key(target) + "#" + std::to_string(bound);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto cat = std::make_shared<const CommaCatalog>(shape, target, bound);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, cat).first->second;
}

}  // namespace feyncat
