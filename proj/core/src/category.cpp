#include "feyncat/category.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "feyncat/canonical.hpp"
#include "feyncat/serialize.hpp"

namespace feyncat {

bool FeynmanPresentation::admits_object(const Aggregate& x, const Tuple& dec) const {
  if (cond.genus_marked ? !x.genus_marked() : !x.genus_free()) return false;
  if (!decorated()) return dec.empty();
  if (static_cast<int>(dec.size()) != x.size()) return false;
  for (int v = 0; v < x.size(); ++v)
    if (!decoration->contains(x[v], dec[v])) return false;
  return true;
}

namespace {

std::vector<std::string> flag_values(const Aggregate& x, const Tuple& dec) {
  std::vector<std::string> val(x.flag_count());
  for (int v = 0; v < x.size(); ++v) {
    auto m = DirSetOp::parse(dec[v]);
    for (int f = x.first_flag(v); f < x.end_flag(v); ++f) val[f] = m.at(x.label(f));
  }
  return val;
}

bool has_cycle(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::vector<int>> out(n);
  for (auto [a, b] : arcs) out[a].push_back(b);
  std::vector<int> state(n, 0);
  std::function<bool(int)> dfs = [&](int u) {
    state[u] = 1;
    for (int w : out[u]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && dfs(w)) return true;
    }
    state[u] = 2;
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (state[u] == 0 && dfs(u)) return true;
  return false;
}

}  // namespace

std::string FeynmanPresentation::rejection(const GraphMorphism& phi, const Tuple& source_dec) const {
  const Aggregate& x = phi.source();
  const Aggregate& y = phi.target();
  if (cond.genus_marked) {
    if (!x.genus_marked() || !y.genus_marked()) return "genus marks required";
  } else if (!x.genus_free() || !y.genus_free()) {
    return "genus marks not allowed";
  }
  if (decorated() && !admits_object(x, source_dec)) return "source decoration invalid";
  auto inv = ghost_invariants(phi);
  for (int v = 0; v < y.size(); ++v) {
    if (cond.connected && inv.components[v] != 1) return "fiber over " + y[v].id + " not connected";
    if (cond.max_b1 >= 0 && inv.b1[v] > cond.max_b1) return "fiber over " + y[v].id + " has too many cycles";
  }
  auto edges = phi.ghost_edges();
  std::vector<std::pair<int, int>> arcs;
  if (cond.directed) {
    auto val = flag_values(x, source_dec);
    for (auto [a, b] : edges) {
      if (val[b] != decoration->bar(val[a])) return "edge " + x.label(a) + "~" + x.label(b) + " joins incompatible flags";
      const auto& bp = decoration->spec().basepoint;
      if (cond.rooted && bp && (val[a] == *bp) + (val[b] == *bp) != 1) return "edge without a root flag";
      int tail = val[a] <= val[b] ? a : b, head = tail == a ? b : a;
      arcs.emplace_back(x.vertex_of(tail), x.vertex_of(head));
    }
    Tuple tdec = eval_morphism(*decoration, phi, source_dec);
    if (!admits_object(y, tdec)) return "target decoration invalid";
  } else {
    for (auto [a, b] : edges) {
      int u = x.vertex_of(a), w = x.vertex_of(b);
      arcs.emplace_back(std::min(u, w), std::max(u, w));
    }
  }
  if (cond.no_parallel_edges) {
    std::set<std::pair<int, int>> seen;
    for (auto a : arcs)
      if (!seen.insert(a).second) return "parallel edges";
  }
  if (cond.no_directed_loops && has_cycle(x.size(), arcs)) return "directed loop";
  return {};
}

FeynmanPresentation builtin_category(const std::string& name) {
  FeynmanPresentation f;
  f.name = name;
  auto& c = f.cond;
  auto directed = [&] {
    c.directed = true;
    f.decoration = direction_op();
  };
  if (name == "G") {
  } else if (name == "G_ctd") {
    c.connected = true;
  } else if (name == "C") {
    c.connected = true;
    c.max_b1 = 0;
  } else if (name == "O") {
    c.connected = true;
    c.max_b1 = 0;
    c.directed = c.rooted = true;
    f.decoration = rooted_op();
  } else if (name == "M") {
    c.connected = true;
    c.genus_marked = true;
  } else if (name == "M_nc") {
    c.genus_marked = true;
  } else if (name == "D") {
    directed();
    c.connected = true;
    c.no_directed_loops = c.no_parallel_edges = true;
  } else if (name == "P") {
    directed();
    c.no_directed_loops = true;
  } else if (name == "P_ctd") {
    directed();
    c.connected = true;
    c.no_directed_loops = true;
  } else if (name == "D_wheeled" || name == "P_wheeled") {
    directed();
    c.no_parallel_edges = true;
  } else if (name == "P_wheeled_ctd") {
    directed();
    c.connected = true;
    c.no_parallel_edges = true;
  } else {
    throw Error(ErrorKind::unknown_name, "no built-in category '" + name + "'");
  }
  return f;
}

std::vector<std::string> builtin_category_names() {
  return {"G", "G_ctd", "C", "O", "M", "M_nc", "D", "P", "P_ctd", "D_wheeled", "P_wheeled_ctd", "P_wheeled"};
}

namespace {

// Calls emit for every valid G-morphism X -> Y.
void enumerate_g(const Aggregate& x, const Aggregate& y, const std::function<void(GraphMorphism)>& emit) {
  const int nx = x.size(), ny = y.size();
  if (nx < ny || (ny == 0 && nx > 0)) return;
  if (x.flag_count() < y.flag_count() || (x.flag_count() - y.flag_count()) % 2) return;
  std::vector<int> vm(nx, 0);
  while (true) {
    std::vector<char> hit(ny, 0);
    for (int v : vm) hit[v] = 1;
    bool surjective = std::find(hit.begin(), hit.end(), 0) == hit.end();
    if (surjective) {
      std::vector<int> fm(y.flag_count(), -1);
      std::vector<char> used(x.flag_count(), 0);
      std::function<void(int)> assign = [&](int t) {
        if (t == y.flag_count()) {
          // pair leftovers inside each fiber
          std::vector<int> gh(x.flag_count(), -1);
          std::function<void()> match = [&] {
            int first = -1;
            for (int s = 0; s < x.flag_count(); ++s)
              if (!used[s] && gh[s] < 0) { first = s; break; }
            if (first < 0) {
              try {
                emit(GraphMorphism(x, y, fm, vm, gh));
              } catch (const Error&) {
                // genus rule or marks mismatch
              }
              return;
            }
            for (int s = first + 1; s < x.flag_count(); ++s) {
              if (used[s] || gh[s] >= 0) continue;
              if (vm[x.vertex_of(s)] != vm[x.vertex_of(first)]) continue;
              gh[first] = s;
              gh[s] = first;
              match();
              gh[first] = gh[s] = -1;
            }
          };
          match();
          return;
        }
        int w = y.vertex_of(t);
        for (int s = 0; s < x.flag_count(); ++s) {
          if (used[s] || vm[x.vertex_of(s)] != w) continue;
          used[s] = 1;
          fm[t] = s;
          assign(t + 1);
          used[s] = 0;
        }
      };
      assign(0);
    }
    int i = 0;
    while (i < nx && ++vm[i] == ny) vm[i++] = 0;
    if (i == nx) break;
  }
}

}  // namespace

std::vector<GraphMorphism> hom_enumerate_all(const Aggregate& x, const Aggregate& y) {
  std::vector<GraphMorphism> out;
  if (x.empty() && y.empty()) {
    out.push_back(GraphMorphism::identity(x));
    return out;
  }
  enumerate_g(x, y, [&](GraphMorphism phi) { out.push_back(std::move(phi)); });
  return out;
}

std::vector<GraphMorphism> hom_enumerate(const FeynmanPresentation& f, const Aggregate& x, const Aggregate& y,
                                         const Tuple& dx, const Tuple& dy) {
  if (f.decorated() && (!f.admits_object(x, dx) || !f.admits_object(y, dy)))
    throw Error(ErrorKind::domain, f.name + " needs valid decorations on both objects");
  std::vector<GraphMorphism> out;
  for (auto& phi : hom_enumerate_all(x, y)) {
    if (!f.admits(phi, dx)) continue;
    if (f.decorated() && eval_morphism(*f.decoration, phi, dx) != dy) continue;
    out.push_back(std::move(phi));
  }
  return out;
}

Sampler::Sampler(FeynmanPresentation f, std::uint64_t seed) : f_(std::move(f)), rng_(seed) {}

Label Sampler::fresh() { return "f" + std::to_string(++counter_); }

std::pair<Aggregate, Tuple> Sampler::random_object(int max_corollas, int max_degree) {
  std::vector<Corolla> cs;
  int n = 1 + static_cast<int>(rng_() % max_corollas);
  for (int i = 0; i < n; ++i) {
    Corolla c;
    int lo = f_.cond.rooted ? 1 : (rng_() % 8 == 0 ? 0 : 1);
    int d = lo + static_cast<int>(rng_() % (max_degree - lo + 1));
    for (int k = 0; k < d; ++k) c.flags.push_back(fresh());
    if (f_.cond.genus_marked) c.genus = static_cast<int>(rng_() % 2);
    cs.push_back(std::move(c));
  }
  Aggregate x(std::move(cs));
  Tuple dec;
  if (f_.decorated())
    for (int v = 0; v < x.size(); ++v) dec.push_back(f_.decoration->random_element(x[v], rng_));
  return {x, dec};
}

std::optional<Sample> Sampler::random_from(const Aggregate& x, const Tuple& dec) {
  const int n = x.size();
  const auto& c = f_.cond;
  std::vector<std::string> val;
  if (f_.decorated()) val = flag_values(x, dec);
  auto compatible = [&](int a, int b) {
    if (!c.directed) return true;
    if (val[b] != f_.decoration->bar(val[a])) return false;
    const auto& bp = f_.decoration->spec().basepoint;
    return !(c.rooted && bp) || (val[a] == *bp) + (val[b] == *bp) == 1;
  };
  // random grouping into fibers
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng_);
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < n;) {
    int sz = 1 + static_cast<int>(rng_() % 3);
    std::vector<int> g(order.begin() + i, order.begin() + std::min(n, i + sz));
    groups.push_back(std::move(g));
    i += sz;
  }
  std::vector<int> gh(x.flag_count(), -1);
  std::vector<int> group_of(n);
  std::vector<std::vector<int>> final_groups;
  for (auto& g : groups) {
    // grow a spanning tree with random joins; vertices that cannot be joined
    // become fibers of their own
    std::vector<std::vector<int>> comps;
    for (int u : g) comps.push_back({u});
    auto free_flags = [&](const std::vector<int>& comp) {
      std::vector<int> fl;
      for (int u : comp)
        for (int f = x.first_flag(u); f < x.end_flag(u); ++f)
          if (gh[f] < 0) fl.push_back(f);
      return fl;
    };
    bool need_tree = c.connected || c.rooted;
    for (int attempt = 0; attempt < 8 && comps.size() > 1; ++attempt) {
      std::size_t i = rng_() % comps.size(), j = rng_() % comps.size();
      if (i == j) continue;
      auto fa = free_flags(comps[i]), fb = free_flags(comps[j]);
      std::vector<std::pair<int, int>> opts;
      for (int a : fa)
        for (int b : fb)
          if (compatible(a, b)) opts.emplace_back(a, b);
      if (opts.empty()) continue;
      auto [a, b] = opts[rng_() % opts.size()];
      gh[a] = b;
      gh[b] = a;
      comps[i].insert(comps[i].end(), comps[j].begin(), comps[j].end());
      comps.erase(comps.begin() + static_cast<long>(j));
    }
    if (need_tree) {
      for (auto& comp : comps) final_groups.push_back(comp);
    } else if (rng_() % 2) {
      // disconnected fibers are allowed: keep the group whole
      std::vector<int> all;
      for (auto& comp : comps) all.insert(all.end(), comp.begin(), comp.end());
      final_groups.push_back(all);
    } else {
      for (auto& comp : comps) final_groups.push_back(comp);
    }
  }
  // extra edges create cycles where allowed
  if (c.max_b1 != 0 && !c.rooted) {
    for (auto& g : final_groups) {
      int budget = c.max_b1 < 0 ? 2 : c.max_b1;
      int extra = static_cast<int>(rng_() % (budget + 1));
      for (int e = 0; e < extra; ++e) {
        std::vector<int> fl;
        for (int u : g)
          for (int f = x.first_flag(u); f < x.end_flag(u); ++f)
            if (gh[f] < 0) fl.push_back(f);
        std::vector<std::pair<int, int>> opts;
        for (std::size_t i = 0; i < fl.size(); ++i)
          for (std::size_t j = i + 1; j < fl.size(); ++j)
            if (compatible(fl[i], fl[j])) opts.emplace_back(fl[i], fl[j]);
        if (opts.empty()) break;
        auto [a, b] = opts[rng_() % opts.size()];
        gh[a] = b;
        gh[b] = a;
      }
    }
  }
  std::shuffle(final_groups.begin(), final_groups.end(), rng_);
  std::vector<Corolla> ts;
  std::vector<int> vm(n, -1);
  std::map<Label, Label> fm;
  for (std::size_t k = 0; k < final_groups.size(); ++k) {
    Corolla t;
    int edges2 = 0;
    std::vector<std::pair<int, int>> local;
    std::map<int, int> idx;
    for (int u : final_groups[k]) idx[u] = static_cast<int>(idx.size());
    int gsum = 0;
    for (int u : final_groups[k]) {
      vm[u] = static_cast<int>(k);
      if (x[u].genus) gsum += *x[u].genus;
      for (int f = x.first_flag(u); f < x.end_flag(u); ++f) {
        if (gh[f] < 0) {
          Label l = rng_() % 3 == 0 ? fresh() : x.label(f);
          fm[l] = x.label(f);
          t.flags.push_back(l);
        } else {
          ++edges2;
          if (gh[f] > f) local.emplace_back(idx[u], idx[x.vertex_of(gh[f])]);
        }
      }
    }
    (void)edges2;
    std::shuffle(t.flags.begin(), t.flags.end(), rng_);
    if (c.genus_marked) {
      int g = gsum + static_cast<int>(local.size()) - static_cast<int>(final_groups[k].size()) + 1;
      if (g < 0) return std::nullopt;
      t.genus = g;
    }
    ts.push_back(std::move(t));
  }
  std::vector<std::pair<Label, Label>> edges;
  for (int f = 0; f < x.flag_count(); ++f)
    if (gh[f] > f) edges.emplace_back(x.label(f), x.label(gh[f]));
  Aggregate y(std::move(ts));
  GraphMorphism phi = GraphMorphism::from_labels(x, y, fm, vm, edges);
  if (!f_.admits(phi, dec)) return std::nullopt;
  Sample s{phi, dec, {}};
  if (f_.decorated()) s.target_dec = eval_morphism(*f_.decoration, phi, dec);
  return s;
}

Sample Sampler::random_morphism() {
  while (true) {
    auto [x, dec] = random_object(4, 4);
    if (auto s = random_from(x, dec)) return *s;
  }
}

std::pair<Sample, Sample> Sampler::random_composable() {
  while (true) {
    Sample a = random_morphism();
    for (int k = 0; k < 4; ++k)
      if (auto b = random_from(a.phi.target(), a.target_dec)) return {a, *b};
  }
}

Report check_axioms_sampled(const FeynmanPresentation& f, int samples, std::uint64_t seed) {
  Report r;
  r.name = "axioms(" + f.name + ")";
  Sampler s(f, seed);
  long long decompositions = 0, closures = 0, triples = 0, homs = 0;
  for (int i = 0; i < samples; ++i) {
    // (i) objects are tensor words of corollas, unique up to permutation
    auto [x, dx] = s.random_object();
    if (!f.admits(GraphMorphism::identity(x), dx)) r.fail("identity rejected on " + to_json(x));
    std::vector<int> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), s.rng());
    if (canonical_form(x.sub(perm)).certificate != canonical_form(x).certificate)
      r.fail("corolla permutation changes canonical form of " + to_json(x));

    // (ii) hereditary decomposition, closure under composition and tensor
    auto [a, b] = s.random_composable();
    Decomposition d = decompose(a.phi);
    for (std::size_t v = 0; v < d.factors.size(); ++v) {
      Tuple fd;
      for (int u : a.phi.fiber(static_cast<int>(v)))
        if (!a.source_dec.empty()) fd.push_back(a.source_dec[u]);
      if (!f.admits(d.factors[v], fd)) r.fail("factor rejected: " + to_json(d.factors[v]));
    }
    if (recompose(d, a.phi.source()) != a.phi) r.fail("recomposition differs: " + to_json(a.phi));
    ++decompositions;
    GraphMorphism ba = compose(b.phi, a.phi);
    if (auto why = f.rejection(ba, a.source_dec); !why.empty())
      r.fail("composite rejected (" + why + "): " + to_json(a.phi) + " then " + to_json(b.phi));
    ++closures;
    Sample c = s.random_morphism();
    Tuple td = a.source_dec;
    td.insert(td.end(), c.source_dec.begin(), c.source_dec.end());
    if (auto why = f.rejection(tensor(a.phi, c.phi), td); !why.empty()) r.fail("tensor rejected (" + why + ")");
    if (auto e = s.random_from(b.phi.target(), b.target_dec)) {
      if (compose(e->phi, ba) != compose(compose(e->phi, b.phi), a.phi)) r.fail("associativity: " + to_json(a.phi));
      ++triples;
    }
  }
  // (iii) hom-sets between small objects are finite lists
  for (int i = 0; i < std::min(samples, 20); ++i) {
    auto [x, dx] = s.random_object(2, 3);
    auto m = s.random_from(x, dx);
    if (!m) continue;
    homs += static_cast<long long>(hom_enumerate(f, x, m->phi.target(), dx, m->target_dec).size());
  }
  r.note("decompositions", decompositions);
  r.note("composable_pairs", closures);
  r.note("associativity_triples", triples);
  r.note("enumerated_homs", homs);
  return r;
}

}  // namespace feyncat
