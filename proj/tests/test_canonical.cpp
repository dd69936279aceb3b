#include <doctest.h>

#include <random>

#include "feyncat/canonical.hpp"
#include "feyncat/descriptor.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

// n-cycle appended to g
ColoredGraph cycle(int n, ColoredGraph g = {}) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) v.push_back(g.add_node("x"));
  for (int i = 0; i < n; ++i) g.add_edge(v[i], v[(i + 1) % n]);
  return g;
}

Aggregate shuffled(std::mt19937_64& rng, const Aggregate& x) {
  auto cs = x.corollas();
  std::shuffle(cs.begin(), cs.end(), rng);
  for (auto& c : cs) std::shuffle(c.flags.begin(), c.flags.end(), rng);
  return Aggregate(cs);
}

}  // namespace

TEST_CASE("labeling certificates separate a hexagon from two triangles") {
  auto hex = cycle(6);
  auto two = cycle(3, cycle(3));
  CHECK(canonical_labeling(hex).certificate != canonical_labeling(two).certificate);
  auto hex2 = cycle(6);
  CHECK(canonical_labeling(hex).certificate == canonical_labeling(hex2).certificate);
}

TEST_CASE("automorphism generators are automorphisms") {
  auto g = cycle(3, cycle(3));
  auto lab = canonical_labeling(g);
  REQUIRE(!lab.automorphisms.empty());
  for (const auto& p : lab.automorphisms) {
    for (int a = 0; a < static_cast<int>(g.adj.size()); ++a) {
      CHECK(g.color[p[a]] == g.color[a]);
      for (int b : g.adj[a]) {
        const auto& nb = g.adj[p[a]];
        CHECK(std::find(nb.begin(), nb.end(), p[b]) != nb.end());
      }
    }
  }
  // the group of two triangles has order 72; generators must move something
  CHECK(lab.automorphisms.size() > 1);
}

TEST_CASE("canonical form of an aggregate is idempotent and invariant") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "f", i % 2 == 0);
    auto c = canonical_form(x);
    CHECK(canonical_form(c.form).form == c.form);
    auto y = shuffled(rng, x);
    CHECK(canonical_form(y).certificate == c.certificate);
    CHECK(isomorphic(x, y));
    CHECK(isomorphic(x.relabeled(c.witness), c.form));
  }
}

TEST_CASE("aggregates are compared up to relabeling") {
  CHECK(isomorphic(parse_aggregate("*{a,b}"), parse_aggregate("*{a,c}")));
  CHECK(isomorphic(parse_aggregate("*{b,a} x *{}"), parse_aggregate("*{} x *{p,q}")));
  CHECK_FALSE(isomorphic(parse_aggregate("*{a,b} x *{c}"), parse_aggregate("*{a,b,c}")));
  CHECK_FALSE(isomorphic(parse_aggregate("*{a,b} x *{c}"), parse_aggregate("*{a} x *{b} x *{c}")));
  CHECK_FALSE(isomorphic(parse_aggregate("*{a}g=1"), parse_aggregate("*{a}g=0")));
}

TEST_CASE("a double edge and two loops are told apart") {
  auto y = Aggregate::corolla({"p", "q"});
  // two vertices joined twice against one loop at each vertex
  auto x2 = parse_aggregate("*{a,b,e} x *{c,d,f}");
  auto cyc = GraphMorphism::from_labels(x2, y, {{"p", "e"}, {"q", "f"}}, {0, 0}, {{"a", "c"}, {"b", "d"}});
  auto par = GraphMorphism::from_labels(x2, y, {{"p", "e"}, {"q", "c"}}, {0, 0}, {{"a", "b"}, {"d", "f"}});
  CHECK_FALSE(isomorphic(cyc, par));
  CHECK(canonical_form(cyc).certificate != canonical_form(par).certificate);
}

TEST_CASE("canonical form of a morphism ignores source presentation") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "f");
    auto phi = oracle::random_morphism(rng, x, "t");
    auto ms = oracle::random_relabeling(rng, x.labels(), "s");
    auto mt = oracle::random_relabeling(rng, phi.target().labels(), "u");
    auto moved = relabel_target(relabel_source(phi, ms), mt);
    auto x2 = shuffled(rng, moved.source());
    auto phi2 = compose(moved, GraphMorphism::reorder(x2, moved.source()));
    CHECK(isomorphic(phi, phi2));
    CHECK(canonical_form(phi).certificate == canonical_form(phi2).certificate);
    CHECK(canonical_form(phi).form == canonical_form(phi2).form);
  }
}
