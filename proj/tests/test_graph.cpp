#include <doctest.h>

#include <random>

#include "feyncat/canonical.hpp"
#include "feyncat/category.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/graph.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

GraphMorphism theta() {
  auto x = parse_aggregate("*{a,b,c} x *{d,e,f}");
  return GraphMorphism::from_labels(x, Aggregate::corolla({}), {}, {0, 0}, {{"a", "d"}, {"b", "e"}, {"c", "f"}});
}

}  // namespace

TEST_CASE("hom counts in G match the vertex-map oracle") {
  int checked = 0;
  for (const auto& ds : oracle::degree_lists(5, 3))
    for (const auto& dt : oracle::degree_lists(5, 2)) {
      auto x = oracle::numbered(ds, "s");
      auto y = oracle::numbered(dt, "t");
      CAPTURE(format_aggregate(x));
      CAPTURE(format_aggregate(y));
      CHECK(static_cast<long long>(hom_enumerate_all(x, y).size()) == oracle::hom_count_g(ds, dt));
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("small hom sets") {
  auto two = parse_aggregate("*{1,2}");
  auto four = parse_aggregate("*{1,2,3,4}");
  CHECK(hom_enumerate_all(two, two).size() == 2);
  CHECK(hom_enumerate_all(four, two).size() == 12);
  CHECK(hom_enumerate(builtin_category("C"), four, two).empty());
  CHECK(hom_enumerate(builtin_category("G"), four, two).size() == 12);
}

TEST_CASE("constructor rejects malformed data") {
  auto x = parse_aggregate("*{a,b}");
  auto y = parse_aggregate("*{p,q}");
  CHECK_THROWS_AS(GraphMorphism(x, y, {0, 0}, {0}, {-1, -1}), Error);
  CHECK_THROWS_AS(GraphMorphism(x, y, {0}, {0}, {-1, -1}), Error);
  CHECK_THROWS_AS(GraphMorphism(x, Aggregate::corolla({}), {}, {0}, {1, -1}), Error);
  CHECK_THROWS_AS(Aggregate::corolla({"a", "a"}), Error);
  CHECK_NOTHROW(GraphMorphism(x, Aggregate::corolla({}), {}, {0}, {1, 0}));
}

TEST_CASE("genus marks follow sum plus one minus chi") {
  auto x = parse_aggregate("*{a,b}g=1");
  auto loop = [&](int g) {
    return GraphMorphism::from_labels(x, Aggregate::corolla({}, g), {}, {0}, {{"a", "b"}});
  };
  CHECK_NOTHROW(loop(2));
  CHECK_THROWS_AS(loop(1), Error);
  auto y = parse_aggregate("*{a}g=0 x *{b}g=3");
  CHECK_NOTHROW(GraphMorphism::from_labels(y, Aggregate::corolla({}, 3), {}, {0, 0}, {{"a", "b"}}));
}

TEST_CASE("composition is associative and unital") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto x = oracle::random_aggregate(rng, 3, 4, "x", i % 2 == 0);
    auto phi = oracle::random_morphism(rng, x, "y");
    auto psi = oracle::random_morphism(rng, phi.target(), "z");
    auto chi = oracle::random_morphism(rng, psi.target(), "w");
    CHECK(compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi));
    CHECK(compose(GraphMorphism::identity(phi.target()), phi) == phi);
    CHECK(compose(phi, GraphMorphism::identity(x)) == phi);
  }
}

TEST_CASE("composition checks the middle object") {
  std::mt19937_64 rng(3);
  auto x = parse_aggregate("*{a,b,c}");
  auto phi = oracle::random_morphism(rng, x, "y");
  try {
    compose(phi, phi);
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::composition_mismatch);
  }
}

TEST_CASE("ghost invariants agree with the direct count") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "x");
    auto phi = oracle::random_morphism(rng, x, "y");
    auto inv = ghost_invariants(phi);
    auto b1 = oracle::fiber_b1(phi);
    CHECK(inv.b1 == b1);
    for (int w = 0; w < phi.target().size(); ++w)
      CHECK(inv.euler_defect[w] == 1 + inv.b1[w] - inv.components[w]);
  }
  CHECK(ghost_invariants(theta()).b1 == std::vector<int>{2});
  CHECK(betti_one(2, {{0, 1}, {0, 1}, {0, 1}}) == 2);
  CHECK(betti_one(3, {}) == 0);
  CHECK(count_components(3, {{0, 1}}) == 2);
}

TEST_CASE("euler defect is additive under composition, b1 on connected fibers") {
  std::mt19937_64 rng(13);
  int connected = 0;
  for (int i = 0; i < 500; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "x");
    auto phi = oracle::random_morphism(rng, x, "y");
    auto psi = oracle::random_morphism(rng, phi.target(), "z");
    auto whole = ghost_invariants(compose(psi, phi));
    auto a = ghost_invariants(phi), b = ghost_invariants(psi);
    std::vector<int> defect = b.euler_defect, betti = b.b1;
    for (int v = 0; v < phi.target().size(); ++v) {
      defect[psi.vertex_image(v)] += a.euler_defect[v];
      betti[psi.vertex_image(v)] += a.b1[v];
    }
    CHECK(whole.euler_defect == defect);
    bool all_connected = std::all_of(a.components.begin(), a.components.end(), [](int c) { return c == 1; });
    if (all_connected) {
      ++connected;
      CHECK(whole.b1 == betti);
    }
  }
  CHECK(connected > 50);
}

TEST_CASE("decompose then recompose gives back the morphism") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "x", i % 3 == 0);
    auto phi = oracle::random_morphism(rng, x, "y");
    auto d = decompose(phi);
    REQUIRE(static_cast<int>(d.factors.size()) == phi.target().size());
    for (const auto& f : d.factors) CHECK(f.target().size() == 1);
    auto back = recompose(d, x);
    CHECK(back == phi);
    CHECK(isomorphic(back, phi));
  }
}

TEST_CASE("tensor and composition interchange") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    auto x1 = oracle::random_aggregate(rng, 2, 3, "a");
    auto x2 = oracle::random_aggregate(rng, 2, 3, "b");
    auto p1 = oracle::random_morphism(rng, x1, "c");
    auto p2 = oracle::random_morphism(rng, x2, "d");
    auto q1 = oracle::random_morphism(rng, p1.target(), "e");
    auto q2 = oracle::random_morphism(rng, p2.target(), "f");
    CHECK(compose(tensor(q1, q2), tensor(p1, p2)) == tensor(compose(q1, p1), compose(q2, p2)));
  }
}

TEST_CASE("relabeling commutes with composition") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto x = oracle::random_aggregate(rng, 3, 4, "x");
    auto phi = oracle::random_morphism(rng, x, "y");
    auto psi = oracle::random_morphism(rng, phi.target(), "z");
    auto m = oracle::random_relabeling(rng, phi.target().labels(), "r");
    auto phi2 = relabel_target(phi, m);
    auto psi2 = relabel_source(psi, m);
    CHECK(compose(psi2, phi2) == compose(psi, phi));
  }
}

TEST_CASE("isomorphisms invert") {
  auto a = parse_aggregate("*{1,2} x *{3}");
  auto b = parse_aggregate("*{3} x *{2,1}");
  auto iso = GraphMorphism::reorder(a, b);
  CHECK(iso.is_isomorphism());
  CHECK(compose(inverse(iso), iso) == GraphMorphism::identity(a));
  CHECK(compose(iso, inverse(iso)) == GraphMorphism::identity(b));
}
