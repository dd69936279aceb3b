#include <doctest.h>

#include <random>

#include "feyncat/category.hpp"
#include "feyncat/decorate.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/orders.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

Tuple stars(const Aggregate& x) { return Tuple(x.size(), "*"); }

std::vector<Label> words(const Element& e) { return e.empty() ? std::vector<Label>{} : split(e, ','); }

// Glued order of a one-edge grafting of two corollas, computed from the raw
// maps with the splice oracle and renamed to target labels.
std::vector<Label> grafted(const GraphMorphism& phi, const Tuple& orders) {
  const Aggregate& x = phi.source();
  auto edges = phi.ghost_edges();
  REQUIRE(edges.size() == 1);
  auto [a, b] = edges[0];
  if (x.vertex_of(a) != 0) std::swap(a, b);
  auto glued = oracle::splice(words(orders[0]), x.label(a), words(orders[1]), x.label(b));
  for (auto& l : glued) l = phi.target().label(phi.preimage(x.index_of(l)));
  return oracle::rotate_least(glued);
}

}  // namespace

TEST_CASE("decorating by Triv changes no hom set") {
  auto triv = terminal_op();
  for (std::string name : {"G", "C", "M"}) {
    auto f = builtin_category(name);
    auto d = decorate(f, triv);
    std::optional<int> g;
    if (name == "M") g = 0;
    for (const auto& ds : oracle::degree_lists(4, 3))
      for (const auto& dt : oracle::degree_lists(4, 2)) {
        auto x = oracle::numbered(ds, "s", g);
        auto y = oracle::numbered(dt, "t", g);
        auto homs = hom_enumerate(f, x, y);
        auto dh = dec_hom(d, make_object(d, x, stars(x)), make_object(d, y, stars(y)));
        CHECK(dh.size() == homs.size());
      }
  }
}

TEST_CASE("planar graftings follow the splice") {
  auto cyc = builtin_op("CycAss");
  auto c = builtin_category("C");
  auto d = decorate(c, cyc);
  auto x = parse_aggregate("*{1,2,3} x *{4,5,6}");
  auto y = parse_aggregate("*{1,2,4,5}");
  auto homs = hom_enumerate(c, x, y);
  REQUIRE(!homs.empty());
  for (const auto& p : cyc->elements(x[0]))
    for (const auto& q : cyc->elements(x[1])) {
      std::size_t total = 0;
      for (const auto& t : cyc->elements(y[0])) {
        std::size_t expect = 0;
        for (const auto& phi : homs) expect += grafted(phi, {p, q}) == words(t);
        auto got = dec_hom(d, make_object(d, x, {p, q}), make_object(d, y, {t}));
        CHECK(got.size() == expect);
        for (const auto& m : got) CHECK(eval_morphism(*cyc, m.base, {p, q}) == Tuple{t});
        total += got.size();
      }
      // each base morphism lands on exactly one target decoration
      CHECK(total == homs.size());
    }
}

TEST_CASE("a decoration outside the image gives an empty hom set") {
  auto d = decorate(builtin_category("G_ctd"), genus_op(3));
  auto x = make_object(d, parse_aggregate("*{a,b}"), {"0"});
  CHECK(dec_hom(d, x, make_object(d, Aggregate::corolla({}), {"0"})).empty());
  CHECK(dec_hom(d, x, make_object(d, Aggregate::corolla({}), {"1"})).size() == 1);
}

TEST_CASE("objects are validated") {
  auto d = decorate(builtin_category("C"), builtin_op("CycAss"));
  auto x = parse_aggregate("*{a,b,c}");
  CHECK_NOTHROW(make_object(d, x, {"a,b,c"}));
  CHECK_THROWS_AS(make_object(d, x, {"a,b"}), Error);
  CHECK_THROWS_AS(make_object(d, x, {"b,a,c"}), Error);
  CHECK_THROWS_AS(make_object(d, x, {}), Error);
  auto loop = GraphMorphism::from_labels(x, Aggregate::corolla({"c"}), {{"c", "c"}}, {0}, {{"a", "b"}});
  CHECK_THROWS_AS(make_morphism(d, loop, {"a,b,c"}), Error);
}

TEST_CASE("decorated morphisms compose and tensor") {
  auto cyc = builtin_op("CycAss");
  auto c = builtin_category("C");
  auto d = decorate(c, cyc);
  Sampler s(c, 41);
  int composed = 0;
  for (int i = 0; i < 200; ++i) {
    auto [a, b] = s.random_composable();
    Tuple dec;
    for (const auto& k : a.phi.source().corollas()) dec.push_back(cyc->random_element(k, s.rng()));
    auto m1 = make_morphism(d, a.phi, dec);
    auto m2 = make_morphism(d, b.phi, m1.target_dec);
    auto m = dec_compose(m2, m1);
    CHECK(m == make_morphism(d, compose(b.phi, a.phi), dec));
    CHECK(d.rejection(m).empty());
    ++composed;
  }
  CHECK(composed == 200);

  auto x = make_object(d, parse_aggregate("*{a,b,c}"), {"a,c,b"});
  auto y = make_object(d, parse_aggregate("*{p,q}"), {"p,q"});
  auto t = dec_tensor(x, y);
  CHECK(t.decoration == Tuple{"a,c,b", "p,q"});
  CHECK(dec_tensor(x, dec_unit()) == x);
  CHECK(dec_tensor(dec_unit(), x) == x);
  auto n = dec_normalize(dec_tensor(y, x));
  CHECK(n == t);
}

TEST_CASE("pullback along an inclusion") {
  auto f = parse_functor("i:C->M");
  auto g = genus_op(3);
  auto pb = pullback_op(f, g);
  auto x = parse_aggregate("*{a,b,c} x *{d,e}");
  auto phi = GraphMorphism::from_labels(x, parse_aggregate("*{a,b,d}"), {{"a", "a"}, {"b", "b"}, {"d", "d"}},
                                        {0, 0}, {{"c", "e"}});
  CHECK(pb->elements(x[0]) == g->elements(f.map_object(x)[0]));
  CHECK(pb->act(phi, {"1", "2"}) == g->act(f.map_morphism(phi), {"1", "2"}));
  CHECK(pb->act(phi, {"1", "2"}) == "3");
}

TEST_CASE("transport along CycAss to CycDihed") {
  auto sigma = cycass_to_cycdihed();
  auto c = builtin_category("C");
  auto dc = decorate(c, sigma.source);
  auto dd = decorate(c, sigma.target);
  Sampler s(c, 43);
  for (int i = 0; i < 100; ++i) {
    auto a = s.random_morphism();
    Tuple dec;
    for (const auto& k : a.phi.source().corollas()) dec.push_back(sigma.source->random_element(k, s.rng()));
    auto m = make_morphism(dc, a.phi, dec);
    auto t = transport_sigma(sigma, m);
    CHECK(dd.rejection(t).empty());
    CHECK(t.target() == transport_sigma(sigma, m.target()));
    CHECK(t.source_dec == sigma.apply(a.phi.source(), dec));
  }
}
