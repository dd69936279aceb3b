#include <doctest.h>

#include <random>

#include "feyncat/surface.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

std::vector<Letter> letters(const std::vector<oracle::WordLetter>& w) {
  std::vector<Letter> out;
  for (const auto& [name, inv] : w) out.push_back({name, inv});
  return out;
}

RibbonGraph ribbon(const oracle::RawRibbon& r) {
  RibbonGraph g;
  g.orders = r.orders;
  g.edges = r.edges;
  g.signs = r.signs;
  return g;
}

SurfaceType type(bool orientable, int genus, int boundary, int euler) {
  SurfaceType t;
  t.orientable = orientable;
  t.genus = genus;
  t.boundary = boundary;
  t.euler = euler;
  return t;
}

}  // namespace

TEST_CASE("classic words") {
  CHECK(classify_word("a b a^-1 b^-1") == type(true, 1, 0, 0));
  CHECK(classify_word("a a") == type(false, 1, 0, 1));
  CHECK(classify_word("a a b b") == type(false, 2, 0, 0));
  CHECK(classify_word("a a^-1") == type(true, 0, 0, 2));
  CHECK(classify_word("a b a^-1 b") == type(false, 2, 0, 0));
  CHECK(classify_word("a b c d a^-1 b^-1 c^-1 d^-1") == type(true, 2, 0, -2));
  CHECK(classify_word("x") == type(true, 0, 1, 1));
  CHECK(classify_word("x a y a^-1") == type(true, 0, 2, 0));
  CHECK(classify_word("x a y a") == type(false, 1, 1, 0));
}

TEST_CASE("word parsing") {
  auto w = parse_word("a b^-1 a");
  REQUIRE(w.size() == 3);
  CHECK(w[1].name == "b");
  CHECK(w[1].inverse);
  CHECK(format_word(w) == "a b^-1 a");
  CHECK_THROWS_AS(parse_word("a a a"), Error);
  CHECK_THROWS_AS(parse_word(""), Error);
  auto g = word_ribbon(parse_word("a b a b^-1"));
  CHECK(g.orders.size() == 1);
  CHECK(g.edges.size() == 2);
}

TEST_CASE("words up to length 6 agree with the CW count") {
  long long n = 0;
  for (int len = 1; len <= 6; ++len)
    for (const auto& w : oracle::all_words(len)) {
      auto got = classify_word(letters(w));
      auto cw = oracle::cw_classify(w);
      CAPTURE(format_word(letters(w)));
      CHECK(got.orientable == cw.orientable);
      CHECK(got.euler == cw.euler);
      CHECK(got.boundary == cw.boundary);
      CHECK(got.genus == cw.genus);
      ++n;
    }
  CHECK(n > 2000);
}

TEST_CASE("boundary sides partition the sides") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto g = ribbon(oracle::random_ribbon(rng, 4, 4, true));
    std::set<Side> seen;
    for (const auto& circle : boundary_sides(g))
      for (const auto& s : circle) CHECK(seen.insert(s).second);
    CHECK(static_cast<int>(seen.size()) == 2 * g.flag_count());
  }
}

TEST_CASE("orientability against exhaustive flips") {
  std::mt19937_64 rng(5);
  int twisted = 0;
  for (int i = 0; i < 500; ++i) {
    auto r = oracle::random_ribbon(rng, 4, 4, true);
    bool o = oracle::brute_orientable(r);
    CHECK(is_orientable(ribbon(r)) == o);
    twisted += !o;
  }
  CHECK(twisted > 50);
}

TEST_CASE("subdividing an edge keeps the surface") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = ribbon(oracle::random_ribbon(rng, 3, 4, true));
    if (g.edges.empty() || components(g).size() != 1) continue;
    int e = static_cast<int>(rng() % g.edges.size());
    auto h = subdivide(g, e);
    CHECK(classify_surface(h) == classify_surface(g));
    CHECK(surface_key(h, true) == surface_key(g, true));
  }
}

TEST_CASE("gauge normalization") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto g = ribbon(oracle::random_ribbon(rng, 3, 4, true));
    auto n = normalize_gauge(g);
    CHECK(classify_components(n) == classify_components(g));
    if (is_orientable(g) && components(g).size() == 1)
      for (std::size_t e = 0; e < n.edges.size(); ++e) CHECK(n.sign(static_cast<int>(e)) == 0);
  }
}

TEST_CASE("euler characteristic and orientable genus") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto g = ribbon(oracle::random_ribbon(rng, 3, 5, false));
    if (components(g).size() != 1) {
      CHECK_THROWS_AS(classify_surface(g), Error);
      continue;
    }
    auto t = classify_surface(g);
    CHECK(t.orientable);
    CHECK(t.euler == static_cast<int>(g.orders.size()) - static_cast<int>(g.edges.size()));
    CHECK(t.boundary == static_cast<int>(boundary_cycles(g).size()));
    CHECK(2 - 2 * t.genus - t.boundary == t.euler);
  }
}

TEST_CASE("a single vertex with a twisted loop is a Moebius band") {
  RibbonGraph g;
  g.orders = {{"a", "b"}};
  g.edges = {{"a", "b"}};
  g.signs = {1};
  CHECK(classify_surface(g) == type(false, 1, 1, 0));
  g.signs = {0};
  CHECK(classify_surface(g) == type(true, 0, 2, 0));
  RibbonGraph bad;
  bad.orders = {{"a"}};
  bad.edges = {{"a", "z"}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("surface keys separate envelope classes") {
  auto r = envelope_cross_check(Corolla{"", {"1", "2", "3"}, 0});
  CHECK(r.pass);
  auto d = envelope_cross_check(Corolla{"", {"1"}, 1}, -1, builtin_op("CycDihed"));
  CHECK(d.pass);
  bool found = false;
  for (const auto& [k, v] : d.facts)
    if (k == "non_orientable_classes") found = v != "0";
  CHECK(found);
}
